#ifndef LIE2KIT_DRIVER_HPP
#define LIE2KIT_DRIVER_HPP

#include "lie2kit/io.hpp"

#include <optional>

namespace lie2kit {

/// Check modes accepted for a kind; the first is the default.
std::vector<std::string> check_modes(const std::string &kind);

/// The mode run_check would use; throws StructuralError for modes foreign to the kind.
std::string resolve_mode(const StructureFile &primary, const StructureFile *second, const std::string &mode);

/// Runs the checker selected by mode ("" = default) on the primary file.
/// second supplies the ambient structure of a dirac file, the Courant
/// algebroid of a connection, or the dirac data of a dorfman2rep/lapair.
CheckReport run_check(const StructureFile &primary, const StructureFile *second, const std::string &mode,
                      std::uint64_t seed);

struct ConstructOptions {
  std::uint64_t seed = kDefaultSeed;
  std::string side = "auto";        // core-courant: auto, core, q
  std::optional<int> dim;           // standard without input
  std::optional<int> rank_a;        // decompose
  std::optional<StructureFile> phi; // change-splitting; absent means zero
  bool pair = false;                // adjoint: emit the tangent double LA pair
};

std::vector<std::string> construct_recipes();

/// Throws PreconditionError when the input fails the recipe's hypotheses and
/// StructuralError on wrong kinds or shapes.
StructureFile run_construct(const std::string &recipe, const std::vector<StructureFile> &inputs,
                            const ConstructOptions &opts);

struct ReportMeta {
  std::string version;
  std::string command;
  std::string mode;
  std::string kind;
  std::string digest;
  std::uint64_t seed = 0;
};

std::string render_text(const CheckReport &rep, const ReportMeta &meta);
std::string render_json(const CheckReport &rep, const ReportMeta &meta);

} // namespace lie2kit

#endif
