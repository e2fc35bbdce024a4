#ifndef LIE2KIT_IO_HPP
#define LIE2KIT_IO_HPP

#include "lie2kit/courant.hpp"

#include <filesystem>
#include <string>
#include <variant>

namespace lie2kit {

/// Constant subbundles for Dirac checks, optionally carrying the ambient
/// structure (a dorfman2rep or an lapair).
struct DiracDoc {
  DiracData data;
  std::variant<std::monostate, Dorfman2Rep, LAPair> structure;
  bool operator==(const DiracDoc &o) const { return data == o.data && structure == o.structure; }
};

struct MorphismDoc {
  SplitLie2 source;
  SplitLie2 target;
  Lie2Morphism mu;
  bool operator==(const MorphismDoc &o) const {
    return source == o.source && target == o.target && mu.mu_q == o.mu.mu_q &&
           mu.mu_b == o.mu.mu_b && mu.mu12 == o.mu.mu12;
  }
};

/// phi in Gamma(Q^* ^ Q^* (x) B^*) for change-splitting.
struct SplittingDoc {
  PolyTensor phi;
  bool operator==(const SplittingDoc &o) const { return phi == o.phi; }
};

using Structure = std::variant<LieAlgebroid, LinearConnection, TwoRep, Dorfman2Rep, SplitLie2,
                               SelfDual2Rep, MatchedPair2Reps, LAPair, DegenerateCourant, DiracDoc,
                               MorphismDoc, SplittingDoc>;

struct StructureFile {
  std::string name;
  Structure value;
};

constexpr int kFormatVersion = 1;

/// "kind" tag of a structure.
std::string kind_of(const Structure &s);

/// Parses a StructureFile. String blocks ("by reference") are resolved
/// relative to base. Schema violations raise StructuralError.
StructureFile parse_structure(const std::string &text, const std::filesystem::path &base = {});
StructureFile load_structure(const std::filesystem::path &path);

/// Canonical serialization: fixed key order, two-space indent, trailing newline.
std::string dump_structure(const StructureFile &f);

/// Re-indents JSON text, keeping containers on one line when they fit in 100 columns.
std::string format_json(const std::string &text);

/// FNV-1a 64 of the bytes, as 16 hex digits.
std::string digest_hex(const std::string &bytes);

} // namespace lie2kit

#endif
