#ifndef LIE2KIT_REPORT_HPP
#define LIE2KIT_REPORT_HPP

#include "lie2kit/section.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lie2kit {

struct CheckEntry {
  std::string label;
  std::string anchor;
  bool pass = true;
  std::string witness;
  std::string residual;
  long evaluations = 0;
};

struct CheckReport {
  std::string title;
  std::uint64_t seed = 0;
  std::vector<CheckEntry> entries;

  bool pass() const;
  /// First failing entry, or nullptr.
  const CheckEntry *first_failure() const;
  const CheckEntry *find(const std::string &label) const;
  void append(const CheckReport &other, const std::string &prefix = "");
  void add(CheckEntry e) { entries.push_back(std::move(e)); }
  /// Single pass/fail entry without a tuple evaluation.
  void add_flag(const std::string &label, const std::string &anchor, bool pass,
                const std::string &witness = "", const std::string &residual = "");
};

/// Named test sections for one argument slot: the frame, then random
/// polynomial-coefficient sections.
struct Probes {
  std::vector<std::string> names;
  std::vector<Section> values;
  int frame_count = 0;
};

Probes make_probes(const std::string &stem, int dim, int rank, Rng &rng, int nrandom = 3);
/// Only the given sections (used for restricted subbundles).
Probes make_probes(const std::vector<std::string> &names, const std::vector<Section> &frame,
                   int dim, Rng &rng, int nrandom = 3);

using Identity = std::function<Section(const std::vector<const Section *> &)>;

/// Evaluates the identity residual on every tuple of frame probes and on
/// the aligned tuples of random probes (k-th random of each slot). Passes
/// iff every residual vanishes; the first failure is kept as witness.
CheckEntry check_identity(const std::string &label, const std::string &anchor,
                          const std::vector<const Probes *> &slots, const Identity &residual,
                          const std::vector<std::string> &value_frame,
                          const std::vector<std::string> &coords = {});

/// Scalar residual version.
using ScalarIdentity = std::function<Poly(const std::vector<const Section *> &)>;
CheckEntry check_scalar_identity(const std::string &label, const std::string &anchor,
                                 const std::vector<const Probes *> &slots, const ScalarIdentity &residual,
                                 const std::vector<std::string> &coords = {});

std::vector<std::string> coordinate_names(int dim);

/// Raised by constructions whose input fails a checked precondition.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Throws PreconditionError naming the first failing entry of rep.
void require_pass(const CheckReport &rep, const std::string &what);

} // namespace lie2kit

#endif
