#ifndef LIE2KIT_CORPUS_HPP
#define LIE2KIT_CORPUS_HPP

#include "lie2kit/io.hpp"

namespace lie2kit {

/// Metric TM-connection nabla_{d/dx_m} = K_m G^{-1} (K_m antisymmetric) for a
/// Courant algebroid with invertible pairing G.
LinearConnection metric_connection(const DegenerateCourant &C, const std::vector<PolyMatrix> &K);

std::vector<std::string> example_names();
/// Throws std::out_of_range for unknown names.
StructureFile example(const std::string &name);

/// Counterexample: the check mode that rejects it, the entry label that
/// fails first, and the witness printed for that entry.
struct BrokenExample {
  std::string name;
  std::string mode;
  std::string label;
  std::string witness;
  StructureFile file;
};

std::vector<BrokenExample> broken_examples();

} // namespace lie2kit

#endif
