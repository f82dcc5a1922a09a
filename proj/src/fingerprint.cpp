#include "gammalat/cohomology.hpp"
#include "gammalat/lattices.hpp"

namespace gammalat {

namespace {

FingerprintEntry entry(const Subgroup& h, const LatticePtr& m) {
  return {fixed_sublattice(m, h).cols(), h1(h, m).structure(), tate_minus1(h, m)};
}

}  // namespace

CohFingerprint fingerprint(const LatticePtr& m) {
  const auto& classes = m->group()->subgroup_classes();
  CohFingerprint fp;
  fp.entries.resize(classes.size());
  const long count = static_cast<long>(classes.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) fp.entries[static_cast<std::size_t>(i)] = entry(classes[static_cast<std::size_t>(i)], m);
  return fp;
}

CohFingerprint fingerprint_serial(const LatticePtr& m) {
  CohFingerprint fp;
  for (const auto& h : m->group()->subgroup_classes()) fp.entries.push_back(entry(h, m));
  return fp;
}

}  // namespace gammalat
