#include "ahs/filling.hpp"

namespace ahs {

FillingSlopes adapted_slopes(const PeripheralSystem& p, const std::vector<Integer>& bc) {
  if (bc.size() != 2 * p.cusp_count())
    throw FillingError("expected " + std::to_string(2 * p.cusp_count()) + " slope coefficients, got " + std::to_string(bc.size()));
  FillingSlopes s;
  for (std::size_t i = 0; i < p.cusp_count(); ++i) s.slopes.push_back(slope(p.bases[i], bc[2 * i], bc[2 * i + 1]));
  return s;
}

AbelianGroup h1_filled(const PeripheralSystem& p, const FillingSlopes& s) {
  if (!s.slopes.empty() && s.slopes.size() != p.cusp_count())
    throw FillingError("expected one slope per cusp (" + std::to_string(p.cusp_count()) + "), got " + std::to_string(s.slopes.size()));
  const std::size_t torsion = p.ambient.torsion.size();
  const std::size_t rows = torsion + p.ambient.free_rank;
  std::vector<IntVector> relations;
  // Torsion generators come first in the canonical basis.
  for (std::size_t t = 0; t < torsion; ++t) {
    IntVector r(rows, 0);
    r[t] = p.ambient.torsion[t];
    relations.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < s.slopes.size(); ++i) {
    if (s.slopes[i].empty()) continue;
    if (!is_primitive(s.slopes[i])) throw FillingError("slope for cusp " + std::to_string(i + 1) + " is not primitive");
    relations.push_back(p.maps[i] * s.slopes[i]);
  }
  if (relations.empty()) return p.ambient;
  return cokernel(IntMatrix::from_columns(relations, rows));
}

FillingResult is_homology_sphere(const PeripheralSystem& p, const FillingSlopes& s, long euler_of_complement, bool orientable) {
  if (!orientable) throw FillingError("homology sphere test needs an orientable complement; the duality argument does not apply");
  FillingResult r;
  r.h1 = h1_filled(p, s);
  // Each attached D^2 x T^2 has Euler characteristic 0 and meets the complement in a 3-torus.
  r.euler = euler_of_complement;
  r.notes.push_back("H1 = " + r.h1.to_string());
  r.notes.push_back("chi = chi(complement) = " + std::to_string(r.euler));
  if (!r.h1.is_trivial()) {
    r.notes.push_back("H1 nontrivial");
    return r;
  }
  r.notes.push_back("H3 = 0 by Poincare duality from H1 = 0");
  if (r.euler != 2) {
    r.notes.push_back("chi != 2 so H2 != 0");
    return r;
  }
  r.notes.push_back("H2 = 0 since chi = 2");
  r.homology_sphere = true;
  return r;
}

std::array<AbelianGroup, 3> alexander_complement_homology(int k) {
  if (k < 0) throw FillingError("negative component count");
  if (k == 0) return {};
  return {AbelianGroup::free(static_cast<std::size_t>(k)), AbelianGroup::free(2 * static_cast<std::size_t>(k)),
          AbelianGroup::free(static_cast<std::size_t>(k) - 1)};
}

}  // namespace ahs
