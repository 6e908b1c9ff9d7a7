#pragma once

#include <random>
#include <string>

#include "ahs/gluing.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(AHS_DATA_DIR) + "/" + name; }

inline ahs::SidePairingSpec m1011() { return ahs::read_pairing_file(data_path("m1011.pairing")); }

/// Opposite facets of the unit n-cube glued by translation; `flip` reflects coordinate
/// `flip_axis` on the pairing across axis `glue_axis` (a Klein-bottle style twist).
inline ahs::SidePairingSpec cube_torus(int n, int glue_axis = -1, int flip_axis = -1) {
  const ahs::FaceLattice cube = ahs::build_hypercube(n);
  ahs::SidePairingSpec spec;
  spec.polytope = n == 2 ? "square" : n == 3 ? "cube" : "tesseract";
  for (int axis = 0; axis < n; ++axis) {
    std::vector<int> low, high;
    ahs::Pairing p;
    for (int v = 0; v < (1 << n); ++v) {
      if (v >> axis & 1) continue;
      low.push_back(v);
      int w = v | (1 << axis);
      if (axis == glue_axis) w ^= 1 << flip_axis;
      p.vertex_map[v] = w;
      high.push_back(w);
    }
    std::sort(high.begin(), high.end());
    p.facet_a = cube.locate(low)->second;
    p.facet_b = cube.locate(high)->second;
    spec.pairings.push_back(p);
  }
  return spec;
}

inline ahs::IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  ahs::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

/// Product of random elementary operations: unimodular by construction.
inline ahs::IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
  ahs::IntMatrix u = ahs::IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    u.add_row_multiple(i, j, coef(rng));
  }
  return u;
}

}  // namespace testing
