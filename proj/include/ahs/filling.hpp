#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "ahs/peripheral.hpp"

namespace ahs {

class FillingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One slope per cusp in section homology coordinates. An empty vector leaves that cusp open;
/// an empty list fills nothing.
struct FillingSlopes {
  std::vector<IntVector> slopes;
};

/// Slopes k_i1 + b_i k_i2 + c_i k_i3 from (b_1, c_1, ..., b_n, c_n).
FillingSlopes adapted_slopes(const PeripheralSystem& p, const std::vector<Integer>& bc);

struct FillingResult {
  AbelianGroup h1;
  long euler = 0;
  bool homology_sphere = false;
  std::vector<std::string> notes;
};

/// H_1 of the quotient modulo the images of the slopes. Throws FillingError for non-primitive slopes.
AbelianGroup h1_filled(const PeripheralSystem& p, const FillingSlopes& s);

/// Requires an orientable complement.
FillingResult is_homology_sphere(const PeripheralSystem& p, const FillingSlopes& s, long euler_of_complement, bool orientable);

/// Homology (H_1, H_2, H_3) of the complement of k disjoint unknotted-type 2-tori in S^4.
std::array<AbelianGroup, 3> alexander_complement_homology(int k);

}  // namespace ahs
