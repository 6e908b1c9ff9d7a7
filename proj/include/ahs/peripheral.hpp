#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ahs/chain.hpp"
#include "ahs/gluing.hpp"

namespace ahs {

class PeripheralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One connected component of the boundary of the truncated quotient.
struct CuspSection {
  int index = 0;
  std::vector<int> vertex_cycle;  // global ideal vertices over this component
  std::size_t cube_count = 0;     // top-dimensional boundary cells
  std::shared_ptr<const ChainComplex> complex;
  std::vector<std::vector<int>> orbit;  // [dim][section cell] -> quotient orbit
  ChainMap inclusion;
};

/// Components ordered by their smallest ideal vertex, which puts the cycles of +-e_i first.
std::vector<CuspSection> cusp_sections(const QuotientComplex& q);

/// Matrix of H_1(section i) -> H_1(quotient) in canonical bases. Throws PeripheralError when the
/// section has torsion in H_1.
IntMatrix peripheral_matrix(const QuotientComplex& q, int i);

struct AdaptedBasis {
  IntVector k1, k2, k3;  // k2, k3 span the kernel

  IntMatrix matrix() const;
};

/// Requires a rank-2 kernel and a primitive image of the completing vector.
AdaptedBasis adapted_basis(const IntMatrix& l);

/// k1 + b k2 + c k3.
IntVector slope(const AdaptedBasis& basis, const Integer& b, const Integer& c);

struct PeripheralSystem {
  std::vector<CuspSection> sections;
  AbelianGroup ambient;
  std::vector<IntMatrix> maps;  // L_i
  std::vector<AdaptedBasis> bases;
  std::vector<IntVector> epsilon;  // L_i k_i1
  bool epsilon_generates = false;

  std::size_t cusp_count() const { return sections.size(); }
};

/// Throws PeripheralError unless every section is a 3-torus with an adapted basis.
PeripheralSystem peripheral_system(const QuotientComplex& q);

std::string peripheral_report(const PeripheralSystem& p);

}  // namespace ahs
