#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ahs/linalg.hpp"

namespace ahs {

/// Finite chain complex of free abelian groups. boundary(k) maps k-chains to (k-1)-chains;
/// boundary(0) is the 0 x n0 zero map.
class ChainComplex {
 public:
  ChainComplex() = default;
  explicit ChainComplex(std::vector<IntMatrix> boundary,
                        std::vector<std::vector<std::string>> cell_labels = {});

  /// -1 for the empty complex.
  int top_dim() const { return static_cast<int>(boundary_.size()) - 1; }
  /// Zero outside [0, top_dim].
  std::size_t cell_count(int k) const;
  const IntMatrix& boundary(int k) const { return boundary_.at(static_cast<std::size_t>(k)); }
  const std::vector<std::vector<std::string>>& cell_labels() const { return labels_; }

 private:
  std::vector<IntMatrix> boundary_;
  std::vector<std::vector<std::string>> labels_;
};

struct ValidationReport {
  bool ok = true;
  int dim = -1;   // dimension k at which boundary(k-1) * boundary(k) != 0 or shapes disagree
  int cell = -1;  // offending k-cell, or -1 for a shape mismatch
  std::string message;
};

ValidationReport validate(const ChainComplex& c);

/// Generators of H_k with the canonical (SNF-derived) basis: torsion generators in
/// divisibility order first, then free generators.
struct HomologyBasis {
  AbelianGroup group;
  IntMatrix cycles;            // n_k x g, representative cycles as columns
  IntMatrix coordinate_map;    // g x n_k, sends a k-cycle to its coordinates
  std::vector<Integer> orders; // per generator: invariant factor, or 0 when free

  std::size_t generator_count() const { return orders.size(); }
  std::size_t torsion_count() const { return group.torsion.size(); }
  /// Coordinates of a cycle; torsion coordinates reduced into [0, order).
  IntVector coordinates(const IntVector& cycle) const;
};

AbelianGroup homology(const ChainComplex& c, int k);
HomologyBasis homology_basis(const ChainComplex& c, int k);
long euler_characteristic(const ChainComplex& c);

/// Per-dimension matrices from cells of source to chains of target.
struct ChainMap {
  std::shared_ptr<const ChainComplex> source;
  std::shared_ptr<const ChainComplex> target;
  std::vector<IntMatrix> components;

  bool commutes() const;
};

ChainMap compose(const ChainMap& outer, const ChainMap& inner);

/// Matrix of H_k(f) in the canonical bases. Rows follow target generators, columns source
/// generators; free_block is the free-to-free part and torsion_block the rows of target
/// torsion generators (reduced mod their orders).
struct InducedMap {
  HomologyBasis source;
  HomologyBasis target;
  IntMatrix full;
  IntMatrix free_block;
  IntMatrix torsion_block;
};

InducedMap induced_map(const ChainMap& f, int k);
inline InducedMap induced_h1(const ChainMap& f) { return induced_map(f, 1); }

}  // namespace ahs
