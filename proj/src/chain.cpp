#include "ahs/chain.hpp"

#include <stdexcept>

namespace ahs {

ChainComplex::ChainComplex(std::vector<IntMatrix> boundary,
                           std::vector<std::vector<std::string>> cell_labels)
    : boundary_(std::move(boundary)), labels_(std::move(cell_labels)) {}

std::size_t ChainComplex::cell_count(int k) const {
  if (k < 0 || k > top_dim()) return 0;
  return boundary_[static_cast<std::size_t>(k)].cols();
}

ValidationReport validate(const ChainComplex& c) {
  for (int k = 0; k <= c.top_dim(); ++k) {
    const IntMatrix& d = c.boundary(k);
    const std::size_t expected_rows = k == 0 ? 0 : c.cell_count(k - 1);
    if (d.rows() != expected_rows)
      return {false, k, -1, "boundary(" + std::to_string(k) + ") has " + std::to_string(d.rows()) +
                                " rows, expected " + std::to_string(expected_rows)};
  }
  for (int k = 2; k <= c.top_dim(); ++k) {
    const IntMatrix dd = c.boundary(k - 1) * c.boundary(k);
    for (std::size_t j = 0; j < dd.cols(); ++j)
      for (std::size_t i = 0; i < dd.rows(); ++i)
        if (sgn(dd(i, j)) != 0)
          return {false, k, static_cast<int>(j),
                  "boundary of boundary of " + std::to_string(k) + "-cell " + std::to_string(j) +
                      " is nonzero"};
  }
  return {};
}

IntVector HomologyBasis::coordinates(const IntVector& cycle) const {
  IntVector x = coordinate_map * cycle;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(orders[i]) != 0) mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), orders[i].get_mpz_t());
  return x;
}

HomologyBasis homology_basis(const ChainComplex& c, int k) {
  if (k < 0 || k > c.top_dim()) throw std::out_of_range("homology: dimension out of range");
  const std::size_t n = c.cell_count(k);
  HomologyBasis hb;
  const IntMatrix kernel = kernel_basis(c.boundary(k));
  const std::size_t z = kernel.cols();
  if (z == 0) {
    hb.cycles = IntMatrix(n, 0);
    hb.coordinate_map = IntMatrix(0, n);
    return hb;
  }
  const IntMatrix p = left_inverse(kernel);
  const IntMatrix next = k < c.top_dim() ? c.boundary(k + 1) : IntMatrix(n, 0);
  const SNFDecomposition s = snf(p * next);
  const std::size_t r = s.rank();
  const IntMatrix u_inv = unimodular_inverse(s.U);
  const IntMatrix coords = s.U * p;

  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < r; ++i)
    if (s.D(i, i) != 1) {
      chosen.push_back(i);
      hb.orders.push_back(s.D(i, i));
      hb.group.torsion.push_back(s.D(i, i));
    }
  for (std::size_t i = r; i < z; ++i) {
    chosen.push_back(i);
    hb.orders.emplace_back(0);
  }
  hb.group.free_rank = z - r;

  IntMatrix gens(z, chosen.size());
  hb.coordinate_map = IntMatrix(chosen.size(), n);
  for (std::size_t g = 0; g < chosen.size(); ++g) {
    for (std::size_t i = 0; i < z; ++i) gens(i, g) = u_inv(i, chosen[g]);
    for (std::size_t j = 0; j < n; ++j) hb.coordinate_map(g, j) = coords(chosen[g], j);
  }
  hb.cycles = kernel * gens;
  return hb;
}

AbelianGroup homology(const ChainComplex& c, int k) { return homology_basis(c, k).group; }

long euler_characteristic(const ChainComplex& c) {
  long chi = 0;
  for (int k = 0; k <= c.top_dim(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(c.cell_count(k));
  return chi;
}

bool ChainMap::commutes() const {
  if (!source || !target) return false;
  const int top = source->top_dim();
  if (static_cast<int>(components.size()) != top + 1) return false;
  for (int k = 0; k <= top; ++k) {
    const IntMatrix& f = components[static_cast<std::size_t>(k)];
    if (f.rows() != target->cell_count(k) || f.cols() != source->cell_count(k)) return false;
    if (k == 0 || k - 1 > target->top_dim()) continue;
    if (!(target->boundary(k) * f == components[static_cast<std::size_t>(k - 1)] * source->boundary(k)))
      return false;
  }
  return true;
}

ChainMap compose(const ChainMap& outer, const ChainMap& inner) {
  if (outer.components.size() != inner.components.size())
    throw std::invalid_argument("compose: chain maps are not composable");
  ChainMap out{inner.source, outer.target, {}};
  const std::size_t dims = std::min(outer.components.size(), inner.components.size());
  for (std::size_t k = 0; k < dims; ++k) out.components.push_back(outer.components[k] * inner.components[k]);
  return out;
}

InducedMap induced_map(const ChainMap& f, int k) {
  if (!f.source || !f.target) throw std::invalid_argument("induced_map: chain map without complexes");
  InducedMap out{homology_basis(*f.source, k), homology_basis(*f.target, k), {}, {}, {}};
  const IntMatrix& fk = f.components.at(static_cast<std::size_t>(k));
  const std::size_t src_gens = out.source.generator_count();
  const std::size_t tgt_gens = out.target.generator_count();
  out.full = IntMatrix(tgt_gens, src_gens);
  for (std::size_t j = 0; j < src_gens; ++j) {
    const IntVector image = fk * out.source.cycles.column(j);
    const IntVector coords = out.target.coordinates(image);
    for (std::size_t i = 0; i < tgt_gens; ++i) out.full(i, j) = coords[i];
  }
  const std::size_t st = out.source.torsion_count();
  const std::size_t tt = out.target.torsion_count();
  out.free_block = IntMatrix(tgt_gens - tt, src_gens - st);
  for (std::size_t i = tt; i < tgt_gens; ++i)
    for (std::size_t j = st; j < src_gens; ++j) out.free_block(i - tt, j - st) = out.full(i, j);
  out.torsion_block = out.full.row_block(0, tt);
  return out;
}

}  // namespace ahs
