#include "ahs/peripheral.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ahs {

namespace {



IntMatrix map_with(const HomologyBasis& ambient, const CuspSection& s) {
  const HomologyBasis local = homology_basis(*s.complex, 1);
  if (local.torsion_count() > 0)
    throw PeripheralError("cusp " + std::to_string(s.index + 1) + ": section H_1 = " + local.group.to_string() +
                          " has torsion, adapted bases are not defined");
  IntMatrix out(ambient.generator_count(), local.generator_count());
  const IntMatrix& f = s.inclusion.components.at(1);
  for (std::size_t j = 0; j < local.generator_count(); ++j) {
    const IntVector coords = ambient.coordinates(f * local.cycles.column(j));
    for (std::size_t i = 0; i < coords.size(); ++i) out(i, j) = coords[i];
  }
  return out;
}

}  // namespace

std::vector<CuspSection> cusp_sections(const QuotientComplex& q) {
  const ChainComplex& c = *q.complex;
  const int top = c.top_dim();
  if (top < 1) return {};
  // Union-find over all boundary orbits of every dimension.
  std::vector<std::size_t> offset(static_cast<std::size_t>(top) + 1, 0);
  for (int k = 1; k <= top; ++k) offset[static_cast<std::size_t>(k)] = offset[static_cast<std::size_t>(k - 1)] + q.cell_count(k - 1);
  std::vector<std::size_t> parent(offset.back() + q.cell_count(top));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Adjacency comes from cell facets, since boundary coefficients can cancel in the quotient.
  for (int k = 1; k < top; ++k) {
    const std::size_t n_lower = q.lattice->cells(k - 1).size();
    for (std::size_t o = 0; o < q.cell_count(k); ++o) {
      if (!q.on_boundary[static_cast<std::size_t>(k)][o]) continue;
      const OrbitMember& m = q.orbits[static_cast<std::size_t>(k)][o].front();
      for (int g : q.lattice->cell(k, m.cell).facets) {
        const int r = q.cell_orbit[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m.copy) * n_lower + static_cast<std::size_t>(g)].first;
        const std::size_t a = find(offset[static_cast<std::size_t>(k)] + o);
        const std::size_t b = find(offset[static_cast<std::size_t>(k - 1)] + static_cast<std::size_t>(r));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  std::map<std::size_t, std::vector<std::vector<int>>> groups;
  for (int k = 0; k < top; ++k)
    for (std::size_t o = 0; o < q.cell_count(k); ++o) {
      if (!q.on_boundary[static_cast<std::size_t>(k)][o]) continue;
      auto& g = groups[find(offset[static_cast<std::size_t>(k)] + o)];
      g.resize(static_cast<std::size_t>(top));
      g[static_cast<std::size_t>(k)].push_back(static_cast<int>(o));
    }

  const int nv = static_cast<int>(q.lattice->polytope().vertex_count());
  std::vector<CuspSection> out;
  std::set<int> seen_vertices;
  for (auto& [root, cells] : groups) {
    CuspSection s;
    s.orbit = std::move(cells);
    std::set<int> vs;
    for (int k = 0; k < top; ++k)
      for (int o : s.orbit[static_cast<std::size_t>(k)])
        for (const OrbitMember& m : q.orbits[static_cast<std::size_t>(k)][static_cast<std::size_t>(o)])
          vs.insert(q.lattice->cell(k, m.cell).cusp + m.copy * nv);
    for (int v : vs)
      if (!seen_vertices.insert(v).second)
        throw PeripheralError("internal: vertex cycle " + std::to_string(v) + " spans several boundary components");
    s.vertex_cycle.assign(vs.begin(), vs.end());
    s.cube_count = s.orbit[static_cast<std::size_t>(top - 1)].size();

    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const CuspSection& a, const CuspSection& b) { return a.vertex_cycle < b.vertex_cycle; });

  for (std::size_t i = 0; i < out.size(); ++i) {
    CuspSection& s = out[i];
    s.index = static_cast<int>(i);
    std::vector<IntMatrix> boundary;
    std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(top));
    std::vector<IntMatrix> incl;
    for (int k = 0; k < top; ++k) {
      const auto& cells = s.orbit[static_cast<std::size_t>(k)];
      IntMatrix f(q.cell_count(k), cells.size());
      for (std::size_t j = 0; j < cells.size(); ++j) {
        f(static_cast<std::size_t>(cells[j]), j) = 1;
        labels[static_cast<std::size_t>(k)].push_back(c.cell_labels().at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(cells[j])));
      }
      incl.push_back(std::move(f));
      if (k == 0) {
        boundary.emplace_back(0, cells.size());
        continue;
      }
      const auto& lower = s.orbit[static_cast<std::size_t>(k - 1)];
      IntMatrix d(lower.size(), cells.size());
      for (std::size_t r = 0; r < lower.size(); ++r)
        for (std::size_t j = 0; j < cells.size(); ++j)
          d(r, j) = c.boundary(k)(static_cast<std::size_t>(lower[r]), static_cast<std::size_t>(cells[j]));
      boundary.push_back(std::move(d));
    }
    s.complex = std::make_shared<const ChainComplex>(std::move(boundary), std::move(labels));
    s.inclusion = ChainMap{s.complex, q.complex, std::move(incl)};
    if (homology(*s.complex, 0) != AbelianGroup::free(1))
      throw PeripheralError("internal: boundary component " + std::to_string(i) + " is disconnected");
  }
  return out;
}

IntMatrix peripheral_matrix(const QuotientComplex& q, int i) {
  const auto sections = cusp_sections(q);
  if (i < 0 || i >= static_cast<int>(sections.size()))
    throw PeripheralError("cusp index " + std::to_string(i + 1) + " out of range");
  return map_with(homology_basis(*q.complex, 1), sections[static_cast<std::size_t>(i)]);
}

IntMatrix AdaptedBasis::matrix() const {
  const IntVector cols[3] = {k1, k2, k3};
  return IntMatrix::from_columns(cols, k1.size());
}

AdaptedBasis adapted_basis(const IntMatrix& l) {
  if (l.cols() != 3) throw PeripheralError("adapted basis: expected a map out of Z^3");
  const IntMatrix k = kernel_basis(l);
  if (k.cols() != 2)
    throw PeripheralError("adapted basis: kernel has rank " + std::to_string(k.cols()) + ", expected 2");
  // The kernel is saturated, so SNF(K) = [I; 0] and U^-1 completes it.
  const SNFDecomposition s = snf(k);
  const IntMatrix completion = unimodular_inverse(s.U);
  AdaptedBasis basis{completion.column(2), k.column(0), k.column(1)};
  IntVector image = l * basis.k1;
  const auto lead = std::find_if(image.begin(), image.end(), [](const Integer& x) { return x != 0; });
  if (lead != image.end() && *lead < 0)
    for (Integer& x : basis.k1) x = -x;
  image = l * basis.k1;
  if (!is_primitive(image)) throw PeripheralError("adapted basis: image of the completing class is not primitive");
  return basis;
}

IntVector slope(const AdaptedBasis& basis, const Integer& b, const Integer& c) {
  IntVector v = basis.k1;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b * basis.k2[i] + c * basis.k3[i];
  return v;
}

PeripheralSystem peripheral_system(const QuotientComplex& q) {
  PeripheralSystem p;
  p.sections = cusp_sections(q);
  const HomologyBasis ambient = homology_basis(*q.complex, 1);
  p.ambient = ambient.group;
  for (const CuspSection& s : p.sections) {
    IntMatrix l = map_with(ambient, s);
    if (l.cols() != 3)
      throw PeripheralError("cusp " + std::to_string(s.index + 1) + ": section H_1 has rank " + std::to_string(l.cols()) + ", expected 3");
    AdaptedBasis b = adapted_basis(l);
    p.epsilon.push_back(l * b.k1);
    p.maps.push_back(std::move(l));
    p.bases.push_back(std::move(b));
  }
  p.epsilon_generates = ambient.torsion_count() == 0 && generates(p.epsilon, ambient.generator_count());
  return p;
}

std::string peripheral_report(const PeripheralSystem& p) {
  auto vec = [](const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
  };
  std::ostringstream os;
  os << "H1 " << p.ambient.to_string() << '\n';
  for (std::size_t i = 0; i < p.cusp_count(); ++i) {
    const CuspSection& s = p.sections[i];
    os << "cusp " << i + 1 << " cubes " << s.cube_count << " vertices";
    for (int v : s.vertex_cycle) os << ' ' << v;
    os << '\n';
    const IntMatrix& l = p.maps[i];
    for (std::size_t r = 0; r < l.rows(); ++r) {
      os << "  L";
      for (std::size_t c = 0; c < l.cols(); ++c) os << ' ' << l(r, c).get_str();
      os << '\n';
    }
    os << "  k1 " << vec(p.bases[i].k1) << " k2 " << vec(p.bases[i].k2) << " k3 " << vec(p.bases[i].k3) << '\n';
    os << "  eps " << vec(p.epsilon[i]) << '\n';
  }
  os << "eps generate " << (p.epsilon_generates ? "yes" : "no") << '\n';
  return os.str();
}

}  // namespace ahs
