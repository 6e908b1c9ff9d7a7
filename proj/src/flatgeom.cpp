#include "ahs/flatgeom.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <thread>

namespace ahs {

namespace {

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix t(a.empty() ? 0 : a[0].size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Solves A x = b by Gauss-Jordan over Q; A square and nonsingular.
std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw FlatError("singular lattice basis");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

Rational det(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;

Vec act(const Mat& p, const Vec& x) {
  Vec y(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += p[i][j] * x[j];
  return y;
}

std::vector<Mat> signed_permutations(std::size_t n) {
  std::vector<Mat> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned signs = 0; signs < (1u << n); ++signs) {
      Mat p(n, Vec(n, 0));
      for (std::size_t i = 0; i < n; ++i) p[i][perm[i]] = (signs >> i & 1u) ? -1 : 1;
      out.push_back(std::move(p));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct Placement {
  Mat p;
  Vec t;
};

// Unit-cube coordinates of the link of a polytope vertex: link vertex = edge at v.
class LinkCoordinates {
 public:
  LinkCoordinates(const FaceLattice& lattice, int v) {
    const int d = lattice.dim();
    std::vector<int> edges;
    for (int e : lattice.cofaces(0, v))
      if (lattice.face(1, e).vertices.size() == 2) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<int> facets;
    for (std::size_t f = 0; f < lattice.faces(d - 1).size(); ++f) {
      const auto& vs = lattice.face(d - 1, static_cast<int>(f)).vertices;
      if (std::binary_search(vs.begin(), vs.end(), v)) facets.push_back(static_cast<int>(f));
    }
    auto contains = [&](int dim, int face, int edge) {
      const auto& fv = lattice.face(dim, face).vertices;
      const auto& ev = lattice.face(1, edge).vertices;
      return std::includes(fv.begin(), fv.end(), ev.begin(), ev.end());
    };
    if (edges.empty()) throw FlatError("vertex link is empty");
    const int base = edges.front();
    std::vector<int> neighbours;
    for (int e : edges) {
      if (e == base) continue;
      for (std::size_t r = 0; r < lattice.faces(2).size(); ++r)
        if (contains(2, static_cast<int>(r), base) && contains(2, static_cast<int>(r), e)) {
          neighbours.push_back(e);
          break;
        }
    }
    const std::size_t n = static_cast<std::size_t>(d - 1);
    if (neighbours.size() != n) throw FlatError("vertex link is not a cube");
    std::vector<int> zero_side(n, -1);
    for (std::size_t j = 0; j < n; ++j)
      for (int f : facets)
        if (contains(d - 1, f, base) && !contains(d - 1, f, neighbours[j])) zero_side[j] = f;
    for (int e : edges) {
      Vec x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = zero_side[j] >= 0 && contains(d - 1, zero_side[j], e) ? 0 : 1;
      coords_[e] = x;
    }
    std::vector<Vec> all;
    for (const auto& [e, x] : coords_) all.push_back(x);
    std::sort(all.begin(), all.end());
    if (all.size() != (std::size_t{1} << n) || std::adjacent_find(all.begin(), all.end()) != all.end())
      throw FlatError("vertex link is not a cube");
  }

  const Vec& of(int edge) const { return coords_.at(edge); }

 private:
  std::map<int, Vec> coords_;
};

}  // namespace

FlatLattice FlatLattice::from_basis(RationalMatrix basis, Rational scale) {
  if (scale <= 0) throw FlatError("scale must be positive");
  for (const auto& row : basis)
    if (row.size() != basis.size()) throw FlatError("lattice basis must be square");
  FlatLattice l;
  l.basis = std::move(basis);
  l.scale = scale;
  if (det(l.basis) == 0) throw FlatError("lattice basis is singular");
  return l;
}

FlatLattice FlatLattice::standard(std::size_t n) {
  RationalMatrix b(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) b[i][i] = 1;
  return from_basis(std::move(b));
}

RationalMatrix FlatLattice::gram() const {
  const RationalMatrix t = transpose(basis);
  const std::size_t n = dim();
  RationalMatrix g(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g[i][j] += t[i][k] * basis[k][j];
  return g;
}

Rational FlatLattice::covolume() const {
  Rational v = abs(det(basis));
  for (std::size_t i = 0; i < dim(); ++i) v *= scale;
  return v;
}

Rational FlatLattice::squared_length(const IntVector& v) const {
  if (v.size() != dim()) throw FlatError("vector dimension does not match the lattice");
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    Rational x = 0;
    for (std::size_t j = 0; j < dim(); ++j) x += basis[i][j] * v[j];
    s += x * x;
  }
  return s * scale * scale;
}

IntVector FlatLattice::from_homology(const IntVector& h) const {
  if (homology_to_lattice.rows() == 0) throw FlatError("lattice has no homology identification");
  return homology_to_lattice * h;
}

FlatLattice FlatLattice::rescaled(const Rational& s) const {
  if (s <= 0) throw FlatError("scale must be positive");
  FlatLattice l = *this;
  l.scale = s;
  return l;
}

std::string FlatLattice::dump() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < dim(); ++j) {
    for (std::size_t i = 0; i < dim(); ++i) os << (i ? " " : "") << basis[i][j].get_str();
    os << '\n';
  }
  return os.str();
}

namespace {

// A face of a cube glued to a face of cube `to`; corners in both cubes' unit coordinates.
struct CubeFace {
  std::size_t to = 0;
  std::vector<std::pair<Vec, Vec>> corners;
};

struct Development {
  std::vector<Placement> placed;
  std::vector<Vec> translations;
};

Development develop(std::size_t n, const std::vector<std::vector<CubeFace>>& faces) {
  const std::vector<Mat> symmetries = signed_permutations(n);
  Mat identity(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) identity[i][i] = 1;
  std::vector<std::optional<Placement>> placed(faces.size());
  Development out;
  placed[0] = Placement{identity, Vec(n, 0)};
  std::queue<std::size_t> todo;
  todo.push(0);
  const Vec ones(n, 1);
  while (!todo.empty()) {
    const std::size_t cube = todo.front();
    todo.pop();
    const Placement here = *placed[cube];
    for (const CubeFace& f : faces[cube]) {
      std::vector<Vec> world;
      for (const auto& [mine, theirs] : f.corners) {
        Vec w = act(here.p, mine);
        for (std::size_t i = 0; i < n; ++i) w[i] += here.t[i];
        world.push_back(std::move(w));
      }
      // The shared face lies in a hyperplane x_axis = level.
      std::size_t axis = n;
      for (std::size_t i = 0; i < n && axis == n; ++i)
        if (std::all_of(world.begin(), world.end(), [&](const Vec& w) { return w[i] == world[0][i]; })) axis = i;
      if (axis == n) throw FlatError("glued face is not a cube face");
      const long level2 = 2 * world[0][axis];
      const long here_centre = act(here.p, ones)[axis] + 2 * here.t[axis];
      std::optional<Placement> found;
      for (const Mat& s : symmetries) {
        Vec t = world[0];
        const Vec moved = act(s, f.corners[0].second);
        for (std::size_t i = 0; i < n; ++i) t[i] -= moved[i];
        bool ok = true;
        for (std::size_t c = 0; c < f.corners.size() && ok; ++c) {
          const Vec w = act(s, f.corners[c].second);
          for (std::size_t i = 0; i < n && ok; ++i) ok = w[i] + t[i] == world[c][i];
        }
        if (!ok) continue;
        const long centre = act(s, ones)[axis] + 2 * t[axis];
        if ((centre - level2) * (here_centre - level2) >= 0) continue;
        found = Placement{s, t};
        break;
      }
      if (!found) throw FlatError("cannot develop a cube across a glued face");
      if (!placed[f.to]) {
        placed[f.to] = *found;
        todo.push(f.to);
        continue;
      }
      if (placed[f.to]->p != found->p) throw FlatError("holonomy has a rotational part: the section is not a torus");
      Vec t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = found->t[i] - placed[f.to]->t[i];
      if (std::any_of(t.begin(), t.end(), [](long x) { return x != 0; })) out.translations.push_back(std::move(t));
    }
  }
  for (auto& p : placed) {
    if (!p) throw FlatError("cubes are not connected through glued faces");
    out.placed.push_back(std::move(*p));
  }
  if (out.translations.empty()) throw FlatError("no translations: the cube complex is not closed");
  return out;
}

RationalMatrix lattice_basis(std::size_t n, const std::vector<Vec>& translations) {
  IntMatrix rows(translations.size(), n);
  for (std::size_t r = 0; r < translations.size(); ++r)
    for (std::size_t i = 0; i < n; ++i) rows(r, i) = translations[r][i];
  const HermiteDecomposition h = hermite(rows);
  if (h.rank != n) throw FlatError("translations do not span a lattice of full rank");
  RationalMatrix basis(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) basis[i][j] = Rational(h.H(j, i));
  return basis;
}

// Lattice coordinates of each H_1 generator, from developed displacements of 1-cells.
IntMatrix homology_map(const HomologyBasis& hb, const std::vector<Vec>& displacement, const RationalMatrix& basis) {
  const std::size_t n = basis.size();
  IntMatrix h2l(n, hb.generator_count());
  for (std::size_t g = 0; g < hb.generator_count(); ++g) {
    std::vector<Rational> t(n, 0);
    for (std::size_t e = 0; e < displacement.size(); ++e)
      for (std::size_t i = 0; i < n; ++i) t[i] += Rational(hb.cycles(e, g) * displacement[e][i]);
    const std::vector<Rational> coords = solve(basis, t);
    for (std::size_t i = 0; i < n; ++i) {
      if (coords[i].get_den() != 1) throw FlatError("homology generator does not develop to a lattice vector");
      h2l(i, g) = coords[i].get_num();
    }
  }
  if (h2l.rows() != h2l.cols() || abs(determinant(h2l)) != 1)
    throw FlatError("developed lattice does not match the homology of the torus");
  return h2l;
}

std::pair<std::map<int, int>, int> move_across(const SidePairingSpec& spec, int global_facet) {
  for (const Pairing& p : spec.pairings) {
    if (p.facet_a == global_facet) return {p.vertex_map, p.facet_b};
    if (p.facet_b == global_facet) {
      std::map<int, int> inv;
      for (const auto& [a, b] : p.vertex_map) inv[b] = a;
      return {inv, p.facet_a};
    }
  }
  throw FlatError("unpaired facet");
}

}  // namespace

FlatLattice develop_lattice(const QuotientComplex& q, const CuspSection& section, const Rational& scale) {
  const CellLattice& cells = *q.lattice;
  const FaceLattice& poly = cells.polytope();
  const int d = cells.dim();
  const std::size_t n = static_cast<std::size_t>(d - 1);
  const int nf = static_cast<int>(poly.faces(d - 1).size());
  const int nv = static_cast<int>(poly.vertex_count());

  std::map<int, LinkCoordinates> links;
  auto link = [&](int v) -> const LinkCoordinates& {
    auto it = links.find(v);
    if (it == links.end()) it = links.emplace(v, LinkCoordinates(poly, v)).first;
    return it->second;
  };

  // Cubes keyed by (copy, ideal vertex).
  std::vector<std::pair<int, int>> cubes;
  for (int o : section.orbit.at(n)) {
    const OrbitMember& m = q.orbits[n][static_cast<std::size_t>(o)].front();
    cubes.emplace_back(m.copy, cells.cell(static_cast<int>(n), m.cell).cusp);
  }
  std::sort(cubes.begin(), cubes.end());
  if (cubes.empty()) throw FlatError("section has no cubes");
  auto cube_index = [&](int copy, int v) {
    const auto it = std::lower_bound(cubes.begin(), cubes.end(), std::make_pair(copy, v));
    if (it == cubes.end() || *it != std::make_pair(copy, v)) throw FlatError("gluing leaves the section");
    return static_cast<std::size_t>(it - cubes.begin());
  };

  std::vector<std::vector<CubeFace>> faces(cubes.size());
  for (std::size_t c = 0; c < cubes.size(); ++c) {
    const auto [copy, v] = cubes[c];
    for (int facet = 0; facet < nf; ++facet) {
      const auto& fv = poly.face(d - 1, facet).vertices;
      if (!std::binary_search(fv.begin(), fv.end(), v)) continue;
      const auto [phi, target] = move_across(q.spec, copy * nf + facet);
      const int copy2 = target / nf;
      const int v2 = phi.at(v + copy * nv) - copy2 * nv;
      CubeFace f;
      f.to = cube_index(copy2, v2);
      for (int e : poly.cofaces(0, v)) {
        const auto& ev = poly.face(1, e).vertices;
        if (!std::includes(fv.begin(), fv.end(), ev.begin(), ev.end())) continue;
        std::vector<int> image;
        for (int w : ev) image.push_back(phi.at(w + copy * nv) - copy2 * nv);
        std::sort(image.begin(), image.end());
        const auto e2 = poly.locate(image);
        if (!e2 || e2->first != 1) throw FlatError("pairing does not carry edges to edges");
        f.corners.emplace_back(link(v).of(e), link(v2).of(e2->second));
      }
      faces[c].push_back(std::move(f));
    }
  }
  const Development dev = develop(n, faces);
  const RationalMatrix basis = lattice_basis(n, dev.translations);
  FlatLattice lattice = FlatLattice::from_basis(basis, scale);

  std::vector<Vec> displacement;
  for (int o : section.orbit.at(1)) {
    const OrbitMember& m = q.orbits[1][static_cast<std::size_t>(o)].front();
    const Cell& edge = cells.cell(1, m.cell);
    const Placement& pl = dev.placed[cube_index(m.copy, edge.cusp)];
    Vec dsp(n, 0);
    for (std::size_t j = 0; j < edge.facets.size(); ++j) {
      const Vec x = act(pl.p, link(edge.cusp).of(cells.cell(0, edge.facets[j]).face_index));
      for (std::size_t i = 0; i < n; ++i) dsp[i] += edge.incidence[j] * x[i];
    }
    displacement.push_back(std::move(dsp));
  }
  lattice.homology_to_lattice = homology_map(homology_basis(*section.complex, 1), displacement, basis);
  return lattice;
}

FlatLattice develop_lattice(const QuotientComplex& q, const Rational& scale) {
  const CellLattice& cells = *q.lattice;
  const std::string& name = q.spec.polytope;
  if (cells.is_truncated() || (name != "square" && name != "cube" && name != "tesseract"))
    throw FlatError("whole-complex development needs glued unit cubes");
  const FaceLattice& poly = cells.polytope();
  const int d = cells.dim();
  const std::size_t n = static_cast<std::size_t>(d);
  const int nf = static_cast<int>(poly.faces(d - 1).size());
  const int nv = static_cast<int>(poly.vertex_count());
  auto bits = [n](int v) {
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (v >> i) & 1;
    return x;
  };
  std::vector<std::vector<CubeFace>> faces(static_cast<std::size_t>(q.copies));
  for (int copy = 0; copy < q.copies; ++copy)
    for (int facet = 0; facet < nf; ++facet) {
      const auto [phi, target] = move_across(q.spec, copy * nf + facet);
      const int copy2 = target / nf;
      CubeFace f;
      f.to = static_cast<std::size_t>(copy2);
      for (int v : poly.face(d - 1, facet).vertices) f.corners.emplace_back(bits(v), bits(phi.at(v + copy * nv) - copy2 * nv));
      faces[static_cast<std::size_t>(copy)].push_back(std::move(f));
    }
  const Development dev = develop(n, faces);
  const RationalMatrix basis = lattice_basis(n, dev.translations);
  FlatLattice lattice = FlatLattice::from_basis(basis, scale);
  std::vector<Vec> displacement;
  for (const auto& members : q.orbits[1]) {
    const OrbitMember& m = members.front();
    const Cell& edge = cells.cell(1, m.cell);
    const Placement& pl = dev.placed[static_cast<std::size_t>(m.copy)];
    Vec dsp(n, 0);
    for (std::size_t j = 0; j < edge.facets.size(); ++j) {
      const Vec x = act(pl.p, bits(cells.cell(0, edge.facets[j]).face_index));
      for (std::size_t i = 0; i < n; ++i) dsp[i] += edge.incidence[j] * x[i];
    }
    displacement.push_back(std::move(dsp));
  }
  lattice.homology_to_lattice = homology_map(homology_basis(*q.complex, 1), displacement, basis);
  return lattice;
}

SlopeLength length_from_squared(const Rational& squared) {
  if (squared < 0) throw FlatError("negative squared length");
  // floor(sqrt(x * 10^60)) / 10^30 bounds sqrt(x) from below within 10^-30.
  Integer ten30;
  mpz_ui_pow_ui(ten30.get_mpz_t(), 10, 30);
  const Integer s = isqrt(floor_of(squared * Rational(ten30 * ten30)));
  SlopeLength out;
  out.squared = squared;
  out.lower = Rational(s, ten30);
  out.upper = Rational(s + 1, ten30);
  out.lower.canonicalize();
  out.upper.canonicalize();
  if (out.lower * out.lower == squared) out.upper = out.lower;
  return out;
}

SlopeLength slope_length(const FlatLattice& l, const IntVector& v) {
  if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; })) throw FlatError("zero vector has no slope length");
  return length_from_squared(l.squared_length(v));
}

std::vector<IntVector> enumerate_short(const FlatLattice& l, const Rational& bound, unsigned threads) {
  const std::size_t n = l.dim();
  if (bound <= 0 || n == 0) return {};
  const Rational reduced = bound / (l.scale * l.scale);
  const RationalMatrix g = l.gram();
  // |v_i| <= sqrt(R (G^-1)_ii); Gershgorin gives another bound when it certifies positivity.
  std::vector<Integer> radius(n);
  Rational gersh = -1;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r = g[i][i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r -= abs(g[i][j]);
    if (i == 0 || r < gersh) gersh = r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, 0);
    e[i] = 1;
    const Rational inv_ii = solve(g, e)[i];
    Integer r = isqrt(floor_of(reduced * inv_ii));
    if (gersh > 0) r = std::min(r, isqrt(floor_of(reduced / gersh)));
    radius[i] = r;
  }

  const long r0 = radius[0].get_si();
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(2 * r0 + 1)));
  std::vector<std::vector<IntVector>> found(workers);
  auto work = [&](unsigned w) {
    IntVector v(n);
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = -radius[i].get_si();
      hi[i] = radius[i].get_si();
    }
    for (long first = lo[0] + static_cast<long>(w); first <= hi[0]; first += static_cast<long>(workers)) {
      std::vector<long> x(lo);
      x[0] = first;
      while (true) {
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) {
          v[i] = x[i];
          zero = zero && x[i] == 0;
        }
        if (!zero && l.squared_length(v) < bound) found[w].push_back(v);
        std::size_t i = n - 1;
        while (i > 0 && x[i] == hi[i]) x[i] = lo[i], --i;
        if (i == 0) break;
        ++x[i];
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<IntVector> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

Rational four_pi_squared_lower() { return Rational(394784176043, 10000000000); }
Rational four_pi_squared_upper() { return Rational(394784176045, 10000000000); }

bool two_pi_ok(const std::vector<SlopeLength>& lengths) {
  if (lengths.empty()) throw FlatError("no lengths given");
  const Rational lo = four_pi_squared_lower(), hi = four_pi_squared_upper();
  bool ok = true;
  for (const SlopeLength& l : lengths) {
    if (l.squared > hi) continue;
    if (l.squared < lo) {
      ok = false;
      continue;
    }
    throw PrecisionError("squared length " + l.squared.get_str() + " lies inside the 4 pi^2 enclosure");
  }
  return ok;
}

namespace {

class Mp {
 public:
  Mp() { mpfr_init2(x_, 256); }
  ~Mp() { mpfr_clear(x_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_ptr get() { return x_; }

 private:
  mpfr_t x_;
};

}  // namespace

bool weakly_balanced(const std::vector<SlopeLength>& lengths, const Rational& c) {
  if (c <= 0) throw FlatError("balance constant must be positive");
  if (lengths.empty()) throw FlatError("no lengths given");
  Rational max_lo = lengths[0].lower, max_hi = lengths[0].upper;
  Rational min_lo = lengths[0].lower, min_hi = lengths[0].upper;
  for (const SlopeLength& l : lengths) {
    max_lo = std::max(max_lo, l.lower);
    max_hi = std::max(max_hi, l.upper);
    min_lo = std::min(min_lo, l.lower);
    min_hi = std::min(min_hi, l.upper);
  }
  // Enclose exp(c * m^3) for m in [min_lo, min_hi].
  auto bound = [&](const Rational& m, mpfr_rnd_t dir, Mp& out) {
    Mp cm;
    mpfr_set_q(cm.get(), c.get_mpq_t(), dir);
    Mp mm;
    mpfr_set_q(mm.get(), m.get_mpq_t(), dir);
    mpfr_pow_ui(mm.get(), mm.get(), 3, dir);
    mpfr_mul(cm.get(), cm.get(), mm.get(), dir);
    mpfr_exp(out.get(), cm.get(), dir);
  };
  Mp rhs_lo, rhs_hi, lhs;
  bound(min_lo, MPFR_RNDD, rhs_lo);
  bound(min_hi, MPFR_RNDU, rhs_hi);
  mpfr_set_q(lhs.get(), max_hi.get_mpq_t(), MPFR_RNDU);
  if (mpfr_lessequal_p(lhs.get(), rhs_lo.get())) return true;
  mpfr_set_q(lhs.get(), max_lo.get_mpq_t(), MPFR_RNDD);
  if (mpfr_greater_p(lhs.get(), rhs_hi.get())) return false;
  throw PrecisionError("weakly balanced comparison is not decided by the length enclosures");
}

}  // namespace ahs

namespace ahs {

std::vector<std::pair<Integer, Integer>> short_slopes(const FlatLattice& l, const AdaptedBasis& basis, unsigned threads) {
  if (l.dim() != 3) throw FlatError("slopes live on 3-dimensional sections");
  const IntMatrix to_adapted = unimodular_inverse(basis.matrix()) * unimodular_inverse(l.homology_to_lattice);
  const Rational lo = four_pi_squared_lower();
  std::vector<std::pair<Integer, Integer>> out;
  for (const IntVector& v : enumerate_short(l, four_pi_squared_upper(), threads)) {
    const IntVector a = to_adapted * v;
    if (a[0] != 1) continue;  // each slope is counted once, with positive k1 coefficient
    if (l.squared_length(v) >= lo)
      throw PrecisionError("slope length too close to 2 pi to decide");
    out.emplace_back(a[1], a[2]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ahs
