#include "ahs/polytope.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ahs {

namespace {

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

FaceLattice FaceLattice::from_facets(std::vector<std::vector<Rational>> coordinates,
                                     std::vector<std::vector<int>> facet_vertex_sets) {
  FaceLattice out;
  out.coordinates_ = std::move(coordinates);
  const int nv = static_cast<int>(out.coordinates_.size());

  for (auto& f : facet_vertex_sets) std::sort(f.begin(), f.end());
  std::set<std::vector<int>> all(facet_vertex_sets.begin(), facet_vertex_sets.end());
  std::vector<std::vector<int>> work(all.begin(), all.end());
  while (!work.empty()) {
    const std::vector<int> s = std::move(work.back());
    work.pop_back();
    for (const auto& f : facet_vertex_sets) {
      std::vector<int> x = intersect(s, f);
      if (!x.empty() && all.insert(x).second) work.push_back(std::move(x));
    }
  }
  std::vector<int> everything(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) everything[static_cast<std::size_t>(v)] = v;
  all.insert(everything);
  for (int v = 0; v < nv; ++v)
    if (!all.contains({v})) throw std::invalid_argument("from_facets: vertex " + std::to_string(v) + " is not a face");

  std::vector<std::vector<int>> sets(all.begin(), all.end());
  std::stable_sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<int> dims(sets.size(), 0);
  int top = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() == 1) continue;
    int d = -1;
    for (std::size_t j = 0; j < i; ++j)
      if (sets[j].size() < sets[i].size() && is_subset(sets[j], sets[i])) d = std::max(d, dims[j]);
    dims[i] = d + 1;
    top = std::max(top, dims[i]);
  }

  out.faces_.assign(static_cast<std::size_t>(top) + 1, {});
  for (std::size_t i = 0; i < sets.size(); ++i)
    out.faces_[static_cast<std::size_t>(dims[i])].push_back(Face{sets[i], {}});
  for (int k = 0; k <= top; ++k) {
    auto& fs = out.faces_[static_cast<std::size_t>(k)];
    std::sort(fs.begin(), fs.end(), [](const Face& a, const Face& b) { return a.vertices < b.vertices; });
    for (std::size_t i = 0; i < fs.size(); ++i) out.index_[fs[i].vertices] = {k, static_cast<int>(i)};
  }
  for (int k = 1; k <= top; ++k)
    for (auto& f : out.faces_[static_cast<std::size_t>(k)]) {
      const auto& lower = out.faces_[static_cast<std::size_t>(k - 1)];
      for (std::size_t j = 0; j < lower.size(); ++j)
        if (is_subset(lower[j].vertices, f.vertices)) f.facets.push_back(static_cast<int>(j));
    }
  return out;
}

std::vector<std::size_t> FaceLattice::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& fs : faces_) f.push_back(fs.size());
  return f;
}

std::optional<std::pair<int, int>> FaceLattice::locate(std::vector<int> vertices) const {
  std::sort(vertices.begin(), vertices.end());
  const auto it = index_.find(vertices);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> FaceLattice::cofaces(int k, int index) const {
  std::vector<int> out;
  if (k + 1 > dim()) return out;
  const auto& upper = faces(k + 1);
  for (std::size_t j = 0; j < upper.size(); ++j)
    if (std::find(upper[j].facets.begin(), upper[j].facets.end(), index) != upper[j].facets.end())
      out.push_back(static_cast<int>(j));
  return out;
}

bool FaceLattice::maps_faces(const std::vector<int>& within, const std::map<int, int>& vertex_map) const {
  for (const auto& fs : faces_)
    for (const auto& f : fs) {
      if (!is_subset(f.vertices, within)) continue;
      std::vector<int> image;
      for (int v : f.vertices) {
        const auto it = vertex_map.find(v);
        if (it == vertex_map.end()) return false;
        image.push_back(it->second);
      }
      const auto hit = locate(image);
      if (!hit || hit->first != static_cast<int>(&fs - faces_.data())) return false;
    }
  return true;
}

std::string FaceLattice::dump() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < faces_.size(); ++k)
    for (std::size_t i = 0; i < faces_[k].size(); ++i) {
      os << k << ' ' << i << " :";
      for (int v : faces_[k][i].vertices) os << ' ' << v;
      os << '\n';
    }
  return os.str();
}

FaceLattice build_24cell() {
  std::vector<std::vector<Rational>> coords;
  for (int i = 0; i < 4; ++i)
    for (int s : {1, -1}) {
      std::vector<Rational> v(4, Rational(0));
      v[static_cast<std::size_t>(i)] = s;
      coords.push_back(std::move(v));
    }
  for (int m = 0; m < 16; ++m) {
    std::vector<Rational> v;
    for (int i = 0; i < 4; ++i) v.emplace_back((m >> i & 1) ? -1 : 1, 2);
    coords.push_back(std::move(v));
  }
  std::vector<std::vector<int>> facets;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int a : {1, -1})
        for (int b : {1, -1}) {
          std::vector<int> f;
          for (std::size_t v = 0; v < coords.size(); ++v)
            if (a * coords[v][static_cast<std::size_t>(i)] + b * coords[v][static_cast<std::size_t>(j)] == 1)
              f.push_back(static_cast<int>(v));
          facets.push_back(std::move(f));
        }
  return FaceLattice::from_facets(std::move(coords), std::move(facets));
}

FaceLattice build_hypercube(int n) {
  if (n < 1) throw std::invalid_argument("build_hypercube: dimension must be positive");
  const int nv = 1 << n;
  std::vector<std::vector<Rational>> coords;
  for (int v = 0; v < nv; ++v) {
    std::vector<Rational> c;
    for (int i = 0; i < n; ++i) c.emplace_back(v >> i & 1);
    coords.push_back(std::move(c));
  }
  std::vector<std::vector<int>> facets;
  for (int i = 0; i < n; ++i)
    for (int side = 0; side < 2; ++side) {
      std::vector<int> f;
      for (int v = 0; v < nv; ++v)
        if ((v >> i & 1) == side) f.push_back(v);
      facets.push_back(std::move(f));
    }
  return FaceLattice::from_facets(std::move(coords), std::move(facets));
}

CellLattice CellLattice::compact(FaceLattice lattice) {
  CellLattice out;
  out.lattice_ = std::move(lattice);
  const FaceLattice& L = out.lattice_;
  out.cells_.resize(static_cast<std::size_t>(L.dim()) + 1);
  for (int k = 0; k <= L.dim(); ++k)
    for (std::size_t i = 0; i < L.faces(k).size(); ++i) {
      Cell c;
      c.dim = k;
      c.face_dim = k;
      c.face_index = static_cast<int>(i);
      c.facets = L.faces(k)[i].facets;
      c.vertices = L.faces(k)[i].vertices;
      c.origin = CellOrigin::face;
      out.index_[{k, static_cast<int>(i), -1}] = static_cast<int>(i);
      out.cells_[static_cast<std::size_t>(k)].push_back(std::move(c));
    }
  out.assign_incidences();
  return out;
}

CellLattice CellLattice::truncated(FaceLattice lattice) {
  CellLattice out;
  out.lattice_ = std::move(lattice);
  out.truncated_ = true;
  const FaceLattice& L = out.lattice_;
  const int d = L.dim();
  out.cells_.resize(static_cast<std::size_t>(d) + 1);

  // Keys are (face_dim, face_index, cusp); per cell dimension they are listed in sorted order.
  for (int k = 0; k <= d; ++k) {
    std::vector<std::tuple<int, int, int>> keys;
    if (k >= 1)
      for (int i = 0; i < static_cast<int>(L.faces(k).size()); ++i) keys.emplace_back(k, i, -1);
    if (k + 1 <= d)
      for (int i = 0; i < static_cast<int>(L.faces(k + 1).size()); ++i)
        for (int v : L.face(k + 1, i).vertices) keys.emplace_back(k + 1, i, v);
    std::sort(keys.begin(), keys.end());
    for (const auto& [fd, fi, cusp] : keys) {
      Cell c;
      c.dim = k;
      c.face_dim = fd;
      c.face_index = fi;
      c.cusp = cusp;
      c.origin = cusp < 0 ? CellOrigin::truncated_face : CellOrigin::vertex_link;
      out.index_[{fd, fi, cusp}] = static_cast<int>(out.cells_[static_cast<std::size_t>(k)].size());
      out.cells_[static_cast<std::size_t>(k)].push_back(std::move(c));
    }
  }
  for (int k = 1; k <= d; ++k)
    for (Cell& c : out.cells_[static_cast<std::size_t>(k)]) {
      const Face& f = L.face(c.face_dim, c.face_index);
      if (c.cusp < 0) {
        if (c.face_dim >= 2)
          for (int g : f.facets) c.facets.push_back(out.find(c.face_dim - 1, g, -1));
        for (int v : f.vertices) c.facets.push_back(out.find(c.face_dim, c.face_index, v));
      } else {
        for (int g : f.facets) {
          const auto& gv = L.face(c.face_dim - 1, g).vertices;
          if (std::binary_search(gv.begin(), gv.end(), c.cusp)) c.facets.push_back(out.find(c.face_dim - 1, g, c.cusp));
        }
      }
      std::sort(c.facets.begin(), c.facets.end());
    }
  for (int k = 0; k <= d; ++k)
    for (std::size_t i = 0; i < out.cells_[static_cast<std::size_t>(k)].size(); ++i) {
      Cell& c = out.cells_[static_cast<std::size_t>(k)][i];
      if (k == 0) {
        c.vertices = {static_cast<int>(i)};
        continue;
      }
      std::set<int> vs;
      for (int g : c.facets) {
        const auto& gv = out.cells_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(g)].vertices;
        vs.insert(gv.begin(), gv.end());
      }
      c.vertices.assign(vs.begin(), vs.end());
    }
  out.assign_incidences();
  return out;
}

void CellLattice::assign_incidences() {
  for (int k = 1; k <= dim(); ++k)
    for (Cell& c : cells_[static_cast<std::size_t>(k)]) {
      c.incidence.assign(c.facets.size(), 0);
      if (k == 1) {
        if (c.facets.size() != 2) throw std::logic_error("CellLattice: edge without two endpoints");
        c.incidence = {-1, 1};
        continue;
      }
      // Every (k-2)-cell of the boundary lies in exactly two facets; signs must cancel there.
      std::map<int, std::vector<std::size_t>> ridges;
      for (std::size_t a = 0; a < c.facets.size(); ++a) {
        const Cell& f = cells_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c.facets[a])];
        for (int r : f.facets) ridges[r].push_back(a);
      }
      for (const auto& [r, owners] : ridges)
        if (owners.size() != 2) throw std::logic_error("CellLattice: boundary of a cell is not a pseudomanifold");
      auto sign_in = [&](std::size_t a, int r) {
        const Cell& f = cells_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c.facets[a])];
        const auto it = std::find(f.facets.begin(), f.facets.end(), r);
        return f.incidence[static_cast<std::size_t>(it - f.facets.begin())];
      };
      c.incidence[0] = 1;
      std::vector<std::size_t> stack{0};
      while (!stack.empty()) {
        const std::size_t a = stack.back();
        stack.pop_back();
        const Cell& f = cells_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c.facets[a])];
        for (int r : f.facets) {
          const auto& owners = ridges[r];
          const std::size_t b = owners[0] == a ? owners[1] : owners[0];
          const int want = -c.incidence[a] * sign_in(a, r) * sign_in(b, r);
          if (c.incidence[b] == 0) {
            c.incidence[b] = want;
            stack.push_back(b);
          } else if (c.incidence[b] != want) {
            throw std::logic_error("CellLattice: cell boundary is not orientable");
          }
        }
      }
      if (std::find(c.incidence.begin(), c.incidence.end(), 0) != c.incidence.end())
        throw std::logic_error("CellLattice: cell boundary is disconnected");
    }
}

std::vector<std::size_t> CellLattice::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& cs : cells_) f.push_back(cs.size());
  return f;
}

int CellLattice::find(int face_dim, int face_index, int cusp) const {
  const auto it = index_.find({face_dim, face_index, cusp});
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> CellLattice::facets_of(CellOrigin origin) const {
  std::vector<int> out;
  const auto& fs = cells(dim() - 1);
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (fs[i].origin == origin) out.push_back(static_cast<int>(i));
  return out;
}

std::string CellLattice::dump() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < cells_.size(); ++k)
    for (std::size_t i = 0; i < cells_[k].size(); ++i) {
      const Cell& c = cells_[k][i];
      os << k << ' ' << i << " : face " << c.face_dim << '/' << c.face_index;
      if (c.cusp >= 0) os << " link " << c.cusp;
      os << " :";
      for (int v : c.vertices) os << ' ' << v;
      os << '\n';
    }
  return os.str();
}

}  // namespace ahs
