#include "ahs/gluing.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace ahs {

std::string SidePairingSpec::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return {};
}

FaceLattice polytope_by_name(const std::string& name) {
  if (name == "24cell") return build_24cell();
  if (name == "square") return build_hypercube(2);
  if (name == "cube") return build_hypercube(3);
  if (name == "tesseract") return build_hypercube(4);
  throw ParseError(0, "unknown polytope '" + name + "'");
}

bool polytope_is_ideal(const std::string& name) { return name == "24cell"; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return value;
}

// Vertices of a global facet, as global vertex indices.
std::vector<int> facet_vertices(const FaceLattice& lattice, int global_facet) {
  const int nf = static_cast<int>(lattice.faces(lattice.dim() - 1).size());
  const int nv = static_cast<int>(lattice.vertex_count());
  const int copy = global_facet / nf;
  std::vector<int> vs = lattice.face(lattice.dim() - 1, global_facet % nf).vertices;
  for (int& v : vs) v += copy * nv;
  return vs;
}

std::map<int, int> inverse(const std::map<int, int>& m) {
  std::map<int, int> inv;
  for (const auto& [a, b] : m) inv[b] = a;
  return inv;
}

}  // namespace

SidePairingSpec parse_pairing(const std::string& text) {
  SidePairingSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::vector<int> record_lines;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    const auto semi = s.find(';');
    const auto colon = s.find(':');
    if (semi == std::string::npos && colon != std::string::npos) {
      const std::string key = trim(s.substr(0, colon));
      const std::string value = trim(s.substr(colon + 1));
      if (key.empty()) throw ParseError(line, "empty metadata key");
      if (key == "polytope") {
        spec.polytope = value;
      } else if (key == "copies") {
        spec.copies = parse_int(value, line);
        if (spec.copies < 1) throw ParseError(line, "copies must be positive");
      } else {
        spec.metadata.emplace_back(key, value);
      }
      continue;
    }
    if (semi == std::string::npos) throw ParseError(line, "expected 'facet_a facet_b ; v->w ...'");
    Pairing p;
    std::istringstream head(s.substr(0, semi));
    std::string a, b, extra;
    if (!(head >> a >> b) || (head >> extra)) throw ParseError(line, "expected two facet indices before ';'");
    p.facet_a = parse_int(a, line);
    p.facet_b = parse_int(b, line);
    std::istringstream body(s.substr(semi + 1));
    std::string tok;
    while (body >> tok) {
      const auto arrow = tok.find("->");
      if (arrow == std::string::npos) throw ParseError(line, "expected 'v->w', got '" + tok + "'");
      const int v = parse_int(tok.substr(0, arrow), line);
      const int w = parse_int(tok.substr(arrow + 2), line);
      if (!p.vertex_map.emplace(v, w).second) throw ParseError(line, "vertex " + std::to_string(v) + " mapped twice");
    }
    spec.pairings.push_back(std::move(p));
    record_lines.push_back(line);
  }

  const FaceLattice lattice = polytope_by_name(spec.polytope);
  try {
    validate_pairing(spec, lattice);
  } catch (const ParseError& e) {
    // Re-anchor pairing-level errors at their source line.
    const std::string msg = e.what();
    const auto at = msg.find("pairing #");
    if (at != std::string::npos) {
      const std::size_t idx = std::stoul(msg.substr(at + 9));
      if (idx < record_lines.size()) throw ParseError(record_lines[idx], msg);
    }
    throw;
  }
  return spec;
}

SidePairingSpec read_pairing_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open pairing file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pairing(ss.str());
}

void validate_pairing(const SidePairingSpec& spec, const FaceLattice& lattice) {
  const int nf = static_cast<int>(lattice.faces(lattice.dim() - 1).size());
  const int nv = static_cast<int>(lattice.vertex_count());
  const int total_facets = nf * spec.copies;
  std::vector<int> used(static_cast<std::size_t>(total_facets), -1);
  for (std::size_t i = 0; i < spec.pairings.size(); ++i) {
    const Pairing& p = spec.pairings[i];
    const std::string where = "pairing #" + std::to_string(i) + ": ";
    for (int f : {p.facet_a, p.facet_b})
      if (f < 0 || f >= total_facets) throw ParseError(0, where + "facet " + std::to_string(f) + " out of range");
    for (int f : {p.facet_a, p.facet_b}) {
      if (used[static_cast<std::size_t>(f)] >= 0 && !(p.is_self_pairing() && used[static_cast<std::size_t>(f)] == static_cast<int>(i)))
        throw ParseError(0, where + "facet " + std::to_string(f) + " is already paired");
      used[static_cast<std::size_t>(f)] = static_cast<int>(i);
    }
    const std::vector<int> va = facet_vertices(lattice, p.facet_a);
    const std::vector<int> vb = facet_vertices(lattice, p.facet_b);
    std::vector<int> dom, img;
    for (const auto& [v, w] : p.vertex_map) {
      dom.push_back(v);
      img.push_back(w);
    }
    std::sort(img.begin(), img.end());
    if (dom != va) throw ParseError(0, where + "bijection domain is not the vertex set of facet " + std::to_string(p.facet_a));
    if (img != vb || std::adjacent_find(img.begin(), img.end()) != img.end())
      throw ParseError(0, where + "bijection image is not the vertex set of facet " + std::to_string(p.facet_b));
    const int ca = p.facet_a / nf;
    const int cb = p.facet_b / nf;
    std::map<int, int> local;
    for (const auto& [v, w] : p.vertex_map) local[v - ca * nv] = w - cb * nv;
    std::vector<int> local_a = va;
    for (int& v : local_a) v -= ca * nv;
    if (!lattice.maps_faces(local_a, local))
      throw ParseError(0, where + "bijection does not extend to a combinatorial isomorphism of facets");
    if (p.is_self_pairing())
      for (const auto& [v, w] : p.vertex_map)
        if (p.vertex_map.at(w) != v) throw ParseError(0, where + "self-pairing map is not an involution");
  }
  for (int f = 0; f < total_facets; ++f)
    if (used[static_cast<std::size_t>(f)] < 0) throw ParseError(0, "facet " + std::to_string(f) + " is not paired");
}

std::string write_pairing(const SidePairingSpec& spec) {
  std::vector<Pairing> ps;
  for (const Pairing& p : spec.pairings) {
    if (p.facet_a <= p.facet_b) {
      ps.push_back(p);
    } else {
      ps.push_back(Pairing{p.facet_b, p.facet_a, inverse(p.vertex_map)});
    }
  }
  std::sort(ps.begin(), ps.end(), [](const Pairing& x, const Pairing& y) {
    return std::tie(x.facet_a, x.facet_b) < std::tie(y.facet_a, y.facet_b);
  });
  std::ostringstream os;
  os << "polytope: " << spec.polytope << '\n' << "copies: " << spec.copies << '\n';
  for (const auto& [k, v] : spec.metadata) os << k << ": " << v << '\n';
  for (const Pairing& p : ps) {
    os << p.facet_a << ' ' << p.facet_b << " ;";
    for (const auto& [v, w] : p.vertex_map) os << ' ' << v << "->" << w;
    os << '\n';
  }
  return os.str();
}

std::vector<std::vector<int>> vertex_cycles(const SidePairingSpec& spec) {
  const FaceLattice lattice = polytope_by_name(spec.polytope);
  const int n = static_cast<int>(lattice.vertex_count()) * spec.copies;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const Pairing& p : spec.pairings)
    for (const auto& [v, w] : p.vertex_map) {
      const int a = find(v), b = find(w);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<int, std::vector<int>> classes;
  for (int v = 0; v < n; ++v) classes[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : classes) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Pairing maps acting on the cells of the (possibly truncated) polytope copies.
class Gluer {
 public:
  explicit Gluer(const SidePairingSpec& spec)
      : spec_(spec),
        lattice_(std::make_shared<CellLattice>(polytope_is_ideal(spec.polytope)
                                                   ? CellLattice::truncated(polytope_by_name(spec.polytope))
                                                   : CellLattice::compact(polytope_by_name(spec.polytope)))) {
    const FaceLattice& L = lattice_->polytope();
    validate_pairing(spec, L);
    d_ = lattice_->dim();
    nf_ = static_cast<int>(L.faces(d_ - 1).size());
    nv_ = static_cast<int>(L.vertex_count());
    facet_pairing_.assign(static_cast<std::size_t>(nf_ * spec.copies), {-1, 0});
    for (std::size_t i = 0; i < spec.pairings.size(); ++i) {
      const Pairing& p = spec.pairings[i];
      facet_pairing_[static_cast<std::size_t>(p.facet_a)] = {static_cast<int>(i), 0};
      if (!p.is_self_pairing()) facet_pairing_[static_cast<std::size_t>(p.facet_b)] = {static_cast<int>(i), 1};
      inverses_.push_back(inverse(p.vertex_map));
    }
    // Local facets containing each cell.
    containing_.resize(static_cast<std::size_t>(d_) + 1);
    for (int k = 0; k <= d_; ++k) {
      containing_[static_cast<std::size_t>(k)].resize(lattice_->cells(k).size());
      for (std::size_t c = 0; c < lattice_->cells(k).size(); ++c) {
        const Cell& cell = lattice_->cells(k)[c];
        const auto& fv = L.face(cell.face_dim, cell.face_index).vertices;
        for (int f = 0; f < nf_; ++f) {
          const auto& facet = L.face(d_ - 1, f).vertices;
          if (std::includes(facet.begin(), facet.end(), fv.begin(), fv.end()))
            containing_[static_cast<std::size_t>(k)][c].push_back(f);
        }
      }
    }
    memo_.resize(spec.pairings.size() * 2, std::vector<std::map<int, std::pair<int, int>>>(static_cast<std::size_t>(d_) + 1));
  }

  const std::shared_ptr<CellLattice>& lattice() const { return lattice_; }
  int dim() const { return d_; }
  int facets_per_copy() const { return nf_; }
  int vertices_per_copy() const { return nv_; }

  const std::map<int, int>& vertex_map(int p, int dir) const {
    return dir == 0 ? spec_.pairings[static_cast<std::size_t>(p)].vertex_map : inverses_[static_cast<std::size_t>(p)];
  }
  int source_facet(int p, int dir) const {
    const Pairing& q = spec_.pairings[static_cast<std::size_t>(p)];
    return dir == 0 ? q.facet_a : q.facet_b;
  }
  int target_facet(int p, int dir) const {
    const Pairing& q = spec_.pairings[static_cast<std::size_t>(p)];
    return dir == 0 ? q.facet_b : q.facet_a;
  }

  // Global vertices (face vertices, then the cusp if any) of a cell in a copy.
  std::vector<int> cell_vertices(int k, int copy, int c) const {
    const Cell& cell = lattice_->cell(k, c);
    std::vector<int> vs = lattice_->polytope().face(cell.face_dim, cell.face_index).vertices;
    if (cell.cusp >= 0) vs.push_back(cell.cusp);
    for (int& v : vs) v += copy * nv_;
    return vs;
  }

  // (pairing, direction) moves applicable to a cell of the given copy.
  std::vector<std::pair<int, int>> moves(int k, int copy, int c) const {
    std::vector<std::pair<int, int>> out;
    for (int f : containing_[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]) {
      const auto [p, dir] = facet_pairing_[static_cast<std::size_t>(copy * nf_ + f)];
      if (p >= 0) out.emplace_back(p, dir);
    }
    return out;
  }

  // Image of local cell c (in the copy of the move's source facet) and orientation sign.
  std::pair<int, int> transport(int p, int dir, int k, int c) {
    auto& memo = memo_[static_cast<std::size_t>(p * 2 + dir)][static_cast<std::size_t>(k)];
    if (const auto it = memo.find(c); it != memo.end()) return it->second;
    const int src_copy = source_facet(p, dir) / nf_;
    const int dst_copy = target_facet(p, dir) / nf_;
    const auto& phi = vertex_map(p, dir);
    const Cell& cell = lattice_->cell(k, c);
    std::vector<int> image;
    for (int v : lattice_->polytope().face(cell.face_dim, cell.face_index).vertices)
      image.push_back(phi.at(v + src_copy * nv_) - dst_copy * nv_);
    const auto located = lattice_->polytope().locate(image);
    const int cusp = cell.cusp < 0 ? -1 : phi.at(cell.cusp + src_copy * nv_) - dst_copy * nv_;
    const int target = located ? lattice_->find(located->first, located->second, cusp) : -1;
    if (target < 0) throw GluingError("pairing does not carry a cell onto a cell");
    int sign = 1;
    if (k > 0) {
      const int g = cell.facets.front();
      const auto [g_image, g_sign] = transport(p, dir, k - 1, g);
      const Cell& t = lattice_->cell(k, target);
      const auto pos = std::find(t.facets.begin(), t.facets.end(), g_image);
      if (pos == t.facets.end()) throw GluingError("pairing does not respect cell incidences");
      sign = t.incidence[static_cast<std::size_t>(pos - t.facets.begin())] * g_sign * cell.incidence.front();
    }
    return memo[c] = {target, sign};
  }

 private:
  const SidePairingSpec& spec_;
  std::shared_ptr<CellLattice> lattice_;
  int d_ = 0, nf_ = 0, nv_ = 0;
  std::vector<std::pair<int, int>> facet_pairing_;
  std::vector<std::map<int, int>> inverses_;
  std::vector<std::vector<std::vector<int>>> containing_;
  std::vector<std::vector<std::map<int, std::pair<int, int>>>> memo_;
};

}  // namespace

int QuotientComplex::cusp_vertex(int k, int orbit) const {
  const OrbitMember& m = orbits.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(orbit)).front();
  const Cell& c = lattice->cell(k, m.cell);
  if (c.cusp < 0) return -1;
  return c.cusp + m.copy * static_cast<int>(lattice->polytope().vertex_count());
}

QuotientComplex quotient_complex(const SidePairingSpec& spec) {
  Gluer gluer(spec);
  const auto& L = *gluer.lattice();
  const int d = gluer.dim();
  const int copies = spec.copies;
  QuotientComplex q;
  q.spec = spec;
  q.lattice = gluer.lattice();
  q.copies = copies;
  q.orbits.resize(static_cast<std::size_t>(d) + 1);
  q.cell_orbit.resize(static_cast<std::size_t>(d) + 1);
  q.on_boundary.resize(static_cast<std::size_t>(d) + 1);

  for (int k = 0; k <= d; ++k) {
    const int n = static_cast<int>(L.cells(k).size());
    auto& owner = q.cell_orbit[static_cast<std::size_t>(k)];
    owner.assign(static_cast<std::size_t>(n * copies), {-1, 0});
    std::vector<std::vector<int>> frame(static_cast<std::size_t>(n * copies));
    for (int g0 = 0; g0 < n * copies; ++g0) {
      if (owner[static_cast<std::size_t>(g0)].first >= 0) continue;
      const int orbit = static_cast<int>(q.orbits[static_cast<std::size_t>(k)].size());
      std::vector<OrbitMember> members;
      owner[static_cast<std::size_t>(g0)] = {orbit, 1};
      frame[static_cast<std::size_t>(g0)] = gluer.cell_vertices(k, g0 / n, g0 % n);
      std::vector<int> queue{g0};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const int g = queue[head];
        const int copy = g / n, c = g % n;
        const int sign = owner[static_cast<std::size_t>(g)].second;
        members.push_back({copy, c, sign});
        for (const auto& [p, dir] : gluer.moves(k, copy, c)) {
          const auto [c2, s] = gluer.transport(p, dir, k, c);
          const int copy2 = gluer.target_facet(p, dir) / gluer.facets_per_copy();
          const int g2 = copy2 * n + c2;
          std::vector<int> mapped;
          for (int v : frame[static_cast<std::size_t>(g)]) mapped.push_back(gluer.vertex_map(p, dir).at(v));
          if (owner[static_cast<std::size_t>(g2)].first < 0) {
            owner[static_cast<std::size_t>(g2)] = {orbit, sign * s};
            frame[static_cast<std::size_t>(g2)] = std::move(mapped);
            queue.push_back(g2);
          } else if (owner[static_cast<std::size_t>(g2)].second != sign * s) {
            throw GluingError("a " + std::to_string(k) + "-cell is identified with itself reversing orientation");
          } else if (frame[static_cast<std::size_t>(g2)] != mapped) {
            throw GluingError("a " + std::to_string(k) + "-cell is identified with itself by a nontrivial symmetry");
          }
        }
      }
      std::sort(members.begin(), members.end(), [](const OrbitMember& a, const OrbitMember& b) {
        return std::tie(a.copy, a.cell) < std::tie(b.copy, b.cell);
      });
      q.on_boundary[static_cast<std::size_t>(k)].push_back(L.cell(k, members.front().cell).origin == CellOrigin::vertex_link);
      q.orbits[static_cast<std::size_t>(k)].push_back(std::move(members));
    }
  }

  std::vector<IntMatrix> boundary;
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    const auto& orbits = q.orbits[static_cast<std::size_t>(k)];
    IntMatrix m(k == 0 ? 0 : q.cell_count(k - 1), orbits.size());
    for (std::size_t o = 0; o < orbits.size(); ++o) {
      const OrbitMember& rep = orbits[o].front();
      const Cell& cell = L.cell(k, rep.cell);
      std::ostringstream label;
      label << (q.on_boundary[static_cast<std::size_t>(k)][o] ? "link" : "cell") << ' ' << rep.copy << ':'
            << cell.face_dim << '/' << cell.face_index;
      if (cell.cusp >= 0) label << '@' << cell.cusp;
      labels[static_cast<std::size_t>(k)].push_back(label.str());
      if (k == 0) continue;
      const int n_lower = static_cast<int>(L.cells(k - 1).size());
      for (std::size_t j = 0; j < cell.facets.size(); ++j) {
        const auto [orbit, sign] = q.cell_orbit[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(rep.copy * n_lower + cell.facets[j])];
        m(static_cast<std::size_t>(orbit), o) += cell.incidence[j] * sign;
      }
    }
    boundary.push_back(std::move(m));
  }
  q.complex = std::make_shared<const ChainComplex>(std::move(boundary), std::move(labels));
  return q;
}

OrientationCharacter orientation_character(const SidePairingSpec& spec) {
  Gluer gluer(spec);
  const auto& L = *gluer.lattice();
  const int d = gluer.dim();
  const int nf = gluer.facets_per_copy();
  const Cell& top = L.cell(d, 0);
  auto top_incidence = [&](int local_facet_face) {
    const int cell = L.find(d - 1, local_facet_face, -1);
    const auto pos = std::find(top.facets.begin(), top.facets.end(), cell);
    return top.incidence[static_cast<std::size_t>(pos - top.facets.begin())];
  };
  // relation[p] = -[T:a][T:b] sigma: the copies must get equal orientations iff it is +1.
  std::vector<int> relation;
  for (std::size_t i = 0; i < spec.pairings.size(); ++i) {
    const Pairing& p = spec.pairings[i];
    const int fa = p.facet_a % nf, fb = p.facet_b % nf;
    const int sigma = gluer.transport(static_cast<int>(i), 0, d - 1, L.find(d - 1, fa, -1)).second;
    relation.push_back(-top_incidence(fa) * top_incidence(fb) * sigma);
  }
  OrientationCharacter oc;
  oc.copy_orientation.assign(static_cast<std::size_t>(spec.copies), 0);
  for (int root = 0; root < spec.copies; ++root) {
    if (oc.copy_orientation[static_cast<std::size_t>(root)] != 0) continue;
    oc.copy_orientation[static_cast<std::size_t>(root)] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < spec.pairings.size(); ++i) {
        const int ca = spec.pairings[i].facet_a / nf, cb = spec.pairings[i].facet_b / nf;
        int& oa = oc.copy_orientation[static_cast<std::size_t>(ca)];
        int& ob = oc.copy_orientation[static_cast<std::size_t>(cb)];
        if (oa != 0 && ob == 0) { ob = oa * relation[i]; grew = true; }
        if (ob != 0 && oa == 0) { oa = ob * relation[i]; grew = true; }
      }
    }
  }
  for (std::size_t i = 0; i < spec.pairings.size(); ++i) {
    const int ca = spec.pairings[i].facet_a / nf, cb = spec.pairings[i].facet_b / nf;
    const int s = oc.copy_orientation[static_cast<std::size_t>(ca)] * oc.copy_orientation[static_cast<std::size_t>(cb)] * relation[i];
    oc.signs.push_back(s);
    if (s < 0) oc.orientable = false;
  }
  return oc;
}

SidePairingSpec double_cover(const SidePairingSpec& spec) {
  if (spec.copies != 1) throw GluingError("double_cover: expects a single-copy side-pairing");
  const OrientationCharacter oc = orientation_character(spec);
  if (oc.orientable) throw GluingError("double_cover: side-pairing is orientable, the cover would be disconnected");
  const FaceLattice lattice = polytope_by_name(spec.polytope);
  const int nf = static_cast<int>(lattice.faces(lattice.dim() - 1).size());
  const int nv = static_cast<int>(lattice.vertex_count());
  SidePairingSpec out;
  out.polytope = spec.polytope;
  out.copies = 2;
  out.metadata = spec.metadata;
  out.metadata.emplace_back("cover", "orientation double cover");
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < spec.pairings.size(); ++i) {
    const Pairing& p = spec.pairings[i];
    for (int copy = 0; copy < 2; ++copy) {
      const int other = oc.signs[i] > 0 ? copy : 1 - copy;
      Pairing q;
      q.facet_a = p.facet_a + copy * nf;
      q.facet_b = p.facet_b + other * nf;
      for (const auto& [v, w] : p.vertex_map) q.vertex_map[v + copy * nv] = w + other * nv;
      const auto key = std::minmax(q.facet_a, q.facet_b);
      if (seen.insert(key).second) out.pairings.push_back(std::move(q));
    }
  }
  return out;
}

Presentation presentation(const SidePairingSpec& spec) {
  Gluer gluer(spec);
  const FaceLattice& L = gluer.lattice()->polytope();
  const int d = L.dim();
  const int nf = gluer.facets_per_copy();
  const int nv = gluer.vertices_per_copy();
  Presentation pr;
  for (std::size_t i = 0; i < spec.pairings.size(); ++i)
    pr.generators.push_back("g" + std::to_string(i + 1));

  std::map<int, std::pair<int, int>> facet_move;
  for (std::size_t i = 0; i < spec.pairings.size(); ++i) {
    facet_move[spec.pairings[i].facet_a] = {static_cast<int>(i), 0};
    if (!spec.pairings[i].is_self_pairing()) facet_move[spec.pairings[i].facet_b] = {static_cast<int>(i), 1};
  }
  const int nr = static_cast<int>(L.faces(d - 2).size());
  std::set<std::pair<int, int>> done;
  for (int copy = 0; copy < spec.copies; ++copy)
    for (int r = 0; r < nr; ++r) {
      if (done.contains({copy, r})) continue;
      const std::vector<int> around = L.cofaces(d - 2, r);
      int cur_copy = copy, ridge = r, facet = around.front();
      std::vector<int> word;
      do {
        done.insert({cur_copy, ridge});
        const auto [p, dir] = facet_move.at(cur_copy * nf + facet);
        word.push_back(dir == 0 ? p + 1 : -(p + 1));
        const auto& phi = gluer.vertex_map(p, dir);
        const int next_copy = gluer.target_facet(p, dir) / nf;
        std::vector<int> image;
        for (int v : L.face(d - 2, ridge).vertices) image.push_back(phi.at(v + cur_copy * nv) - next_copy * nv);
        ridge = L.locate(image)->second;
        const int arrived = gluer.target_facet(p, dir) % nf;
        const std::vector<int> next = L.cofaces(d - 2, ridge);
        facet = next[0] == arrived ? next[1] : next[0];
        cur_copy = next_copy;
      } while (!(cur_copy == copy && ridge == r && facet == around.front()));
      pr.relators.push_back(std::move(word));
    }

  // Several copies: the dual graph's spanning-tree pairings are trivial in the fundamental group.
  std::vector<bool> reached(static_cast<std::size_t>(spec.copies), false);
  reached[0] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < spec.pairings.size(); ++i) {
      const int ca = spec.pairings[i].facet_a / nf, cb = spec.pairings[i].facet_b / nf;
      if (reached[static_cast<std::size_t>(ca)] != reached[static_cast<std::size_t>(cb)]) {
        reached[static_cast<std::size_t>(ca)] = reached[static_cast<std::size_t>(cb)] = true;
        pr.relators.push_back({static_cast<int>(i) + 1});
        grew = true;
      }
    }
  }
  return pr;
}

IntMatrix Presentation::relation_matrix() const {
  IntMatrix m(generators.size(), relators.size());
  for (std::size_t j = 0; j < relators.size(); ++j)
    for (int letter : relators[j]) m(static_cast<std::size_t>(std::abs(letter) - 1), j) += letter > 0 ? 1 : -1;
  return m;
}

AbelianGroup Presentation::abelianization() const { return cokernel(relation_matrix()); }

std::string Presentation::to_string() const {
  std::ostringstream os;
  os << "< ";
  for (std::size_t i = 0; i < generators.size(); ++i) os << (i ? ", " : "") << generators[i];
  os << " | ";
  for (std::size_t j = 0; j < relators.size(); ++j) {
    os << (j ? ", " : "");
    for (std::size_t t = 0; t < relators[j].size(); ++t) {
      const int letter = relators[j][t];
      os << (t ? " " : "") << generators[static_cast<std::size_t>(std::abs(letter) - 1)] << (letter < 0 ? "^-1" : "");
    }
  }
  os << " >";
  return os.str();
}

}  // namespace ahs
