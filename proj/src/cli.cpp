#include "ahs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ahs/filling.hpp"
#include "ahs/flatgeom.hpp"

namespace ahs {

namespace {

using nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string pairing;
  int copies = 0;  // 0: command default
  std::string box = "0:0";
  std::string tuple;
  std::string scale = "1";
  std::string balance_c;
  std::string format = "table";
  unsigned threads = 1;
  int cusp = 0;  // 0: all
};

Rational parse_rational(const std::string& text, const std::string& what) {
  const std::string s = text;
  try {
    if (s.find('.') != std::string::npos) {
      const auto dot = s.find('.');
      const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
      if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(s);
      const bool neg = !whole.empty() && whole[0] == '-';
      const std::string digits = (neg ? whole.substr(1) : whole) + frac;
      if (digits.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(s);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      Rational r(Integer(digits), den);
      r.canonicalize();
      return neg ? Rational(-r) : r;
    }
    Rational r(s);
    if (r.get_den() == 0) throw std::invalid_argument(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InputError("invalid " + what + " '" + text + "'");
  }
}

Integer parse_integer(const std::string& text, const std::string& what) {
  Integer v;
  if (text.empty() || v.set_str(text, 10) != 0) throw InputError("invalid " + what + " '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

// "lo:hi" for every coordinate, or one "lo:hi" per coordinate separated by commas.
std::vector<std::pair<long, long>> parse_box(const std::string& text, std::size_t coords) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 1 && parts.size() != coords)
    throw InputError("--box needs 1 or " + std::to_string(coords) + " ranges, got " + std::to_string(parts.size()));
  std::vector<std::pair<long, long>> out;
  for (const std::string& p : parts) {
    const auto colon = p.find(':');
    if (colon == std::string::npos) throw InputError("box range '" + p + "' is not of the form lo:hi");
    const Integer lo = parse_integer(p.substr(0, colon), "box bound"), hi = parse_integer(p.substr(colon + 1), "box bound");
    if (lo > hi) throw InputError("box range '" + p + "' is empty");
    if (!lo.fits_slong_p() || !hi.fits_slong_p()) throw InputError("box range '" + p + "' is too large");
    out.emplace_back(lo.get_si(), hi.get_si());
  }
  if (out.size() == 1) out.assign(coords, out.front());
  return out;
}

ordered_json vec_json(const IntVector& v) {
  ordered_json a = ordered_json::array();
  for (const Integer& x : v) {
    if (x.fits_slong_p()) a.push_back(x.get_si());
    else a.push_back(x.get_str());
  }
  return a;
}

ordered_json matrix_json(const IntMatrix& m) {
  ordered_json a = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r)));
  return a;
}

// Lower end of the enclosure, truncated to 12 decimals.
std::string decimal(const SlopeLength& l) {
  Integer scaled;
  Integer ten12;
  mpz_ui_pow_ui(ten12.get_mpz_t(), 10, 12);
  const Rational x = l.lower * Rational(ten12);
  mpz_fdiv_q(scaled.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  std::string digits = scaled.get_str();
  if (digits.size() < 13) digits.insert(0, 13 - digits.size(), '0');
  return digits.substr(0, digits.size() - 12) + "." + digits.substr(digits.size() - 12);
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

void print_pairs(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::size_t w = 0;
  for (const auto& [k, v] : kv) w = std::max(w, k.size());
  for (const auto& [k, v] : kv) out << k << std::string(w - k.size() + 2, ' ') << v << '\n';
}

// Loads the spec and brings it to the requested number of copies.
SidePairingSpec load(const RunConfig& cfg, bool want_orientable) {
  SidePairingSpec spec;
  try {
    spec = read_pairing_file(cfg.pairing);
  } catch (const ParseError& e) {
    throw InputError(cfg.pairing + ": " + e.what());
  }
  int copies = cfg.copies;
  if (copies == 0) copies = want_orientable && !orientation_character(spec).orientable ? spec.copies * 2 : spec.copies;
  if (copies == spec.copies) return spec;
  if (copies == 2 && spec.copies == 1) return double_cover(spec);
  throw InputError("cannot produce " + std::to_string(copies) + " copies from a " + std::to_string(spec.copies) + "-copy pairing");
}

struct Pipeline {
  SidePairingSpec spec;
  QuotientComplex q;
  OrientationCharacter orientation;
  PeripheralSystem peripheral;
  std::vector<FlatLattice> lattices;
  long euler = 0;
};

Pipeline build_pipeline(const RunConfig& cfg, bool lattices) {
  Pipeline p;
  p.spec = load(cfg, true);
  p.q = quotient_complex(p.spec);
  p.orientation = orientation_character(p.spec);
  p.euler = euler_characteristic(*p.q.complex);
  p.peripheral = peripheral_system(p.q);
  if (lattices) {
    const Rational scale = parse_rational(cfg.scale, "--scale");
    if (scale <= 0) throw InputError("--scale must be positive");
    for (const CuspSection& s : p.peripheral.sections) p.lattices.push_back(develop_lattice(p.q, s, scale));
  }
  return p;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const SidePairingSpec spec = load(cfg, false);
  const QuotientComplex q = quotient_complex(spec);
  const ChainComplex& c = *q.complex;
  const OrientationCharacter oc = orientation_character(spec);
  const auto cycles = vertex_cycles(spec);
  const AbelianGroup pres = presentation(spec).abelianization();
  std::vector<AbelianGroup> h;
  for (int k = 0; k <= c.top_dim(); ++k) h.push_back(homology(c, k));
  std::size_t self = 0;
  for (const Pairing& p : spec.pairings) self += p.is_self_pairing();
  const auto report = validate(c);
  if (!report.ok) throw GluingError("quotient complex fails validation: " + report.message);
  if (pres != h.at(1)) throw GluingError("presentation abelianization disagrees with H_1");

  std::vector<std::string> cells;
  for (int k = 0; k <= c.top_dim(); ++k) cells.push_back(std::to_string(c.cell_count(k)));
  std::vector<std::string> cycle_text;
  for (const auto& cyc : cycles) {
    std::string s = "{";
    for (std::size_t i = 0; i < cyc.size(); ++i) s += (i ? " " : "") + std::to_string(cyc[i]);
    cycle_text.push_back(s + "}");
  }
  std::vector<std::string> signs;
  for (int s : oc.signs) signs.push_back(s > 0 ? "+" : "-");

  if (cfg.format == "jsonl") {
    ordered_json j;
    j["command"] = "build";
    j["polytope"] = spec.polytope;
    j["copies"] = spec.copies;
    for (const auto& [k, v] : spec.metadata) j["metadata"][k] = v;
    j["facets"] = spec.pairings.size() * 2 - self;
    j["pairings"] = spec.pairings.size();
    j["self_pairings"] = self;
    j["cells"] = ordered_json::array();
    for (int k = 0; k <= c.top_dim(); ++k) j["cells"].push_back(c.cell_count(k));
    j["vertex_cycles"] = cycles;
    j["cusps"] = cycles.size();
    j["orientable"] = oc.orientable;
    j["pairing_signs"] = oc.signs;
    j["euler"] = euler_characteristic(c);
    for (std::size_t k = 0; k < h.size(); ++k) j["H" + std::to_string(k)] = h[k].to_string();
    j["presentation_h1"] = pres.to_string();
    out << j.dump() << '\n';
    return 0;
  }
  std::vector<std::pair<std::string, std::string>> kv{
      {"polytope", spec.polytope},
      {"copies", std::to_string(spec.copies)},
      {"pairings", std::to_string(spec.pairings.size()) + " (" + std::to_string(self) + " self)"},
      {"cells", [&] { std::string s; for (auto& x : cells) s += (s.empty() ? "" : " ") + x; return s; }()},
      {"cusps", std::to_string(cycles.size())},
      {"orientable", oc.orientable ? "yes" : "no"},
      {"signs", [&] { std::string s; for (auto& x : signs) s += x; return s; }()},
      {"euler", std::to_string(euler_characteristic(c))}};
  for (std::size_t i = 0; i < spec.metadata.size(); ++i) kv.insert(kv.begin() + 2 + static_cast<long>(i), spec.metadata[i]);
  for (std::size_t k = 0; k < h.size(); ++k) kv.emplace_back("H" + std::to_string(k), h[k].to_string());
  kv.emplace_back("pi1 ab", pres.to_string());
  for (std::size_t i = 0; i < cycle_text.size(); ++i) kv.emplace_back("cycle " + std::to_string(i + 1), cycle_text[i]);
  print_pairs(out, kv);
  return 0;
}

int cmd_cusps(const RunConfig& cfg, std::ostream& out) {
  const SidePairingSpec spec = load(cfg, false);
  const QuotientComplex q = quotient_complex(spec);
  const auto sections = cusp_sections(q);
  if (sections.size() != vertex_cycles(spec).size())
    throw PeripheralError("boundary components do not match vertex cycles");
  Table t({"cusp", "cubes", "vertices", "H1", "H2", "H3"});
  for (const CuspSection& s : sections) {
    std::vector<std::string> hs;
    for (int k = 1; k <= 3; ++k) hs.push_back(k <= s.complex->top_dim() ? homology(*s.complex, k).to_string() : "0");
    if (cfg.format == "jsonl") {
      ordered_json j;
      j["cusp"] = s.index + 1;
      j["cubes"] = s.cube_count;
      j["vertices"] = s.vertex_cycle;
      j["H1"] = hs[0];
      j["H2"] = hs[1];
      j["H3"] = hs[2];
      out << j.dump() << '\n';
    } else {
      std::string vs;
      for (int v : s.vertex_cycle) vs += (vs.empty() ? "" : " ") + std::to_string(v);
      t.add({std::to_string(s.index + 1), std::to_string(s.cube_count), vs, hs[0], hs[1], hs[2]});
    }
  }
  if (cfg.format != "jsonl") t.print(out);
  return 0;
}

int cmd_peripheral(const RunConfig& cfg, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg, false);
  if (cfg.format != "jsonl") {
    out << peripheral_report(p.peripheral);
    return 0;
  }
  for (std::size_t i = 0; i < p.peripheral.cusp_count(); ++i) {
    ordered_json j;
    j["cusp"] = i + 1;
    j["cubes"] = p.peripheral.sections[i].cube_count;
    j["L"] = matrix_json(p.peripheral.maps[i]);
    j["k1"] = vec_json(p.peripheral.bases[i].k1);
    j["k2"] = vec_json(p.peripheral.bases[i].k2);
    j["k3"] = vec_json(p.peripheral.bases[i].k3);
    j["epsilon"] = vec_json(p.peripheral.epsilon[i]);
    out << j.dump() << '\n';
  }
  ordered_json j;
  j["H1"] = p.peripheral.ambient.to_string();
  j["epsilon_generates"] = p.peripheral.epsilon_generates;
  out << j.dump() << '\n';
  return 0;
}

int cmd_lattice(const RunConfig& cfg, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg, true);
  if (static_cast<std::size_t>(cfg.cusp) > p.lattices.size())
    throw InputError("--cusp " + std::to_string(cfg.cusp) + " out of range, there are " + std::to_string(p.lattices.size()) + " cusps");
  for (std::size_t i = 0; i < p.lattices.size(); ++i) {
    if (cfg.cusp != 0 && static_cast<std::size_t>(cfg.cusp) != i + 1) continue;
    const FlatLattice& l = p.lattices[i];
    const auto shorts = short_slopes(l, p.peripheral.bases[i], cfg.threads);
    if (cfg.format == "jsonl") {
      ordered_json j;
      j["cusp"] = i + 1;
      j["scale"] = l.scale.get_str();
      j["basis"] = ordered_json::array();
      for (std::size_t c = 0; c < l.dim(); ++c) {
        ordered_json col = ordered_json::array();
        for (std::size_t r = 0; r < l.dim(); ++r) col.push_back(l.basis[r][c].get_str());
        j["basis"].push_back(col);
      }
      j["covolume"] = l.covolume().get_str();
      j["homology_to_lattice"] = matrix_json(l.homology_to_lattice);
      j["short_slopes"] = ordered_json::array();
      for (const auto& [b, c] : shorts) j["short_slopes"].push_back({b.get_si(), c.get_si()});
      out << j.dump() << '\n';
    } else {
      out << "cusp " << i + 1 << "  scale " << l.scale.get_str() << "  covolume " << l.covolume().get_str() << '\n'
          << l.dump();
      out << "short slopes (" << shorts.size() << "):";
      for (const auto& [b, c] : shorts) out << " (" << b.get_str() << "," << c.get_str() << ")";
      out << '\n';
    }
  }
  return 0;
}

class Evaluator {
 public:
  Evaluator(const Pipeline& p, std::optional<Rational> balance) : p_(p), balance_(std::move(balance)) {}

  ordered_json record(const std::vector<Integer>& bc) const {
    ordered_json j;
    j["tuple"] = vec_json(bc);
    const FillingSlopes s = adapted_slopes(p_.peripheral, bc);
    const FillingResult r = is_homology_sphere(p_.peripheral, s, p_.euler, p_.orientation.orientable);
    std::vector<SlopeLength> lengths;
    j["slopes"] = ordered_json::array();
    for (std::size_t i = 0; i < s.slopes.size(); ++i) {
      j["slopes"].push_back(vec_json(s.slopes[i]));
      lengths.push_back(slope_length(p_.lattices[i], p_.lattices[i].from_homology(s.slopes[i])));
    }
    j["h1"] = r.h1.to_string();
    j["homology_sphere"] = r.homology_sphere;
    j["squared_lengths"] = ordered_json::array();
    j["lengths"] = ordered_json::array();
    for (const SlopeLength& l : lengths) {
      j["squared_lengths"].push_back(l.squared.get_str());
      j["lengths"].push_back(decimal(l));
    }
    try {
      const bool two_pi = two_pi_ok(lengths);
      j["two_pi"] = two_pi;
      if (balance_) j["weakly_balanced"] = weakly_balanced(lengths, *balance_);
      else j["weakly_balanced"] = nullptr;
      j["aspherical_candidate"] = two_pi && r.homology_sphere;
      j["status"] = "ok";
    } catch (const PrecisionError& e) {
      j["two_pi"] = nullptr;
      j["weakly_balanced"] = nullptr;
      j["aspherical_candidate"] = nullptr;
      j["status"] = std::string("precision: ") + e.what();
    }
    return j;
  }

 private:
  const Pipeline& p_;
  std::optional<Rational> balance_;
};

std::vector<std::string> table_row(const ordered_json& j) {
  std::string tuple;
  for (const auto& x : j["tuple"]) tuple += (tuple.empty() ? "" : " ") + x.dump();
  std::string lengths;
  for (const auto& x : j["lengths"]) {
    const std::string s = x.get<std::string>();
    lengths += (lengths.empty() ? "" : " ") + s.substr(0, s.find('.') + 4);
  }
  auto flag = [](const ordered_json& v) { return v.is_null() ? std::string("-") : v.get<bool>() ? std::string("yes") : std::string("no"); };
  return {tuple, j["h1"].get<std::string>(), flag(j["homology_sphere"]), lengths, flag(j["two_pi"]),
          flag(j["weakly_balanced"]), flag(j["aspherical_candidate"])};
}

std::optional<Rational> balance_of(const RunConfig& cfg) {
  if (cfg.balance_c.empty()) return std::nullopt;
  const Rational c = parse_rational(cfg.balance_c, "--balance-c");
  if (c <= 0) throw InputError("--balance-c must be positive");
  return c;
}

int cmd_fill(const RunConfig& cfg, std::ostream& out) {
  const std::optional<Rational> balance = balance_of(cfg);
  const Pipeline p = build_pipeline(cfg, true);
  std::vector<Integer> bc;
  for (const std::string& s : split(cfg.tuple, ',')) bc.push_back(parse_integer(s, "tuple entry"));
  if (bc.size() != 2 * p.peripheral.cusp_count())
    throw InputError("--tuple needs " + std::to_string(2 * p.peripheral.cusp_count()) + " integers");
  const FillingResult r = is_homology_sphere(p.peripheral, adapted_slopes(p.peripheral, bc), p.euler, p.orientation.orientable);
  ordered_json j = Evaluator(p, balance).record(bc);
  j["notes"] = r.notes;
  if (cfg.format == "jsonl") {
    out << j.dump() << '\n';
  } else {
    Table t({"tuple", "H1", "sphere", "lengths", "2pi", "balanced", "candidate"});
    t.add(table_row(j));
    t.print(out);
    for (const auto& n : r.notes) out << "  " << n << '\n';
  }
  return 0;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const std::optional<Rational> balance = balance_of(cfg);
  const Pipeline p = build_pipeline(cfg, true);
  const std::size_t coords = 2 * p.peripheral.cusp_count();
  const auto box = parse_box(cfg.box, coords);
  Integer total = 1;
  for (const auto& [lo, hi] : box) total *= hi - lo + 1;
  const Evaluator eval(p, balance);
  const bool jsonl = cfg.format == "jsonl";
  Table table({"tuple", "H1", "sphere", "lengths", "2pi", "balanced", "candidate"});

  // Blocks of consecutive tuples are evaluated in parallel and written in order.
  const std::size_t block = 4096;
  std::vector<long> cursor(coords);
  for (std::size_t i = 0; i < coords; ++i) cursor[i] = box[i].first;
  bool done = false;
  const unsigned threads = std::max(1u, cfg.threads);
  while (!done) {
    std::vector<std::vector<Integer>> tuples;
    while (!done && tuples.size() < block) {
      tuples.emplace_back(cursor.begin(), cursor.end());
      std::size_t i = coords;
      while (i > 0 && cursor[i - 1] == box[i - 1].second) {
        cursor[i - 1] = box[i - 1].first;
        --i;
      }
      if (i == 0) done = true;
      else ++cursor[i - 1];
    }
    std::vector<ordered_json> records(tuples.size());
    std::vector<std::string> errors(threads);
    auto work = [&](unsigned w) {
      try {
        for (std::size_t k = w; k < tuples.size(); k += threads) records[k] = eval.record(tuples[k]);
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (const std::string& e : errors)
      if (!e.empty()) throw FillingError(e);
    for (const ordered_json& j : records) {
      if (jsonl) out << j.dump() << '\n';
      else table.add(table_row(j));
    }
  }
  if (!jsonl) table.print(out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homology spheres from side-pairings of the ideal 24-cell", "ahs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--pairing", cfg.pairing, "side-pairing file")->required();
    sub->add_option("--copies", cfg.copies, "polytope copies (1, or 2 for the orientation double cover)")->check(CLI::Range(1, 2));
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "jsonl"}));
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  };
  auto geometric = [&](CLI::App* sub) {
    sub->add_option("--scale", cfg.scale, "horosphere scale, a positive rational");
    sub->add_option("--balance-c", cfg.balance_c, "constant c of the weakly balanced test");
  };
  CLI::App* build = app.add_subcommand("build", "homology and orientability of the quotient");
  common(build);
  CLI::App* cusps = app.add_subcommand("cusps", "boundary components and their homology");
  common(cusps);
  CLI::App* peripheral = app.add_subcommand("peripheral", "peripheral maps and adapted bases");
  common(peripheral);
  CLI::App* fill = app.add_subcommand("fill", "evaluate one slope tuple");
  common(fill);
  geometric(fill);
  fill->add_option("--tuple", cfg.tuple, "b1,c1,...,bn,cn")->required();
  CLI::App* enumerate = app.add_subcommand("enumerate", "evaluate every slope tuple in a box");
  common(enumerate);
  geometric(enumerate);
  enumerate->add_option("--box", cfg.box, "lo:hi for all coordinates, or one lo:hi per coordinate");
  CLI::App* lattice = app.add_subcommand("lattice", "developed cusp lattices and short slopes");
  common(lattice);
  lattice->add_option("--scale", cfg.scale, "horosphere scale, a positive rational");
  lattice->add_option("--cusp", cfg.cusp, "only this cusp (1-based)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build(cfg, out);
    if (*cusps) return cmd_cusps(cfg, out);
    if (*peripheral) return cmd_peripheral(cfg, out);
    if (*fill) return cmd_fill(cfg, out);
    if (*enumerate) return cmd_enumerate(cfg, out);
    if (*lattice) return cmd_lattice(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ahs
