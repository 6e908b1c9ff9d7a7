// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <set>
#include <sstream>

#include "ahs/cli.hpp"
#include "ahs/filling.hpp"
#include "ahs/flatgeom.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ahs;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body, double limit_seconds = 0) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) o.require(false, "runtime above limit");
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%.3f s%s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              limit_seconds > 0 ? (", limit " + std::to_string(static_cast<int>(limit_seconds)) + " s").c_str() : "",
              o.detail.empty() ? "" : ": ", o.detail.c_str());
}

IntVector negate(IntVector v) {
  for (Integer& x : v) x = -x;
  return v;
}

const std::string pairing_file = testing::data_path("m1011.pairing");

}  // namespace

int main() {
  report(1, "homology of N", [] {
    Outcome o;
    const QuotientComplex q = quotient_complex(testing::m1011());
    const ChainComplex& c = *q.complex;
    o.require(homology(c, 1).to_string() == "Z_2^6", "H1 = " + homology(c, 1).to_string());
    o.require(homology(c, 2).to_string() == "Z_2^4", "H2 = " + homology(c, 2).to_string());
    o.require(homology(c, 3).is_trivial(), "H3 = " + homology(c, 3).to_string());
    o.require(euler_characteristic(c) == 1, "chi = " + std::to_string(euler_characteristic(c)));
    return o;
  }, 10);

  report(2, "homology, orientability and cusps of the double cover M", [] {
    Outcome o;
    const SidePairingSpec m = double_cover(testing::m1011());
    const QuotientComplex q = quotient_complex(m);
    const ChainComplex& c = *q.complex;
    o.require(homology(c, 1) == AbelianGroup::free(5), "H1 = " + homology(c, 1).to_string());
    o.require(homology(c, 2) == AbelianGroup::free(10), "H2 = " + homology(c, 2).to_string());
    o.require(homology(c, 3) == AbelianGroup::free(4), "H3 = " + homology(c, 3).to_string());
    o.require(euler_characteristic(c) == 2, "chi");
    o.require(orientation_character(m).orientable, "not orientable");
    const auto sections = cusp_sections(q);
    std::vector<std::size_t> cubes;
    for (const CuspSection& s : sections) cubes.push_back(s.cube_count);
    o.require(cubes == std::vector<std::size_t>{4, 4, 4, 4, 32}, "cube counts");
    return o;
  });

  report(3, "Alexander duality cross-check", [] {
    Outcome o;
    const QuotientComplex q = quotient_complex(double_cover(testing::m1011()));
    const auto expected = alexander_complement_homology(5);
    for (int k = 1; k <= 3; ++k)
      o.require(homology(*q.complex, k) == expected[static_cast<std::size_t>(k - 1)], "H" + std::to_string(k));
    return o;
  });

  report(4, "surgery property suite, 200 random tuples", [] {
    Outcome o;
    const SidePairingSpec m = double_cover(testing::m1011());
    const QuotientComplex q = quotient_complex(m);
    const PeripheralSystem p = peripheral_system(q);
    const long chi = euler_characteristic(*q.complex);
    const bool orientable = orientation_character(m).orientable;
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> d(-50, 50);
    std::uniform_int_distribution<int> which(0, 1);
    int spheres = 0;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Integer> bc;
      for (int i = 0; i < 10; ++i) bc.push_back(d(rng));
      const FillingSlopes s = adapted_slopes(p, bc);
      for (const IntVector& v : s.slopes) o.require(is_primitive(v), "non-primitive slope");
      const bool trivial = h1_filled(p, s).is_trivial();
      const bool sphere = is_homology_sphere(p, s, chi, orientable).homology_sphere;
      spheres += trivial && sphere;
      for (std::size_t cusp = 0; cusp < 5; ++cusp) {
        FillingSlopes t = s;
        t.slopes[cusp] = which(rng) ? p.bases[cusp].k2 : p.bases[cusp].k3;
        o.require(h1_filled(p, t) == AbelianGroup::free(1), "kernel substitution H1 != Z");
        o.require(!is_homology_sphere(p, t, chi, orientable).homology_sphere, "kernel substitution is a sphere");
      }
    }
    o.require(spheres == 200, std::to_string(spheres) + "/200 homology spheres");
    if (o.pass) o.detail = "200/200 homology spheres, 1000 kernel substitutions give Z";
    return o;
  }, 5);

  report(5, "exact linear algebra on 1000 random matrices", [] {
    Outcome o;
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    int oracle_checks = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t r = dim(rng), c = dim(rng);
      const IntMatrix a = testing::random_matrix(rng, r, c, 9);
      const SNFDecomposition s = snf(a);
      o.require(s.U * a * s.V == s.D, "U A V != D");
      o.require(abs(testing::cofactor_det([&] {
                  std::vector<std::vector<Integer>> m(r, std::vector<Integer>(r));
                  for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) m[i][j] = s.U(i, j);
                  return m;
                }())) == 1, "U not unimodular");
      o.require(abs(testing::cofactor_det([&] {
                  std::vector<std::vector<Integer>> m(c, std::vector<Integer>(c));
                  for (std::size_t i = 0; i < c; ++i)
                    for (std::size_t j = 0; j < c; ++j) m[i][j] = s.V(i, j);
                  return m;
                }())) == 1, "V not unimodular");
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (i != j) o.require(s.D(i, j) == 0, "D not diagonal");
      const IntVector d = s.diagonal();
      for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        o.require(d[i] >= 0, "negative invariant factor");
        o.require(d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0, "divisibility chain broken");
      }
      if (r <= 4 && c <= 4) {
        std::vector<Integer> nonzero;
        for (const Integer& x : d)
          if (x != 0) nonzero.push_back(x);
        o.require(nonzero == testing::minors_oracle(a), "disagrees with the gcd-of-minors oracle");
        ++oracle_checks;
      }
    }
    if (o.pass) o.detail = std::to_string(oracle_checks) + " minors-oracle comparisons";
    return o;
  });

  report(6, "oracle complexes: cube torus, square torus, Klein bottle", [] {
    Outcome o;
    const QuotientComplex t3 = quotient_complex(testing::cube_torus(3));
    const std::vector<std::size_t> ranks{1, 3, 3, 1};
    for (int k = 0; k <= 3; ++k)
      o.require(homology(*t3.complex, k) == AbelianGroup::free(ranks[static_cast<std::size_t>(k)]), "3-torus H" + std::to_string(k));
    o.require(euler_characteristic(*t3.complex) == 0, "3-torus chi");
    const QuotientComplex t2 = quotient_complex(testing::cube_torus(2));
    o.require(homology(*t2.complex, 1) == AbelianGroup::free(2), "square torus H1");
    const SidePairingSpec klein = testing::cube_torus(2, 0, 1);
    o.require(!orientation_character(klein).orientable, "Klein bottle reported orientable");
    const QuotientComplex kq = quotient_complex(klein);
    o.require(homology(*kq.complex, 1).to_string() == "Z + Z_2", "Klein H1 = " + homology(*kq.complex, 1).to_string());
    const QuotientComplex cover = quotient_complex(double_cover(klein));
    o.require(homology(*cover.complex, 0) == AbelianGroup::free(1), "cover H0");
    o.require(homology(*cover.complex, 1) == AbelianGroup::free(2), "cover H1");
    o.require(homology(*cover.complex, 2) == AbelianGroup::free(1), "cover H2");
    return o;
  });

  report(7, "flat geometry: short vectors, covolumes, stable short slopes", [] {
    Outcome o;
    const FlatLattice z3 = FlatLattice::standard(3);
    const Rational bound = four_pi_squared_lower();
    std::size_t brute = 0;
    for (int a = -7; a <= 7; ++a)
      for (int b = -7; b <= 7; ++b)
        for (int c = -7; c <= 7; ++c)
          if ((a || b || c) && Rational(a * a + b * b + c * c) < bound) ++brute;
    const std::size_t found = enumerate_short(z3, bound, 1).size();
    o.require(found == brute, "Z^3 count " + std::to_string(found) + " vs " + std::to_string(brute));
    o.require(enumerate_short(z3, bound, 8).size() == brute, "Z^3 count with 8 threads");

    const QuotientComplex q = quotient_complex(double_cover(testing::m1011()));
    const PeripheralSystem p = peripheral_system(q);
    const std::vector<long> cubes{4, 4, 4, 4, 32};
    std::string sizes;
    for (std::size_t i = 0; i < p.cusp_count(); ++i) {
      const FlatLattice l = develop_lattice(q, p.sections[i]);
      o.require(l.covolume() == cubes[i], "covolume of cusp " + std::to_string(i + 1));
      const auto reference = short_slopes(l, p.bases[i], 1);
      for (int rep = 0; rep < 3; ++rep)
        for (unsigned threads : {1u, 8u})
          o.require(short_slopes(develop_lattice(q, p.sections[i]), p.bases[i], threads) == reference,
                    "short slopes differ between runs");
      // Finite: nothing on the rim of a box around the candidates is short.
      for (int b = -12; b <= 12; ++b)
        for (int c = -12; c <= 12; ++c) {
          if (std::abs(b) != 12 && std::abs(c) != 12) continue;
          o.require(slope_length(l, l.from_homology(slope(p.bases[i], b, c))).squared >= bound, "short slope far out");
        }
      sizes += (i ? "," : "") + std::to_string(reference.size());
    }
    if (o.pass) o.detail = "Z^3 count " + std::to_string(brute) + ", failing slopes per cusp " + sizes;
    return o;
  });

  report(8, "nonempty set of aspherical candidates in [-10,10]^10", [] {
    Outcome o;
    const SidePairingSpec m = double_cover(testing::m1011());
    const QuotientComplex q = quotient_complex(m);
    const PeripheralSystem p = peripheral_system(q);
    // The 2pi predicate is per cusp, so the box contains a passing tuple iff every cusp
    // has a passing (b, c) in [-10,10]^2.
    std::vector<Integer> tuple;
    for (std::size_t i = 0; i < p.cusp_count(); ++i) {
      const FlatLattice l = develop_lattice(q, p.sections[i]);
      const auto shorts = short_slopes(l, p.bases[i]);
      const std::set<std::pair<Integer, Integer>> failing(shorts.begin(), shorts.end());
      bool found = false;
      for (int b = 0; b <= 10 && !found; ++b)
        for (int c = 0; c <= 10 && !found; ++c)
          if (!failing.count({b, c})) {
            tuple.push_back(b);
            tuple.push_back(c);
            found = true;
          }
      o.require(found, "cusp " + std::to_string(i + 1) + " has no long slope in the box");
    }
    if (!o.pass) return o;
    const FillingSlopes s = adapted_slopes(p, tuple);
    o.require(is_homology_sphere(p, s, euler_characteristic(*q.complex), true).homology_sphere, "not a homology sphere");
    std::vector<SlopeLength> lengths;
    for (std::size_t i = 0; i < p.cusp_count(); ++i)
      lengths.push_back(slope_length(develop_lattice(q, p.sections[i]), develop_lattice(q, p.sections[i]).from_homology(s.slopes[i])));
    o.require(two_pi_ok(lengths), "library 2pi predicate fails");

    std::string joined;
    for (std::size_t i = 0; i < tuple.size(); ++i) joined += (i ? "," : "") + tuple[i].get_str();
    const std::vector<std::string> args{"ahs", "fill", "--pairing", pairing_file, "--tuple", joined, "--format", "jsonl"};
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    o.require(code == 0, "fill exited with " + std::to_string(code));
    if (code == 0) {
      const auto j = nlohmann::json::parse(out.str());
      o.require(j["homology_sphere"] == true && j["two_pi"] == true && j["aspherical_candidate"] == true,
                "fill does not flag the tuple");
    }
    if (o.pass) o.detail = "witness (" + joined + ")";
    return o;
  });

  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
