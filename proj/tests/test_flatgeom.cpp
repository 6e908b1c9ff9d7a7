#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ahs/flatgeom.hpp"
#include "support.hpp"

using namespace ahs;

namespace {

const QuotientComplex& complex_m() {
  static const QuotientComplex q = quotient_complex(double_cover(testing::m1011()));
  return q;
}

const PeripheralSystem& system_m() {
  static const PeripheralSystem p = peripheral_system(complex_m());
  return p;
}

Rational rat(const char* s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

IntVector negate(IntVector v) {
  for (Integer& x : v) x = -x;
  return v;
}

}  // namespace

TEST_CASE("unit cube tori develop to the standard lattice") {
  for (int n = 2; n <= 4; ++n) {
    const FlatLattice l = develop_lattice(quotient_complex(testing::cube_torus(n)));
    CHECK(l.dim() == static_cast<std::size_t>(n));
    CHECK(l.covolume() == 1);
    CHECK(l.gram() == FlatLattice::standard(static_cast<std::size_t>(n)).gram());
    CHECK(abs(determinant(l.homology_to_lattice)) == 1);
  }
  const FlatLattice scaled = develop_lattice(quotient_complex(testing::cube_torus(3)), 3);
  CHECK(scaled.covolume() == 27);
}

TEST_CASE("a twisted gluing is not a torus") {
  CHECK_THROWS_AS(develop_lattice(quotient_complex(testing::cube_torus(3, 0, 1))), FlatError);
  CHECK_THROWS_AS(develop_lattice(quotient_complex(testing::cube_torus(2, 0, 1))), FlatError);
}

TEST_CASE("short vectors of Z^3") {
  const FlatLattice z3 = FlatLattice::standard(3);
  const auto v = enumerate_short(z3, rat("9/4"));
  CHECK(v.size() == 18);  // 6 of squared length 1, 12 of squared length 2
  CHECK(enumerate_short(z3, 2).size() == 6);
  CHECK(enumerate_short(z3, 1).empty());
  std::set<IntVector> all(v.begin(), v.end());
  for (const IntVector& x : v) CHECK(all.count(negate(x)) == 1);
  CHECK(std::is_sorted(v.begin(), v.end()));
}

TEST_CASE("enumeration below 4 pi^2 matches brute force") {
  const FlatLattice l = FlatLattice::from_basis({{1, rat("1/3"), rat("-1/2")}, {0, rat("5/4"), rat("1/3")}, {0, 0, rat("3/2")}});
  const Rational bound = four_pi_squared_lower();
  std::vector<IntVector> brute;
  const int box = 12;
  for (int a = -box; a <= box; ++a)
    for (int b = -box; b <= box; ++b)
      for (int c = -box; c <= box; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const IntVector v = to_integers({a, b, c});
        if (l.squared_length(v) >= bound) continue;
        // The box must be large enough for the oracle to be complete.
        REQUIRE(std::max({std::abs(a), std::abs(b), std::abs(c)}) < box);
        brute.push_back(v);
      }
  std::sort(brute.begin(), brute.end());
  CHECK(enumerate_short(l, bound, 1) == brute);
  CHECK(enumerate_short(l, bound, 8) == brute);
}

TEST_CASE("slope lengths") {
  const FlatLattice z3 = FlatLattice::standard(3);
  const SlopeLength one = slope_length(z3, to_integers({1, 0, 0}));
  CHECK(one.lower <= 1);
  CHECK(one.upper >= 1);
  const SlopeLength five = slope_length(z3, to_integers({3, 4, 0}));
  CHECK(five.squared == 25);
  CHECK(five.lower <= 5);
  CHECK(five.upper >= 5);
  CHECK(five.upper - five.lower < rat("1/1000000000000"));
  const SlopeLength two = length_from_squared(2);
  CHECK(two.lower * two.lower <= 2);
  CHECK(two.upper * two.upper >= 2);
  CHECK(slope_length(z3.rescaled(3), to_integers({1, 1, 0})).squared == 18);
  CHECK(slope_length(z3, to_integers({2, 2, 0})).squared == 4 * slope_length(z3, to_integers({1, 1, 0})).squared);
  CHECK_THROWS_AS(slope_length(z3, to_integers({0, 0, 0})), FlatError);
}

TEST_CASE("two pi test and its enclosure") {
  CHECK(four_pi_squared_lower() < four_pi_squared_upper());
  CHECK(four_pi_squared_upper() - four_pi_squared_lower() < rat("1/1000000000"));
  CHECK(two_pi_ok({length_from_squared(40), length_from_squared(100)}));
  CHECK_FALSE(two_pi_ok({length_from_squared(40), length_from_squared(39)}));
  CHECK_THROWS(two_pi_ok({}));
  CHECK_THROWS_AS(two_pi_ok({length_from_squared(rat("394784176044/10000000000"))}), PrecisionError);
  CHECK_THROWS_AS(two_pi_ok({length_from_squared(four_pi_squared_lower())}), PrecisionError);
}

TEST_CASE("weak balance") {
  const SlopeLength seven = length_from_squared(49);
  const SlopeLength big = length_from_squared(1000000);
  CHECK(weakly_balanced({seven, seven}, rat("1/100")));
  CHECK_FALSE(weakly_balanced({seven, big}, rat("1/100")));  // exp(3.43) < 1000
  CHECK(weakly_balanced({seven, big}, rat("1/10")));
  CHECK(weakly_balanced({big}, rat("1/1000000")));
}

TEST_CASE("cusp lattices of M") {
  const PeripheralSystem& p = system_m();
  const std::vector<long> cubes{4, 4, 4, 4, 32};
  for (std::size_t i = 0; i < 5; ++i) {
    const FlatLattice l = develop_lattice(complex_m(), p.sections[i]);
    CHECK(l.dim() == 3);
    CHECK(l.covolume() == cubes[i]);
    CHECK(abs(determinant(l.homology_to_lattice)) == 1);
    // Lengths are invariant under the sign of the slope.
    const IntVector s = slope(p.bases[i], 2, -1);
    CHECK(slope_length(l, s).squared == slope_length(l, negate(s)).squared);
  }
  const FlatLattice last = develop_lattice(complex_m(), p.sections[4]);
  CHECK(last.gram() == FlatLattice::from_basis({{4, 0, 0}, {0, 4, 0}, {0, 0, 2}}).gram());
}

TEST_CASE("flat sections of N have rotational holonomy") {
  const QuotientComplex q = quotient_complex(testing::m1011());
  const auto sections = cusp_sections(q);
  for (const CuspSection& s : sections) CHECK_THROWS_AS(develop_lattice(q, s), FlatError);
}

TEST_CASE("short slopes are stable") {
  const PeripheralSystem& p = system_m();
  for (std::size_t i = 0; i < 5; ++i) {
    const FlatLattice l = develop_lattice(complex_m(), p.sections[i]);
    const auto a = short_slopes(l, p.bases[i], 1);
    CHECK(a == short_slopes(l, p.bases[i], 8));
    CHECK(a == short_slopes(l, p.bases[i], 1));
    CHECK(std::is_sorted(a.begin(), a.end()));
    // Brute force over a box that contains every short slope.
    std::vector<std::pair<Integer, Integer>> brute;
    for (int b = -12; b <= 12; ++b)
      for (int c = -12; c <= 12; ++c)
        if (slope_length(l, l.from_homology(slope(p.bases[i], b, c))).squared < four_pi_squared_lower())
          brute.emplace_back(b, c);
    CHECK(a == brute);
  }
  const auto last = short_slopes(develop_lattice(complex_m(), p.sections[4]), p.bases[4]);
  CHECK(last.size() == 9);
}
