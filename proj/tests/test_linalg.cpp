#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "ahs/linalg.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ahs;

namespace {

bool is_unimodular(const IntMatrix& m) { return abs(determinant(m)) == 1; }

}  // namespace

TEST_CASE("snf of the identity is trivial") {
  const SNFDecomposition s = snf(IntMatrix::identity(3));
  CHECK(s.D == IntMatrix::identity(3));
  CHECK(s.U == IntMatrix::identity(3));
  CHECK(s.V == IntMatrix::identity(3));
}

TEST_CASE("snf of a 2x2 example matches hand reduction") {
  const IntMatrix a{{2, 4}, {6, 8}};
  const SNFDecomposition s = snf(a);
  CHECK(s.diagonal() == to_integers({2, 4}));
  CHECK(s.U * a * s.V == s.D);
}

TEST_CASE("snf on random matrices agrees with the minors oracle") {
  std::mt19937 rng(20261015);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    const IntMatrix a = testing::random_matrix(rng, r, c, 9);
    const SNFDecomposition s = snf(a);
    REQUIRE(s.U * a * s.V == s.D);
    REQUIRE(is_unimodular(s.U));
    REQUIRE(is_unimodular(s.V));
    const IntVector d = s.diagonal();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) REQUIRE(s.D(i, j) == 0);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      REQUIRE(d[i] >= 0);
      if (d[i] == 0) REQUIRE(d[i + 1] == 0);
      else REQUIRE(d[i + 1] % d[i] == 0);
    }
    if (r <= 4 && c <= 4) {
      std::vector<Integer> nonzero;
      for (const Integer& x : d)
        if (x != 0) nonzero.push_back(x);
      REQUIRE(nonzero == testing::minors_oracle(a));
    }
  }
}

TEST_CASE("snf is deterministic") {
  std::mt19937 rng(7);
  const IntMatrix a = testing::random_matrix(rng, 5, 4, 9);
  const SNFDecomposition s1 = snf(a), s2 = snf(a);
  CHECK(s1.U == s2.U);
  CHECK(s1.V == s2.V);
}

TEST_CASE("cokernel examples") {
  CHECK(cokernel(IntMatrix{{2}}).to_string() == "Z_2");
  CHECK(cokernel(IntMatrix(5, 0)) == AbelianGroup::free(5));
  CHECK(cokernel(IntMatrix(5, 3)) == AbelianGroup::free(5));
  // A rank-2 saturated sublattice of Z^3 has quotient Z.
  CHECK(cokernel(IntMatrix{{1, 0}, {0, 1}, {0, 0}}) == AbelianGroup::free(1));
  CHECK(cokernel(IntMatrix{{2, 0}, {0, 3}}).to_string() == "Z_6");
  CHECK(cokernel(IntMatrix{{2, 0, 0}, {0, 4, 0}, {0, 0, 0}}).to_string() == "Z + Z_2 + Z_4");
}

TEST_CASE("cokernel is invariant under unimodular changes of basis") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix a = testing::random_matrix(rng, 4, 3, 6);
    const IntMatrix u = testing::random_unimodular(rng, 4), v = testing::random_unimodular(rng, 3);
    CHECK(cokernel(u * a * v) == cokernel(a));
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(IntMatrix{{1, 0, 0}}).cols() == 2);
  CHECK(kernel_basis(IntMatrix{{2, 1}, {1, 1}}).cols() == 0);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix a = testing::random_matrix(rng, 2, 5, 5);
    const IntMatrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == 5 - snf(a).rank());
    // Saturated: the kernel lattice is a direct summand.
    if (k.cols() > 0) CHECK(cokernel(k).is_free());
    CHECK(kernel_basis(a) == k);
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(to_integers({1, 5, -7})));
  CHECK(is_primitive(to_integers({2, 3, 0})));
  CHECK_FALSE(is_primitive(to_integers({0, 0, 0})));
  CHECK_FALSE(is_primitive(to_integers({2, 4, 6})));
  for (int b = -5; b <= 5; ++b)
    for (int c = -5; c <= 5; ++c) CHECK(is_primitive(to_integers({1, b, c})));
}

TEST_CASE("complete to basis") {
  CHECK(complete_to_basis(to_integers({1, 0, 0})) == IntMatrix::identity(3));
  const IntVector v = to_integers({2, 3, 0});
  const IntMatrix m = complete_to_basis(v);
  CHECK(abs(determinant(m)) == 1);
  CHECK(m.column(0) == v);
  for (int b = -4; b <= 4; ++b)
    for (int c = -4; c <= 4; ++c) {
      const IntVector w = to_integers({1, b, c});
      const IntMatrix n = complete_to_basis(w);
      CHECK(n.column(0) == w);
      CHECK(abs(determinant(n)) == 1);
    }
  CHECK_THROWS(complete_to_basis(to_integers({2, 4, 6})));
}

TEST_CASE("generates") {
  std::vector<IntVector> basis;
  for (int i = 0; i < 5; ++i) {
    IntVector e(5, 0);
    e[static_cast<std::size_t>(i)] = 1;
    basis.push_back(e);
  }
  CHECK(generates(basis, 5));
  basis[0][0] = 2;
  CHECK_FALSE(generates(basis, 5));
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix a = testing::random_matrix(rng, 3, 3, 2);
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < 3; ++j) cols.push_back(a.column(j));
    CHECK(generates(cols, 3) == cokernel(a).is_trivial());
  }
}

TEST_CASE("hermite form is canonical for the row lattice") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix a = testing::random_matrix(rng, 4, 3, 7);
    const HermiteDecomposition h = hermite(a);
    CHECK(h.W * a == h.H);
    CHECK(is_unimodular(h.W));
    CHECK(hermite(testing::random_unimodular(rng, 4) * a).H == h.H);
  }
}

TEST_CASE("abelian group formatting") {
  CHECK(AbelianGroup{}.to_string() == "0");
  CHECK(AbelianGroup::free(1).to_string() == "Z");
  CHECK(AbelianGroup::free(5).to_string() == "Z^5");
  CHECK(cokernel(IntMatrix{{2, 0}, {0, 2}}).to_string() == "Z_2^2");
}
