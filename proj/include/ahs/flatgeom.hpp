#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ahs/peripheral.hpp"

namespace ahs {

class FlatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A comparison whose certified enclosure could not decide the outcome.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RationalMatrix = std::vector<std::vector<Rational>>;  // row-major

/// Translation lattice of a flat torus. Columns of basis generate it; lengths are measured
/// after multiplying by scale.
struct FlatLattice {
  RationalMatrix basis;
  Rational scale = 1;
  /// Columns: lattice coordinates of the section's canonical H_1 generators (empty when the
  /// lattice was not developed from a section).
  IntMatrix homology_to_lattice;

  static FlatLattice from_basis(RationalMatrix basis, Rational scale = 1);
  static FlatLattice standard(std::size_t n);

  std::size_t dim() const { return basis.size(); }
  RationalMatrix gram() const;  // B^T B, without scale
  Rational covolume() const;    // |det B| * scale^n
  /// scale^2 v^T G v for lattice coordinates v.
  Rational squared_length(const IntVector& v) const;
  IntVector from_homology(const IntVector& h) const;
  FlatLattice rescaled(const Rational& s) const;
  /// One basis column per line, entries as exact rationals.
  std::string dump() const;
};

/// Develops the unit cubes of a torus section in R^n. Throws FlatError if some holonomy has
/// a rotational part.
FlatLattice develop_lattice(const QuotientComplex& q, const CuspSection& section, const Rational& scale = 1);
/// Same for a closed complex glued from unit squares, cubes or tesseracts.
FlatLattice develop_lattice(const QuotientComplex& q, const Rational& scale = 1);

struct SlopeLength {
  Rational squared;
  Rational lower;  // lower <= length <= upper, width below 1e-12
  Rational upper;
};

SlopeLength length_from_squared(const Rational& squared);
/// Throws FlatError for the zero vector.
SlopeLength slope_length(const FlatLattice& l, const IntVector& v);

/// All nonzero v with squared_length(v) < bound, lexicographically sorted.
std::vector<IntVector> enumerate_short(const FlatLattice& l, const Rational& bound, unsigned threads = 1);

/// Closed rational enclosure of 4 pi^2.
Rational four_pi_squared_lower();
Rational four_pi_squared_upper();

/// True iff every length is at least 2 pi. Throws PrecisionError inside the enclosure.
bool two_pi_ok(const std::vector<SlopeLength>& lengths);

/// max length <= exp(c * (min length)^3), decided with directed rounding.
bool weakly_balanced(const std::vector<SlopeLength>& lengths, const Rational& c);

}  // namespace ahs

namespace ahs {

/// Adapted-slope coefficients (b, c) whose slope is shorter than 2 pi, sorted. Throws
/// PrecisionError when some candidate falls inside the 4 pi^2 enclosure.
std::vector<std::pair<Integer, Integer>> short_slopes(const FlatLattice& l, const AdaptedBasis& basis, unsigned threads = 1);

}  // namespace ahs
