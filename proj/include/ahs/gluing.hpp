#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ahs/chain.hpp"
#include "ahs/polytope.hpp"

namespace ahs {

/// Identifies facet_a with facet_b through a vertex bijection. Facet and vertex indices are
/// global: copy * (facets or vertices per copy) + canonical index in the polytope.
struct Pairing {
  int facet_a = 0;
  int facet_b = 0;
  std::map<int, int> vertex_map;

  bool is_self_pairing() const { return facet_a == facet_b; }
};

struct SidePairingSpec {
  std::string polytope = "24cell";
  int copies = 1;
  std::vector<Pairing> pairings;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::string meta(const std::string& key) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class GluingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "24cell" (ideal, truncated at every vertex), "square", "cube", "tesseract".
FaceLattice polytope_by_name(const std::string& name);
bool polytope_is_ideal(const std::string& name);

SidePairingSpec parse_pairing(const std::string& text);
SidePairingSpec read_pairing_file(const std::string& path);
std::string write_pairing(const SidePairingSpec& spec);
/// Throws ParseError (line 0) describing the first violated condition.
void validate_pairing(const SidePairingSpec& spec, const FaceLattice& lattice);

/// Orbits of the (global) polytope vertices under the pairing maps, each sorted, ordered by
/// smallest member.
std::vector<std::vector<int>> vertex_cycles(const SidePairingSpec& spec);

struct OrbitMember {
  int copy = 0;
  int cell = 0;
  int sign = 1;  // orientation of this cell relative to the orbit representative
};

/// CW complex of the glued (truncated) polytope copies.
struct QuotientComplex {
  SidePairingSpec spec;
  std::shared_ptr<const CellLattice> lattice;
  int copies = 1;
  std::shared_ptr<const ChainComplex> complex;
  std::vector<std::vector<std::vector<OrbitMember>>> orbits;  // [dim][orbit] -> members
  std::vector<std::vector<std::pair<int, int>>> cell_orbit;   // [dim][copy * n + cell] -> (orbit, sign)
  std::vector<std::vector<bool>> on_boundary;                 // [dim][orbit]

  std::size_t cell_count(int k) const { return orbits.at(static_cast<std::size_t>(k)).size(); }
  /// Ideal vertex (global) under a boundary orbit, or -1.
  int cusp_vertex(int k, int orbit) const;
};

QuotientComplex quotient_complex(const SidePairingSpec& spec);

struct OrientationCharacter {
  std::vector<int> signs;             // per pairing: +1 orientation-preserving, -1 reversing
  std::vector<int> copy_orientation;  // orientation chosen for each polytope copy
  bool orientable = true;
};

OrientationCharacter orientation_character(const SidePairingSpec& spec);

/// Two-copy spec of the orientation double cover; throws GluingError when the input is
/// already orientable or has more than one copy.
SidePairingSpec double_cover(const SidePairingSpec& spec);

/// Group presentation with one generator per pairing. Letters are +-(generator + 1).
struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;

  IntMatrix relation_matrix() const;  // generators x relators exponent sums
  AbelianGroup abelianization() const;
  std::string to_string() const;
};

Presentation presentation(const SidePairingSpec& spec);

}  // namespace ahs
