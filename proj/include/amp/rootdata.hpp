#pragma once

// Exact root-datum combinatorics: lattices X*(T) and X_*(T) with the
// canonical pairing, root systems generated from simple data, finite Weyl
// groups as matrix groups, the Weyl vector rho, and the cocharacter norm
//   |mu|* = max_{w in W} <w mu, rho>,
// together with its adjoint-weight form (half the sum of the positive
// pairings <alpha, mu> over all roots).
//
// All arithmetic is exact: lattice vectors are integer vectors, weights and
// coweights may have rational coordinates, and norms are rationals.

#include "amp/basics.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace amp {

using RatVec = std::vector<Rat>;

// Element of X*(T) tensor Q.
struct Weight {
  RatVec coords;
};

// Element of X_*(T) tensor Q.
struct Coweight {
  RatVec coords;
};

RatVec to_rational(const IntVec& v);
bool is_integral(const RatVec& v);
IntVec to_integral(const RatVec& v);  // throws invalid_input if not integral
Rat rat_dot(const RatVec& a, const RatVec& b);
Rat rat_dot(const IntVec& a, const RatVec& b);

struct RootDatum {
  std::string name;
  int rank = 0;  // rank of the (co)character lattices, i.e. dim T
  std::vector<IntVec> simple_roots;    // in X*(T)
  std::vector<IntVec> simple_coroots;  // in X_*(T)

  // Derived at construction:
  std::vector<IntVec> positive_roots;    // closure under simple reflections
  std::vector<IntVec> positive_coroots;  // positive_coroots[i] = coroot of positive_roots[i]
  IntMat cartan;                         // cartan[i][j] = <alpha_i, alpha_j-vee>
  RatVec rho;                            // half-sum of positive roots, in X*(T) tensor Q

  int semisimple_rank() const { return static_cast<int>(simple_roots.size()); }
  bool is_semisimple() const;
  std::size_t num_positive_roots() const { return positive_roots.size(); }
};

// Build from a type name: "A1".."A9", "B2".., "C2".., "D3".., "G2",
// "GL1".."GL9", and 'x'-separated products such as "A1xA1" or "A2xGL2".
RootDatum build_root_datum(const std::string& type_name);

// Build from explicit simple root/coroot vectors; validates the Cartan
// matrix and generates the (finite) root system.
RootDatum build_root_datum(std::string name, int rank,
                           std::vector<IntVec> simple_roots,
                           std::vector<IntVec> simple_coroots);

// Lattice concatenation; the Weyl group becomes the direct product.
RootDatum product_datum(const RootDatum& a, const RootDatum& b, std::string name = "");

// Versioned JSON form {"schema_version", "name", "rank", "simple_roots",
// "simple_coroots"}.
std::string root_datum_to_json(const RootDatum& rd);
RootDatum root_datum_from_json(const std::string& text);

struct WeylElement {
  std::vector<int> word;  // reduced word in simple reflections (0-based)
  IntMat on_coweights;    // matrix action on X_*(T)
  IntMat on_weights;      // contragredient action on X*(T)

  int length() const { return static_cast<int>(word.size()); }
};

bool operator==(const WeylElement& a, const WeylElement& b);

struct WeylGroup {
  std::vector<WeylElement> elements;  // ordered by length, then word lex
  std::size_t long_element_index = 0;

  std::size_t order() const { return elements.size(); }
  const WeylElement& identity() const { return elements.front(); }
  const WeylElement& long_element() const { return elements[long_element_index]; }
};

inline constexpr std::size_t kDefaultWeylCap = 1000000;

// Complete enumeration by breadth-first search over reduced words; refuses
// (with a structured error) once the element count exceeds `cap`.
WeylGroup weyl_group(const RootDatum& rd, std::size_t cap = kDefaultWeylCap);

// Simple-reflection actions.
IntVec reflect_coweight(const RootDatum& rd, int i, const IntVec& mu);
RatVec reflect_coweight(const RootDatum& rd, int i, const RatVec& mu);
RatVec reflect_weight(const RootDatum& rd, int i, const RatVec& x);
IntVec apply_to_coweight(const WeylElement& w, const IntVec& mu);
RatVec apply_to_coweight(const WeylElement& w, const RatVec& mu);
// Inverse action on weights: <w^{-1} x, y> = <x, w y>.
IntVec apply_inverse_to_weight(const WeylElement& w, const IntVec& x);

Weight rho(const RootDatum& rd);

bool is_dominant_coweight(const RootDatum& rd, const RatVec& mu);
RatVec dominant_representative(const RootDatum& rd, RatVec mu);

// |mu|* = max_w <w mu, rho> = <mu_dominant, rho>.
Rat norm_star(const RootDatum& rd, const RatVec& mu);
Rat norm_star(const RootDatum& rd, const Coweight& mu);

// Half the sum of the positive adjoint pairings <alpha, mu>, alpha running
// over all roots; agrees with norm_star on semisimple data.
Rat norm_star_adjoint(const RootDatum& rd, const RatVec& mu);
Rat norm_star_adjoint(const RootDatum& rd, const Coweight& mu);

// Enumerate integral coweights of coordinate height <= h (all of them, or
// only the dominant ones); deterministic lexicographic order.
std::vector<IntVec> coweights_up_to_height(const RootDatum& rd, Int h, bool dominant_only);

}  // namespace amp
