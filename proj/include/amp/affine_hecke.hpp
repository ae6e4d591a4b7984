#pragma once

// Extended affine Weyl group X_*(T) x| W: the length of t(lambda)w, the
// spherical double coset W t(lambda) W, and its cardinality
//   #(W t(lambda) W) / #W  in the q-graded sense,
// computed as an exact quotient of length generating functions in Z[q].
// For GL2 and SL2 an independent lattice/tree enumeration provides an
// oracle for the same counts.

#include "amp/basics.hpp"
#include "amp/rootdata.hpp"

#include <string>
#include <vector>

namespace amp {

// t(translation) * finite_part, the canonical form of an element of the
// extended affine Weyl group.
struct ExtendedAffineElement {
  IntVec translation;
  WeylElement finite_part;
};

// (l1,w1)(l2,w2) = (l1 + w1 l2, w1 w2); the finite part is looked up in
// `W` so its reduced word stays canonical.
ExtendedAffineElement compose(const WeylGroup& W, const ExtendedAffineElement& a,
                              const ExtendedAffineElement& b);

std::size_t weyl_index_of(const WeylGroup& W, const IntMat& on_coweights);

// l(t(lambda) w) = sum over alpha > 0 with w^{-1} alpha > 0 of |<alpha,lambda>|
//                + sum over alpha > 0 with w^{-1} alpha < 0 of |<alpha,lambda> - 1|.
Int affine_length(const RootDatum& rd, const IntVec& lambda, const WeylElement& w);
Int affine_length(const RootDatum& rd, const Coweight& lambda, const WeylElement& w);

// W t(lambda) W = {(mu, u) : mu in W lambda, u in W}, deduplicated by the
// canonical (translation, finite part) form; deterministic order.
std::vector<ExtendedAffineElement> double_coset_elements(const RootDatum& rd,
                                                         const WeylGroup& W,
                                                         const IntVec& lambda);

// Count polynomial: (sum over the double coset of q^length) divided by the
// Weyl normalization sum_{w in W} q^{l(w)}; the division is exact in Z[q].
struct HeckeCountPolynomial {
  std::vector<BigInt> coeffs;        // quotient; coeffs[k] multiplies q^k
  std::vector<BigInt> weyl_divisor;  // sum_{w in W} q^{l(w)}
};

HeckeCountPolynomial double_coset_count(const RootDatum& rd, const IntVec& lambda);

BigInt evaluate_poly(const std::vector<BigInt>& coeffs, Int q);
BigInt evaluate_count(const HeckeCountPolynomial& p, Int q);

// count(q) / q^{2|lambda|*}; exact rational, defined for q >= 2.
Rat coset_growth_ratio(const RootDatum& rd, const IntVec& lambda, Int q);

// Independent classical counts: for "GL2", Hermite normal forms of
// determinant q^n with cyclic quotient (elementary divisors (q^n, 1));
// for "SL2", vertices at distance 2n from a base vertex of the
// (q+1)-regular tree.  q prime <= 13, n <= 5.
BigInt lattice_oracle_count(const std::string& group, int n, Int q);

// Quotient of X_*(T) by the central cocharacter sublattice (the integer
// kernel of all simple roots), with the induced root datum and the maps
// into the new coordinates.
struct CentralQuotient {
  RootDatum datum;
  IntMat coweight_map;  // (new rank) x (old rank): image of a coweight
  IntMat weight_map;    // (new rank) x (old rank): image of a root-lattice weight
};

CentralQuotient quotient_by_central_torus(const RootDatum& rd);

}  // namespace amp
