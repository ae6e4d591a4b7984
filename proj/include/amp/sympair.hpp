#pragma once

// Symmetric pairs (G, H) given by explicit root data, a lattice embedding
// X_*(T_H) -> X_*(T), and (where meaningful) an involution theta of X_*(T).
// Provides the restricted norm |mu|*_H, the H-large decision
//   exists mu != 0 with 2|mu|*_H >= |embed(mu)|*,
// decided exactly on the piecewise-linearity cones and cross-checked by a
// bounded brute-force search, plus the theta-split rank and the
// ST / T / NT classification.

#include "amp/basics.hpp"
#include "amp/rootdata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace amp {

enum class ClassTag { ST, T, NT };
std::string to_string(ClassTag tag);

struct SymmetricPair {
  std::string label;
  std::string description;
  RootDatum g;
  RootDatum h;
  IntMat embed;                  // g.rank x h.rank, columns = images of the basis
  std::optional<IntMat> theta;   // involution on X_*(T), g.rank x g.rank
  // The catalog fixes one torus coordinate per entry; for some entries the
  // natural embedding and the maximally split involution cannot share that
  // coordinate, in which case the flag is false and the eigenlattice
  // constraints tied to the embedding are not asserted.
  bool theta_embed_compatible = false;
  std::vector<IntVec> rep_weights;  // weights of the distinguishing representation of G
};

// Structural checks: embed injective with saturated image, theta an
// involution permuting the roots, compatibility when flagged.
void validate_pair(const SymmetricPair& pair);

IntVec embed_coweight(const SymmetricPair& pair, const IntVec& mu);
RatVec embed_coweight(const SymmetricPair& pair, const RatVec& mu);

// |mu|*_H = max_{w in W_H} <w mu, rho_H>.
Rat norm_star_H(const SymmetricPair& pair, const RatVec& mu);

// 2|mu|*_H - |embed(mu)|*; a witness is a nonzero mu with margin >= 0.
Rat largeness_margin(const SymmetricPair& pair, const RatVec& mu);

struct LargenessWitness {
  IntVec mu;   // in X_*(T_H), H-dominant, minimal height, then maximal margin
  Rat margin;
  Rat norm_h;  // |mu|*_H
  Rat norm_g;  // |embed(mu)|*
};

// Exact decision: the margin is piecewise linear and homogeneous, linear on
// every cone of the hyperplane arrangement cut by the H-roots and the
// pulled-back G-roots, so it is somewhere non-negative iff it is so on a
// kernel ray of some (rank-1)-subset of those functionals.  The returned
// witness is re-derived by brute force over H-dominant coweights of height
// <= height_cap (the two methods must agree, else consistency_error).
std::optional<LargenessWitness> is_H_large(const SymmetricPair& pair, Int height_cap = 6);

// Rank of the (-1)-eigenlattice of theta.
int theta_split_rank(const SymmetricPair& pair);

// Rank of X_*(T)/embed(X_*(T_H)).
int dual_torus_rank(const SymmetricPair& pair);

// Whether dual_torus_rank matches theta_split_rank; meaningful only when
// the pair's embedding and involution live in one coordinate (flagged).
bool rank_coherent(const SymmetricPair& pair);

struct Classification {
  ClassTag tag = ClassTag::NT;
  int theta_split_rank = 0;
  int absolute_rank = 0;
  bool levi_is_torus = false;
};

// ST if the split rank is full; else T when no root of G vanishes
// identically on the (-1)-eigenspace (the centralizer Levi is a torus);
// else NT.
Classification classify(const SymmetricPair& pair);

// Built-in pairs: maclachlan-reid; su21..su51; so21..so51; sl2c, sl3c;
// split-control; compact-control.
std::vector<SymmetricPair> catalog();
const SymmetricPair& find_pair(const std::vector<SymmetricPair>& pairs, const std::string& label);

}  // namespace amp
