#pragma once

// The amplifier omega_S = sum_{v in S} tau(v, nu) and its bookkeeping: the
// set of places S, the L^2 normalization q^{-|mu|*} of each Hecke unit, the
// certified period lower bound q^{2|nu|*_H - |nu|*}, the support/coset/sup
// exponents of k_S = omega_S omega_S*, and the exponent budget translating
// trace-formula error exponents into a sup-norm power saving.

#include "amp/affine_hecke.hpp"
#include "amp/sympair.hpp"

#include <optional>
#include <vector>

namespace amp {

struct CongruenceClass {
  Int residue;
  Int modulus;
};

struct Place {
  Int q;  // rational prime
  std::optional<CongruenceClass> congruence;
};

// Exact power q^e with rational exponent; never silently floated.
struct QPower {
  Int base = 2;
  Rat exponent = Rat(0);
  bool exponent_integral() const { return exponent.get_den() == 1; }
  Rat exact_value() const;  // throws numeric_error unless the exponent is integral
  double approx() const;
};

// Normalizing value of tau(v, mu): q^{-|mu|*}.  Requires mu dominant.
QPower tau_normalization(const RootDatum& rd, const IntVec& mu, Int q);

struct PeriodBound {
  QPower bound;              // q^{2|nu|*_H - |embed(nu)|*} = q^{margin}
  std::optional<Rat> exact;  // exact H-side value, available for diag SL2 in SL2 x SL2
};

// Certified lower bound for the local H-period of tau(v, nu) at the
// identity; for the diagonal SL2 pairs also the exact value
// count_H(q) q^{-|embed(nu)|*}, checked against the bound.
PeriodBound period_lower_bound(const SymmetricPair& pair, const IntVec& nu, Int q);

// All primes q in [P/2, P), optionally restricted to q = a (mod m),
// ascending.  An empty result is not an error.
std::vector<Place> choose_places(Int P, std::optional<CongruenceClass> cond = std::nullopt);

struct AmplifierPlan {
  SymmetricPair pair;
  IntVec nu;  // witness cocharacter in X_*(T_H)
  Int P = 0;
  std::vector<Place> S;
  Rat norm_nu;             // |embed(nu)|* in G
  Rat norm_nu_H;           // |nu|*_H
  Rat support_exponent_B;  // |g|_S <= P^B on supp k_S: max_omega |<omega, embed(nu)>|
  Rat coset_exponent_C;    // # supp(k_S)/K_S <= P^C: C = 4|nu|* + 2
  // |k_S|_inf <= sup_bound_constant * P^sup_bound_exponent: the off-diagonal
  // terms of k_S have disjoint supports and sup <= 1, the <= P diagonal terms
  // are each bounded by the growth-ratio cap of the group.
  Rat sup_bound_constant;
  Int sup_bound_exponent = 1;
  Rat k_S_at_identity;  // k_S(1) = sum_{v in S} |tau(v,nu)|_2^2, exact
  bool degenerate = false;  // S empty
};

// Assemble the plan for a witness cocharacter nu (margin >= 0 required) and
// the weight multiset of a faithful representation of G.
AmplifierPlan build_amplifier(const SymmetricPair& pair, const IntVec& nu, Int P,
                              const std::vector<IntVec>& rep_weights);

struct ExponentBudget {
  // Inputs: error exponents of the two trace formulas, treated as parameters.
  Rat A, B, delta0, eta, epsilon;
  // Outputs: run the amplifier at length P = ((1+|xi|)N)^c to save delta.
  Rat c;      // delta0 / (2A), so that P^A (N(1+|xi|))^{-delta0} <= 1
  Rat delta;  // c (1 - epsilon) / 2
  bool grid_certified = false;  // numeric check over N(1+|xi|) in [1e3, 1e9]
  double worst_error_factor = 0.0;
};

// Solve the two linear constraints c A <= delta0/2, delta = c(1-epsilon)/2
// exactly and certify them numerically on a grid: the modeled error factor
// P^A N^{-delta0} (1+|xi|)^{-delta0} must stay <= 1/2 and the modeled
// gain P^{1-epsilon} must reach ((1+|xi|)N)^{2 delta}.
ExponentBudget exponent_budget(const Rat& A, const Rat& B, const Rat& delta0, const Rat& eta,
                               const Rat& epsilon = to_rat(1, 8));

}  // namespace amp
