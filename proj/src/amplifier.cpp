#include "amp/amplifier.hpp"

#include <algorithm>
#include <cmath>

namespace amp {

namespace {

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

BigInt big_pow(Int base, Int exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return out;
}

// Largest ratio count(q)/q^{2|lambda|*} over q >= 2 is attained at q = 2:
// sum over the Weyl group of 2^{l(w) - N}.
Rat growth_ratio_cap(const RootDatum& rd) {
  WeylGroup w = weyl_group(rd);
  BigInt num = 0;
  for (const WeylElement& e : w.elements) num += big_pow(2, e.length());
  Rat cap(num, big_pow(2, static_cast<Int>(rd.num_positive_roots())));
  cap.canonicalize();
  return cap;
}

}  // namespace

Rat QPower::exact_value() const {
  if (!exponent_integral())
    throw numeric_error("QPower: exponent " + rat_to_string(exponent) +
                        " is not integral; no exact rational value");
  Int e = static_cast<Int>(exponent.get_num().get_si());
  if (e >= 0) return Rat(big_pow(base, e));
  Rat out(BigInt(1), big_pow(base, -e));
  out.canonicalize();
  return out;
}

double QPower::approx() const {
  return std::pow(static_cast<double>(base), exponent.get_d());
}

QPower tau_normalization(const RootDatum& rd, const IntVec& mu, Int q) {
  if (q < 2) throw invalid_input("tau_normalization: q must be at least 2");
  if (!is_dominant_coweight(rd, to_rational(mu)))
    throw invalid_input("tau_normalization: mu must be dominant");
  return QPower{q, -norm_star(rd, to_rational(mu))};
}

PeriodBound period_lower_bound(const SymmetricPair& pair, const IntVec& nu, Int q) {
  if (q < 2) throw invalid_input("period_lower_bound: q must be at least 2");
  if (nu.size() != static_cast<std::size_t>(pair.h.rank))
    throw invalid_input("period_lower_bound: nu has wrong rank");
  if (is_zero(nu)) throw invalid_input("period_lower_bound: nu must be nonzero");

  Rat margin = largeness_margin(pair, to_rational(nu));
  PeriodBound out;
  out.bound = QPower{q, margin};

  // For the diagonal SL2 pairs the H-side double coset count is exact.
  if (pair.g.name == "A1xA1" && pair.h.name == "A1" && pair.embed == IntMat{{1}, {1}}) {
    BigInt count_h = evaluate_count(double_coset_count(pair.h, nu), q);
    QPower norm_factor{q, -norm_star(pair.g, to_rational(embed_coweight(pair, nu)))};
    Rat exact = Rat(count_h) * norm_factor.exact_value();
    exact.canonicalize();
    if (out.bound.exponent_integral() && exact < out.bound.exact_value())
      throw consistency_error("period_lower_bound: exact value fell below the certified bound");
    out.exact = exact;
  }
  return out;
}

std::vector<Place> choose_places(Int P, std::optional<CongruenceClass> cond) {
  if (P < 3) throw invalid_input("choose_places: P must be at least 3");
  if (cond) {
    if (cond->modulus < 1) throw invalid_input("choose_places: modulus must be positive");
    cond->residue = ((cond->residue % cond->modulus) + cond->modulus) % cond->modulus;
  }
  std::vector<Place> out;
  for (Int q = (P + 1) / 2; q < P; ++q) {
    if (!is_prime(q)) continue;
    if (cond && q % cond->modulus != cond->residue) continue;
    out.push_back(Place{q, cond});
  }
  return out;
}

AmplifierPlan build_amplifier(const SymmetricPair& pair, const IntVec& nu, Int P,
                              const std::vector<IntVec>& rep_weights) {
  if (nu.size() != static_cast<std::size_t>(pair.h.rank))
    throw invalid_input("build_amplifier: nu has wrong rank");
  if (is_zero(nu)) throw invalid_input("build_amplifier: nu must be nonzero");
  if (P < 2) throw invalid_input("build_amplifier: P must be at least 2");
  if (rep_weights.empty())
    throw invalid_input("build_amplifier: a faithful representation needs at least one weight");

  AmplifierPlan plan;
  plan.pair = pair;
  plan.nu = nu;
  plan.P = P;
  plan.norm_nu_H = norm_star(pair.h, to_rational(nu));
  IntVec enu = embed_coweight(pair, nu);
  plan.norm_nu = norm_star(pair.g, to_rational(enu));
  if (2 * plan.norm_nu_H < plan.norm_nu)
    throw invalid_input("build_amplifier: nu is not a largeness witness (negative margin)");

  plan.S = P >= 3 ? choose_places(P) : std::vector<Place>{};
  plan.degenerate = plan.S.empty();

  Int b = 0;
  for (const IntVec& omega : rep_weights) {
    if (omega.size() != static_cast<std::size_t>(pair.g.rank))
      throw invalid_input("build_amplifier: rep weight has wrong rank");
    b = std::max(b, std::abs(dot(omega, enu)));
  }
  plan.support_exponent_B = to_rat(b);
  plan.coset_exponent_C = 4 * plan.norm_nu + 2;
  plan.sup_bound_constant = growth_ratio_cap(pair.g);
  plan.sup_bound_exponent = 1;

  plan.k_S_at_identity = Rat(0);
  for (const Place& v : plan.S) plan.k_S_at_identity += coset_growth_ratio(pair.g, enu, v.q);
  plan.k_S_at_identity.canonicalize();
  return plan;
}

ExponentBudget exponent_budget(const Rat& A, const Rat& B, const Rat& delta0, const Rat& eta,
                               const Rat& epsilon) {
  if (delta0 <= 0) throw invalid_input("exponent_budget: infeasible, delta0 must be positive");
  if (A <= 0 || B <= 0 || eta <= 0)
    throw invalid_input("exponent_budget: error exponents must be positive");
  if (epsilon <= 0 || epsilon > to_rat(1, 4))
    throw invalid_input("exponent_budget: epsilon must lie in (0, 1/4]");

  ExponentBudget out;
  out.A = A;
  out.B = B;
  out.delta0 = delta0;
  out.eta = eta;
  out.epsilon = epsilon;
  out.c = delta0 / (2 * A);
  out.c.canonicalize();
  out.delta = out.c * (1 - epsilon) / 2;
  out.delta.canonicalize();

  // Numeric certificate on a log grid of (N, 1+|xi|) with product in
  // [1e3, 1e9]: with P = ((1+|xi|)N)^c the error factor must stay below 1/2
  // and the modeled gain P^{1-eps} must reach ((1+|xi|)N)^{2 delta}.
  out.grid_certified = true;
  out.worst_error_factor = 0.0;
  double dc = out.c.get_d(), dd0 = delta0.get_d(), dA = A.get_d(), deps = epsilon.get_d(),
         ddelta = out.delta.get_d();
  for (double ln_n = 0.0; ln_n <= std::log(1e9) + 1e-9; ln_n += std::log(10.0) / 2) {
    for (double ln_x = 0.0; ln_x <= std::log(1e6) + 1e-9; ln_x += std::log(10.0) / 2) {
      double ln_prod = ln_n + ln_x;
      if (ln_prod < std::log(1e3) - 1e-9 || ln_prod > std::log(1e9) + 1e-9) continue;
      double ln_p = dc * ln_prod;
      double err = std::exp(dA * ln_p - dd0 * ln_n - dd0 * ln_x);
      out.worst_error_factor = std::max(out.worst_error_factor, err);
      if (err > 0.5) out.grid_certified = false;
      double gain = (1 - deps) * ln_p;
      if (gain < 2 * ddelta * ln_prod - 1e-9) out.grid_certified = false;
    }
  }
  return out;
}

}  // namespace amp
