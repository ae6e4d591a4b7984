#include "amp/affine_hecke.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace amp {

std::size_t weyl_index_of(const WeylGroup& W, const IntMat& on_coweights) {
  for (std::size_t i = 0; i < W.elements.size(); ++i)
    if (W.elements[i].on_coweights == on_coweights) return i;
  throw consistency_error("weyl_index_of: matrix is not a group element");
}

ExtendedAffineElement compose(const WeylGroup& W, const ExtendedAffineElement& a,
                              const ExtendedAffineElement& b) {
  ExtendedAffineElement c;
  c.translation = add(a.translation, apply_to_coweight(a.finite_part, b.translation));
  IntMat prod = mat_mul(a.finite_part.on_coweights, b.finite_part.on_coweights);
  c.finite_part = W.elements[weyl_index_of(W, prod)];
  return c;
}

Int affine_length(const RootDatum& rd, const IntVec& lambda, const WeylElement& w) {
  if (lambda.size() != static_cast<std::size_t>(rd.rank))
    throw invalid_input("affine_length: translation dimension mismatch");
  Int total = 0;
  for (const IntVec& alpha : rd.positive_roots) {
    Int pairing = dot(alpha, lambda);
    IntVec pre = apply_inverse_to_weight(w, alpha);  // alpha in w Delta+ iff w^{-1} alpha > 0
    bool positive = std::find(rd.positive_roots.begin(), rd.positive_roots.end(), pre) !=
                    rd.positive_roots.end();
    total += positive ? std::llabs(pairing) : std::llabs(pairing - 1);
  }
  return total;
}

Int affine_length(const RootDatum& rd, const Coweight& lambda, const WeylElement& w) {
  if (!is_integral(lambda.coords))
    throw invalid_input("affine_length: non-integral translation");
  return affine_length(rd, to_integral(lambda.coords), w);
}

std::vector<ExtendedAffineElement> double_coset_elements(const RootDatum& rd,
                                                         const WeylGroup& W,
                                                         const IntVec& lambda) {
  // w1 t(lambda) w2 = t(w1 lambda) (w1 w2); as w2 runs over W so does w1 w2,
  // hence the coset is exactly (orbit of lambda) x W.
  std::set<IntVec> orbit;
  for (const WeylElement& w : W.elements) orbit.insert(apply_to_coweight(w, lambda));
  std::vector<ExtendedAffineElement> out;
  out.reserve(orbit.size() * W.order());
  for (const IntVec& mu : orbit)
    for (const WeylElement& u : W.elements) out.push_back(ExtendedAffineElement{mu, u});
  return out;
}

namespace {

// Exact division num / den in Z[q]; throws if the remainder is nonzero.
std::vector<BigInt> exact_poly_div(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  while (!num.empty() && num.back() == 0) num.pop_back();
  std::vector<BigInt> d = den;
  while (!d.empty() && d.back() == 0) d.pop_back();
  if (d.empty()) throw consistency_error("exact_poly_div: zero divisor");
  if (num.empty()) return {BigInt(0)};
  if (num.size() < d.size())
    throw consistency_error("exact_poly_div: degree of numerator below divisor");
  std::vector<BigInt> quot(num.size() - d.size() + 1, BigInt(0));
  for (std::size_t k = quot.size(); k-- > 0;) {
    BigInt lead = num[k + d.size() - 1];
    if (lead % d.back() != 0) throw consistency_error("exact_poly_div: inexact division");
    BigInt c = lead / d.back();
    quot[k] = c;
    for (std::size_t j = 0; j < d.size(); ++j) num[k + j] -= c * d[j];
  }
  for (const BigInt& r : num)
    if (r != 0) throw consistency_error("exact_poly_div: nonzero remainder");
  return quot;
}

}  // namespace

HeckeCountPolynomial double_coset_count(const RootDatum& rd, const IntVec& lambda) {
  if (lambda.size() != static_cast<std::size_t>(rd.rank))
    throw invalid_input("double_coset_count: translation dimension mismatch");
  WeylGroup W = weyl_group(rd);

  HeckeCountPolynomial out;
  out.weyl_divisor.assign(static_cast<std::size_t>(W.long_element().length()) + 1, BigInt(0));
  for (const WeylElement& w : W.elements) out.weyl_divisor[static_cast<std::size_t>(w.length())] += 1;

  std::vector<BigInt> numerator;
  for (const ExtendedAffineElement& g : double_coset_elements(rd, W, lambda)) {
    std::size_t l = static_cast<std::size_t>(affine_length(rd, g.translation, g.finite_part));
    if (numerator.size() <= l) numerator.resize(l + 1, BigInt(0));
    numerator[l] += 1;
  }

  out.coeffs = exact_poly_div(std::move(numerator), out.weyl_divisor);
  for (const BigInt& c : out.coeffs)
    if (c < 0) throw consistency_error("double_coset_count: negative coefficient");
  return out;
}

BigInt evaluate_poly(const std::vector<BigInt>& coeffs, Int q) {
  BigInt value = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) value = value * static_cast<long>(q) + coeffs[k];
  return value;
}

BigInt evaluate_count(const HeckeCountPolynomial& p, Int q) { return evaluate_poly(p.coeffs, q); }

Rat coset_growth_ratio(const RootDatum& rd, const IntVec& lambda, Int q) {
  if (q < 2) throw invalid_input("coset_growth_ratio: q must be >= 2");
  HeckeCountPolynomial p = double_coset_count(rd, lambda);
  Rat two_norm = 2 * norm_star(rd, to_rational(lambda));
  if (two_norm.get_den() != 1)
    throw consistency_error("coset_growth_ratio: 2|lambda|* not an integer");
  unsigned long e = static_cast<unsigned long>(two_norm.get_num().get_ui());
  BigInt denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(q), e);
  Rat ratio(evaluate_count(p, q), denom);
  ratio.canonicalize();
  return ratio;
}

namespace {

bool is_small_prime(Int q) {
  if (q < 2) return false;
  for (Int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

BigInt lattice_oracle_count(const std::string& group, int n, Int q) {
  if (group != "GL2" && group != "SL2")
    throw invalid_input("lattice_oracle_count: unsupported group '" + group + "'");
  if (!is_small_prime(q) || q > 13) throw invalid_input("lattice_oracle_count: q must be a prime <= 13");
  if (n < 0 || n > 5) throw invalid_input("lattice_oracle_count: n out of range [0,5]");

  if (group == "GL2") {
    // Upper triangular Hermite normal forms [[a,b],[0,d]], ad = q^n,
    // 0 <= b < d, with cyclic quotient Z^2/L, i.e. gcd(a,b,d) = 1.
    BigInt count = 0;
    for (int i = 0; i <= n; ++i) {
      Int a = 1, d = 1;
      for (int k = 0; k < i; ++k) a *= q;
      for (int k = 0; k < n - i; ++k) d *= q;
      for (Int b = 0; b < d; ++b)
        if (gcd_ll(gcd_ll(a, b), d) == 1) count += 1;
    }
    if (n == 0) count = 1;  // the single trivial lattice, loop above already yields 1
    return count;
  }

  // SL2: sphere sizes in the (q+1)-regular tree; each vertex past the root
  // has q forward neighbours.
  if (n == 0) return 1;
  BigInt level = static_cast<long>(q + 1);
  for (int depth = 2; depth <= 2 * n; ++depth) level *= static_cast<long>(q);
  return level;
}

CentralQuotient quotient_by_central_torus(const RootDatum& rd) {
  std::size_t d = static_cast<std::size_t>(rd.rank);
  // Central cocharacters: the integer kernel of every simple root (for a
  // torus that is all of X_*).
  IntMat pairing = rd.simple_roots.empty() ? IntMat{IntVec(d, 0)} : rd.simple_roots;
  std::vector<IntVec> kernel = integer_kernel(pairing);
  std::size_t r = kernel.size();

  CentralQuotient out;
  if (r == 0) {  // already semisimple: identity quotient
    out.datum = rd;
    out.coweight_map = identity_mat(d);
    out.weight_map = identity_mat(d);
    return out;
  }

  // Change basis so the kernel lattice becomes the first r coordinates:
  // with B the matrix of kernel columns, U B V = [I_r; 0] for unimodular U
  // (all invariant factors are 1 because the kernel is saturated).
  IntMat b(d, IntVec(r, 0));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < d; ++i) b[i][j] = kernel[j][i];
  SmithForm sf = smith_normal_form(b);
  for (const BigInt& inv : sf.diagonal)
    if (inv != 1) throw consistency_error("quotient_by_central_torus: kernel not saturated");

  std::size_t s = d - r;
  const IntMat& u = sf.row_ops;
  IntMat uinv = integer_inverse(u);

  // Coweight image: the last s coordinates of U y.
  out.coweight_map.assign(s, IntVec(d, 0));
  for (std::size_t i = 0; i < s; ++i) out.coweight_map[i] = u[r + i];
  // Weight image: <x, column r+j of U^{-1}>; the first r columns of U^{-1}
  // span the kernel, which every root annihilates.
  out.weight_map.assign(s, IntVec(d, 0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < d; ++j) out.weight_map[i][j] = uinv[j][r + i];

  std::vector<IntVec> new_roots, new_coroots;
  for (const IntVec& alpha : rd.simple_roots) {
    for (const IntVec& z : kernel)
      if (dot(alpha, z) != 0)
        throw consistency_error("quotient_by_central_torus: root does not kill the center");
    new_roots.push_back(mat_apply(out.weight_map, alpha));
  }
  for (const IntVec& av : rd.simple_coroots) new_coroots.push_back(mat_apply(out.coweight_map, av));

  out.datum = build_root_datum(rd.name + "/center", static_cast<int>(s), new_roots, new_coroots);
  return out;
}

}  // namespace amp
