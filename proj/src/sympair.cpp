#include "amp/sympair.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace amp {

std::string to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::ST: return "ST";
    case ClassTag::T: return "T";
    case ClassTag::NT: return "NT";
  }
  throw consistency_error("to_string: bad classification tag");
}

namespace {

// theta acts on X_* by the stored matrix and on X* by its transpose.
IntVec theta_on_weight(const IntMat& theta, const IntVec& x) {
  std::size_t n = theta.size();
  IntVec y(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) y[a] += theta[b][a] * x[b];
  return y;
}

IntVec pullback(const IntMat& embed, const IntVec& beta) {
  std::size_t rows = embed.size(), cols = rows ? embed[0].size() : 0;
  IntVec out(cols, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j] += embed[i][j] * beta[i];
  return out;
}

IntVec sign_normalized(IntVec v) {
  v = primitive_part(std::move(v));
  for (Int x : v) {
    if (x > 0) break;
    if (x < 0) return negate(v);
  }
  return v;
}

IntMat theta_plus_identity(const IntMat& theta) {
  IntMat m = theta;
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] += 1;
  return m;
}

}  // namespace

void validate_pair(const SymmetricPair& pair) {
  std::size_t dg = static_cast<std::size_t>(pair.g.rank);
  std::size_t dh = static_cast<std::size_t>(pair.h.rank);
  if (pair.embed.size() != dg)
    throw invalid_input("validate_pair: embed must have one row per G coordinate");
  for (const IntVec& row : pair.embed)
    if (row.size() != dh) throw invalid_input("validate_pair: embed column count != rank of H");
  if (dh > 0) {
    if (rational_rank(pair.embed) != static_cast<int>(dh))
      throw invalid_input("validate_pair: embed is not injective");
    SmithForm sf = smith_normal_form(pair.embed);
    for (const BigInt& inv : sf.diagonal)
      if (inv != 0 && inv != 1)
        throw invalid_input("validate_pair: embed image is not saturated");
  }

  if (pair.theta) {
    const IntMat& theta = *pair.theta;
    if (theta.size() != dg)
      throw invalid_input("validate_pair: theta must be square of the G rank");
    for (const IntVec& row : theta)
      if (row.size() != dg) throw invalid_input("validate_pair: theta must be square of the G rank");
    if (mat_mul(theta, theta) != identity_mat(dg))
      throw invalid_input("validate_pair: theta is not an involution");
    std::set<IntVec> roots;
    for (const IntVec& beta : pair.g.positive_roots) {
      roots.insert(beta);
      roots.insert(negate(beta));
    }
    for (const IntVec& beta : roots)
      if (!roots.count(theta_on_weight(theta, beta)))
        throw invalid_input("validate_pair: theta does not permute the roots");
    if (pair.theta_embed_compatible && mat_mul(theta, pair.embed) != pair.embed)
      throw invalid_input("validate_pair: embed image is not theta-fixed");
  }

  for (const IntVec& w : pair.rep_weights)
    if (w.size() != dg) throw invalid_input("validate_pair: rep weight dimension mismatch");
}

IntVec embed_coweight(const SymmetricPair& pair, const IntVec& mu) {
  return mat_apply(pair.embed, mu);
}

RatVec embed_coweight(const SymmetricPair& pair, const RatVec& mu) {
  RatVec out(pair.embed.size(), Rat(0));
  for (std::size_t i = 0; i < pair.embed.size(); ++i)
    for (std::size_t j = 0; j < mu.size(); ++j) out[i] += to_rat(pair.embed[i][j]) * mu[j];
  return out;
}

Rat norm_star_H(const SymmetricPair& pair, const RatVec& mu) { return norm_star(pair.h, mu); }

Rat largeness_margin(const SymmetricPair& pair, const RatVec& mu) {
  return 2 * norm_star(pair.h, mu) - norm_star(pair.g, embed_coweight(pair, mu));
}

std::optional<LargenessWitness> is_H_large(const SymmetricPair& pair, Int height_cap) {
  std::size_t dh = static_cast<std::size_t>(pair.h.rank);
  if (dh == 0) return std::nullopt;

  // The margin is linear on every cone cut out by these functionals.
  std::set<IntVec> funcs;
  for (const IntVec& beta : pair.h.positive_roots) {
    IntVec f = sign_normalized(beta);
    if (!is_zero(f)) funcs.insert(f);
  }
  for (const IntVec& beta : pair.g.positive_roots) {
    IntVec f = sign_normalized(pullback(pair.embed, beta));
    if (!is_zero(f)) funcs.insert(f);
  }
  std::vector<IntVec> rows(funcs.begin(), funcs.end());

  bool cone_large = false;
  // Directions where every functional vanishes have margin exactly 0.
  std::vector<IntVec> common =
      integer_kernel(rows.empty() ? IntMat{IntVec(dh, 0)} : rows);
  if (!common.empty()) {
    cone_large = true;
  } else {
    // Extreme rays of the arrangement cones: 1-dimensional kernels of
    // (rank-1)-subsets of the functionals.
    std::size_t k = dh - 1;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (rows.size() < k)
      throw consistency_error("is_H_large: functionals span but are fewer than rank-1");
    std::size_t examined = 0;
    bool more = true;
    while (more) {
      if (++examined > 5000000)
        throw numeric_error("is_H_large: cone refinement too large; raise the brute-force cap instead");
      IntMat subset;
      for (std::size_t i : idx) subset.push_back(rows[i]);
      std::vector<IntVec> kernel =
          subset.empty() ? std::vector<IntVec>{IntVec{1}} : integer_kernel(subset);
      if (kernel.size() == 1) {
        for (const IntVec& dir : {kernel[0], negate(kernel[0])})
          if (largeness_margin(pair, to_rational(dir)) >= 0) cone_large = true;
      }
      // next k-combination of {0..rows.size()-1}
      if (k == 0) break;
      std::size_t pos = k;
      while (pos-- > 0) {
        if (idx[pos] + (k - pos) < rows.size()) {
          ++idx[pos];
          for (std::size_t j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (pos == 0) more = false;
      }
    }
  }

  // Reported witness: brute force over H-dominant coweights by increasing
  // height, maximal margin within the first height that works, then lex.
  std::optional<LargenessWitness> best;
  Int best_height = -1;
  for (const IntVec& mu : coweights_up_to_height(pair.h, height_cap, true)) {
    if (is_zero(mu)) continue;
    if (best && height(mu) > best_height) break;
    Rat margin = largeness_margin(pair, to_rational(mu));
    if (margin < 0) continue;
    if (!best || margin > best->margin) {
      RatVec rmu = to_rational(mu);
      best = LargenessWitness{mu, margin, norm_star(pair.h, rmu),
                              norm_star(pair.g, embed_coweight(pair, rmu))};
      best_height = height(mu);
    }
  }

  if (cone_large && !best)
    throw consistency_error("is_H_large: cone method reports large but no dominant witness of height <= " +
                            std::to_string(height_cap));
  if (!cone_large && best)
    throw consistency_error("is_H_large: brute force found a witness the cone method missed");
  return best;
}

int theta_split_rank(const SymmetricPair& pair) {
  if (!pair.theta) throw invalid_input("theta_split_rank: pair carries no involution");
  return static_cast<int>(integer_kernel(theta_plus_identity(*pair.theta)).size());
}

int dual_torus_rank(const SymmetricPair& pair) {
  return pair.g.rank - rational_rank(pair.embed);
}

bool rank_coherent(const SymmetricPair& pair) {
  return pair.theta && dual_torus_rank(pair) == theta_split_rank(pair);
}

Classification classify(const SymmetricPair& pair) {
  Classification c;
  c.theta_split_rank = theta_split_rank(pair);
  c.absolute_rank = pair.g.rank;

  // The Levi Z_G(A-) is a torus iff no root vanishes identically on the
  // (-1)-eigenspace of theta.
  std::vector<IntVec> minus = integer_kernel(theta_plus_identity(*pair.theta));
  c.levi_is_torus = true;
  for (const IntVec& beta : pair.g.positive_roots) {
    bool vanishes = true;
    for (const IntVec& v : minus)
      if (dot(beta, v) != 0) vanishes = false;
    if (vanishes) {
      c.levi_is_torus = false;
      break;
    }
  }

  if (c.theta_split_rank == c.absolute_rank)
    c.tag = ClassTag::ST;
  else if (c.levi_is_torus)
    c.tag = ClassTag::T;
  else
    c.tag = ClassTag::NT;
  return c;
}

namespace {

RootDatum so_datum(int m) {
  switch (m) {
    case 2:
      return build_root_datum("so2", 1, {}, {});
    case 3:
      return build_root_datum("so3", 1, {{1}}, {{2}});
    case 4:
      return build_root_datum("so4", 2, {{1, -1}, {1, 1}}, {{1, -1}, {1, 1}});
    case 5:
      return build_root_datum("so5", 2, {{1, -1}, {0, 1}}, {{1, -1}, {0, 2}});
    case 6:
      return build_root_datum("so6", 3, {{1, -1, 0}, {0, 1, -1}, {0, 1, 1}},
                              {{1, -1, 0}, {0, 1, -1}, {0, 1, 1}});
    default:
      throw invalid_input("so_datum: only so(2)..so(6) are built in");
  }
}

// Weights of the standard representation of SL_{n+1} in fundamental-weight
// coordinates: eps_1 = (1,0,...,0), eps_{i+1} = eps_i - alpha_i.
std::vector<IntVec> sl_standard_weights(const RootDatum& a_n) {
  std::vector<IntVec> eps;
  IntVec cur(static_cast<std::size_t>(a_n.rank), 0);
  cur[0] = 1;
  eps.push_back(cur);
  for (int i = 0; i < a_n.rank; ++i) {
    cur = sub(cur, a_n.cartan[static_cast<std::size_t>(i)]);
    eps.push_back(cur);
  }
  return eps;
}

std::vector<IntVec> plus_minus_basis(int rank) {
  std::vector<IntVec> out;
  for (int i = 0; i < rank; ++i) {
    IntVec e(static_cast<std::size_t>(rank), 0);
    e[i] = 1;
    out.push_back(e);
    out.push_back(negate(e));
  }
  return out;
}

SymmetricPair diagonal_pair(const std::string& label, const std::string& description, int n) {
  // G = A_{n-1} x A_{n-1}, H the diagonal copy, theta the factor swap.
  SymmetricPair p;
  p.label = label;
  p.description = description;
  std::string an = "A" + std::to_string(n - 1);
  p.g = build_root_datum(an + "x" + an);
  p.h = build_root_datum(an);
  int r = n - 1;
  p.embed.assign(static_cast<std::size_t>(2 * r), IntVec(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < r; ++i) {
    p.embed[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    p.embed[static_cast<std::size_t>(r + i)][static_cast<std::size_t>(i)] = 1;
  }
  IntMat theta(static_cast<std::size_t>(2 * r), IntVec(static_cast<std::size_t>(2 * r), 0));
  for (int i = 0; i < r; ++i) {
    theta[static_cast<std::size_t>(i)][static_cast<std::size_t>(r + i)] = 1;
    theta[static_cast<std::size_t>(r + i)][static_cast<std::size_t>(i)] = 1;
  }
  p.theta = theta;
  p.theta_embed_compatible = true;
  for (const IntVec& w : sl_standard_weights(p.h)) {
    IntVec left(static_cast<std::size_t>(2 * r), 0), right(static_cast<std::size_t>(2 * r), 0);
    for (int i = 0; i < r; ++i) {
      left[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];
      right[static_cast<std::size_t>(r + i)] = w[static_cast<std::size_t>(i)];
    }
    p.rep_weights.push_back(left);
    p.rep_weights.push_back(right);
  }
  return p;
}

SymmetricPair su_pair(int n) {
  // G = sl_{n+1}, H = s(gl_n + gl_1): the subsystem on the first n-1 simple
  // roots, sharing the full cocharacter lattice of G.
  SymmetricPair p;
  p.label = "su" + std::to_string(n) + "1";
  p.description = "SU(" + std::to_string(n) + ",1) complexified: sl" + std::to_string(n + 1) +
                  " with s(gl" + std::to_string(n) + "+gl1)";
  p.g = build_root_datum("A" + std::to_string(n));
  std::vector<IntVec> h_roots, h_coroots;
  for (int i = 0; i + 1 < n; ++i) {
    h_roots.push_back(p.g.cartan[static_cast<std::size_t>(i)]);
    IntVec e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    h_coroots.push_back(e);
  }
  p.h = build_root_datum("s(gl" + std::to_string(n) + "+gl1)", n, h_roots, h_coroots);
  p.embed = identity_mat(static_cast<std::size_t>(n));
  // Involution with split rank 1 fixing the subsystem's middle: in
  // cocharacter coordinates e_1 -> -(e_2+...+e_n), e_n -> -(e_1+...+e_{n-1}),
  // e_i -> e_i otherwise.  Written in a gauge where theta is maximally
  // split; the natural H-embedding above lives in a different gauge, so the
  // two are recorded as incompatible.
  IntMat theta(static_cast<std::size_t>(n), IntVec(static_cast<std::size_t>(n), 0));
  for (int i = 1; i + 1 < n; ++i) theta[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  for (int i = 1; i < n; ++i) theta[static_cast<std::size_t>(i)][0] = -1;
  for (int i = 0; i + 1 < n; ++i) theta[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1)] = -1;
  p.theta = theta;
  p.theta_embed_compatible = false;
  p.rep_weights = sl_standard_weights(p.g);
  return p;
}

SymmetricPair so_pair(int n) {
  // (so(n+1), so(n)); the involution negates the last coordinate of the
  // ambient lattice (for n = 2 the only coordinate).
  SymmetricPair p;
  p.label = "so" + std::to_string(n) + "1";
  p.description = "SO(" + std::to_string(n) + ",1): so(" + std::to_string(n + 1) + ") with so(" +
                  std::to_string(n) + ")";
  p.g = so_datum(n + 1);
  p.h = so_datum(n);
  std::size_t dg = static_cast<std::size_t>(p.g.rank), dh = static_cast<std::size_t>(p.h.rank);
  p.embed.assign(dg, IntVec(dh, 0));
  for (std::size_t j = 0; j < dh && j < dg; ++j) p.embed[j][j] = 1;
  IntMat theta = identity_mat(dg);
  theta[dg - 1][dg - 1] = -1;
  p.theta = theta;
  // Ranks n+1 = 2m+1 keep the H lattice inside the theta-fixed block; for
  // even so(n+1) = so(2m) the torus ranks tie (dg == dh) and the split
  // direction cannot avoid the embedded torus.
  p.theta_embed_compatible = (dh < dg);
  p.rep_weights = plus_minus_basis(p.g.rank);
  return p;
}

}  // namespace

std::vector<SymmetricPair> catalog() {
  std::vector<SymmetricPair> pairs;

  SymmetricPair mr = diagonal_pair(
      "maclachlan-reid", "SL2 x SL2 with the diagonal SL2 (Maclachlan-Reid surface setting)", 2);
  pairs.push_back(std::move(mr));

  for (int n = 2; n <= 5; ++n) pairs.push_back(su_pair(n));
  for (int n = 2; n <= 5; ++n) pairs.push_back(so_pair(n));

  pairs.push_back(diagonal_pair("sl2c", "SL2(C) as a real group: sl2 x sl2 with the diagonal", 2));
  pairs.push_back(diagonal_pair("sl3c", "SL3(C) as a real group: sl3 x sl3 with the diagonal", 3));

  {
    SymmetricPair split;
    split.label = "split-control";
    split.description = "SL2 with its maximal torus, theta = -1 (split control case)";
    split.g = build_root_datum("A1");
    split.h = build_root_datum("t1", 1, {}, {});
    split.embed = {{1}};
    split.theta = IntMat{{-1}};
    split.theta_embed_compatible = false;
    split.rep_weights = plus_minus_basis(1);
    pairs.push_back(std::move(split));
  }
  {
    SymmetricPair compact;
    compact.label = "compact-control";
    compact.description = "G = H = SL2, theta = id (compact control case)";
    compact.g = build_root_datum("A1");
    compact.h = build_root_datum("A1");
    compact.embed = {{1}};
    compact.theta = IntMat{{1}};
    compact.theta_embed_compatible = true;
    compact.rep_weights = plus_minus_basis(1);
    pairs.push_back(std::move(compact));
  }

  for (const SymmetricPair& p : pairs) validate_pair(p);
  return pairs;
}

const SymmetricPair& find_pair(const std::vector<SymmetricPair>& pairs, const std::string& label) {
  for (const SymmetricPair& p : pairs)
    if (p.label == label) return p;
  std::string known;
  for (const SymmetricPair& p : pairs) known += (known.empty() ? "" : ", ") + p.label;
  throw invalid_input("find_pair: unknown pair '" + label + "' (known: " + known + ")");
}

}  // namespace amp
