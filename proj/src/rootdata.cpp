#include "amp/rootdata.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <utility>

namespace amp {

RatVec to_rational(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_rat(v[i]);
  return r;
}

bool is_integral(const RatVec& v) {
  for (const Rat& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

IntVec to_integral(const RatVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw invalid_input("to_integral: non-integral coordinate");
    if (!v[i].get_num().fits_slong_p()) throw invalid_input("to_integral: coordinate overflow");
    r[i] = v[i].get_num().get_si();
  }
  return r;
}

Rat rat_dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw consistency_error("rat_dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat rat_dot(const IntVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw consistency_error("rat_dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += to_rat(a[i]) * b[i];
  return s;
}

bool RootDatum::is_semisimple() const { return semisimple_rank() == rank; }

namespace {

constexpr std::size_t kRootCap = 10000;

// Cartan matrix for one irreducible type, entry [i][j] = <alpha_i, alpha_j-vee>.
IntMat cartan_matrix(char type, int n) {
  IntMat c(static_cast<std::size_t>(n), IntVec(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) {
      c[i][i + 1] = -1;
      c[i + 1][i] = -1;
    }
  };
  switch (type) {
    case 'A':
      chain(n);
      break;
    case 'B':  // last simple root short
      chain(n);
      c[n - 2][n - 1] = -2;
      break;
    case 'C':  // last simple root long
      chain(n);
      c[n - 1][n - 2] = -2;
      break;
    case 'D':  // fork at node n-3
      chain(n - 1);
      c[n - 3][n - 1] = -1;
      c[n - 1][n - 3] = -1;
      break;
    case 'G':
      c[0][1] = -1;
      c[1][0] = -3;
      break;
    default:
      throw invalid_input("cartan_matrix: unknown type");
  }
  return c;
}

RootDatum build_single(const std::string& token) {
  if (token.size() >= 3 && token.compare(0, 2, "GL") == 0) {
    // GL_n on the standard lattice Z^n; roots and coroots are e_i - e_{i+1}.
    if (token.size() != 3 || !std::isdigit(static_cast<unsigned char>(token[2])))
      throw invalid_input("build_root_datum: bad type token '" + token + "'");
    int n = token[2] - '0';
    if (n < 1) throw invalid_input("build_root_datum: bad rank in '" + token + "'");
    std::vector<IntVec> simples;
    for (int i = 0; i + 1 < n; ++i) {
      IntVec v(static_cast<std::size_t>(n), 0);
      v[i] = 1;
      v[i + 1] = -1;
      simples.push_back(v);
    }
    return build_root_datum(token, n, simples, simples);
  }
  if (token.size() != 2 || !std::isdigit(static_cast<unsigned char>(token[1])))
    throw invalid_input("build_root_datum: bad type token '" + token + "'");
  char type = token[0];
  int n = token[1] - '0';
  bool ok = (type == 'A' && n >= 1) || (type == 'B' && n >= 2) || (type == 'C' && n >= 2) ||
            (type == 'D' && n >= 3) || (type == 'G' && n == 2);
  if (!ok) throw invalid_input("build_root_datum: unsupported type '" + token + "'");
  // Simply connected realization: coroots are the standard basis of Z^n,
  // so the simple roots are the rows of the Cartan matrix.
  IntMat cartan = cartan_matrix(type, n);
  std::vector<IntVec> coroots;
  for (int i = 0; i < n; ++i) {
    IntVec e(static_cast<std::size_t>(n), 0);
    e[i] = 1;
    coroots.push_back(e);
  }
  return build_root_datum(token, n, cartan, coroots);
}

struct RootRec {
  IntVec root;
  IntVec coroot;
  IntVec coeff;  // coordinates in the simple-root basis
};

}  // namespace

RootDatum build_root_datum(const std::string& type_name) {
  if (type_name.empty()) throw invalid_input("build_root_datum: empty type name");
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = type_name.find('x', start);
    tokens.push_back(type_name.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  RootDatum rd = build_single(tokens[0]);
  for (std::size_t i = 1; i < tokens.size(); ++i)
    rd = product_datum(rd, build_single(tokens[i]), "");
  rd.name = type_name;
  return rd;
}

RootDatum build_root_datum(std::string name, int rank,
                           std::vector<IntVec> simple_roots,
                           std::vector<IntVec> simple_coroots) {
  if (rank < 0) throw invalid_input("build_root_datum: negative rank");
  if (simple_roots.size() != simple_coroots.size())
    throw invalid_input("build_root_datum: root/coroot count mismatch");
  std::size_t s = simple_roots.size();
  if (s > static_cast<std::size_t>(rank))
    throw invalid_input("build_root_datum: more simple roots than the rank allows");
  for (std::size_t i = 0; i < s; ++i)
    if (simple_roots[i].size() != static_cast<std::size_t>(rank) ||
        simple_coroots[i].size() != static_cast<std::size_t>(rank))
      throw invalid_input("build_root_datum: vector dimension != rank");

  IntMat cartan(s, IntVec(s, 0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) cartan[i][j] = dot(simple_roots[i], simple_coroots[j]);
  for (std::size_t i = 0; i < s; ++i) {
    if (cartan[i][i] != 2) throw invalid_input("build_root_datum: <alpha_i, alpha_i-vee> != 2");
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      if (cartan[i][j] > 0) throw invalid_input("build_root_datum: positive off-diagonal Cartan entry");
      if ((cartan[i][j] == 0) != (cartan[j][i] == 0))
        throw invalid_input("build_root_datum: Cartan zero pattern not symmetric");
    }
  }
  if (s > 0) {
    if (rational_rank(simple_roots) != static_cast<int>(s))
      throw invalid_input("build_root_datum: simple roots linearly dependent");
    if (rational_rank(simple_coroots) != static_cast<int>(s))
      throw invalid_input("build_root_datum: simple coroots linearly dependent");
  }

  RootDatum rd;
  rd.name = std::move(name);
  rd.rank = rank;
  rd.simple_roots = std::move(simple_roots);
  rd.simple_coroots = std::move(simple_coroots);
  rd.cartan = std::move(cartan);

  // Close the simple roots under all simple reflections, tracking the
  // simple-basis coefficients; a root is positive iff its coefficients are
  // all non-negative.
  std::map<IntVec, RootRec> seen;
  std::vector<IntVec> queue;
  for (std::size_t i = 0; i < s; ++i) {
    IntVec coeff(s, 0);
    coeff[i] = 1;
    RootRec rec{rd.simple_roots[i], rd.simple_coroots[i], coeff};
    seen.emplace(rec.root, rec);
    queue.push_back(rec.root);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    RootRec rec = seen.at(queue[head]);
    for (std::size_t j = 0; j < s; ++j) {
      Int p = dot(rec.root, rd.simple_coroots[j]);   // <beta, alpha_j-vee>
      Int q = dot(rd.simple_roots[j], rec.coroot);   // <alpha_j, beta-vee>
      RootRec img;
      img.root = sub(rec.root, scale(p, rd.simple_roots[j]));
      img.coroot = sub(rec.coroot, scale(q, rd.simple_coroots[j]));
      img.coeff = rec.coeff;
      img.coeff[j] -= p;
      if (seen.emplace(img.root, img).second) {
        queue.push_back(img.root);
        if (seen.size() > kRootCap)
          throw invalid_input("build_root_datum: root closure exceeds cap (not finite type?)");
      }
    }
  }

  std::vector<RootRec> positive;
  for (const auto& [root, rec] : seen) {
    bool pos = true, neg = true;
    for (Int c : rec.coeff) {
      if (c < 0) pos = false;
      if (c > 0) neg = false;
    }
    if (pos == neg) throw consistency_error("build_root_datum: mixed-sign root coefficients");
    if (dot(rec.root, rec.coroot) != 2)
      throw consistency_error("build_root_datum: <beta, beta-vee> != 2 in closure");
    if (pos) positive.push_back(rec);
  }
  if (2 * positive.size() != seen.size())
    throw consistency_error("build_root_datum: positive roots are not half of all roots");

  std::sort(positive.begin(), positive.end(), [](const RootRec& a, const RootRec& b) {
    Int ha = height(a.coeff), hb = height(b.coeff);
    if (ha != hb) return ha < hb;
    return a.coeff > b.coeff;  // among equal heights, simple-root order first
  });
  for (RootRec& rec : positive) {
    rd.positive_roots.push_back(std::move(rec.root));
    rd.positive_coroots.push_back(std::move(rec.coroot));
  }

  rd.rho.assign(static_cast<std::size_t>(rank), Rat(0));
  for (const IntVec& beta : rd.positive_roots)
    for (int k = 0; k < rank; ++k) rd.rho[k] += to_rat(beta[k], 2);
  return rd;
}

RootDatum product_datum(const RootDatum& a, const RootDatum& b, std::string name) {
  if (name.empty()) name = a.name + "x" + b.name;
  int rank = a.rank + b.rank;
  auto pad = [&](const std::vector<IntVec>& vs, bool left_block) {
    std::vector<IntVec> out;
    for (const IntVec& v : vs) {
      IntVec w(static_cast<std::size_t>(rank), 0);
      std::size_t off = left_block ? 0 : static_cast<std::size_t>(a.rank);
      for (std::size_t k = 0; k < v.size(); ++k) w[off + k] = v[k];
      out.push_back(w);
    }
    return out;
  };
  std::vector<IntVec> roots = pad(a.simple_roots, true);
  std::vector<IntVec> coroots = pad(a.simple_coroots, true);
  for (IntVec& v : pad(b.simple_roots, false)) roots.push_back(std::move(v));
  for (IntVec& v : pad(b.simple_coroots, false)) coroots.push_back(std::move(v));
  return build_root_datum(std::move(name), rank, std::move(roots), std::move(coroots));
}

std::string root_datum_to_json(const RootDatum& rd) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["name"] = rd.name;
  j["rank"] = rd.rank;
  j["simple_roots"] = rd.simple_roots;
  j["simple_coroots"] = rd.simple_coroots;
  return j.dump(2);
}

RootDatum root_datum_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    if (j.value("schema_version", 0) != 1)
      throw invalid_input("root_datum_from_json: unsupported schema_version");
    return build_root_datum(j.at("name").get<std::string>(), j.at("rank").get<int>(),
                            j.at("simple_roots").get<std::vector<IntVec>>(),
                            j.at("simple_coroots").get<std::vector<IntVec>>());
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("root_datum_from_json: ") + e.what());
  }
}

bool operator==(const WeylElement& a, const WeylElement& b) {
  return a.on_coweights == b.on_coweights;
}

namespace {

// Reflection matrices: s_i acts on X_* by y -> y - <alpha_i, y> alpha_i-vee
// and on X* by x -> x - <x, alpha_i-vee> alpha_i.
IntMat coweight_reflection(const RootDatum& rd, std::size_t i) {
  std::size_t n = static_cast<std::size_t>(rd.rank);
  IntMat m = identity_mat(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[a][b] -= rd.simple_coroots[i][a] * rd.simple_roots[i][b];
  return m;
}

IntMat weight_reflection(const RootDatum& rd, std::size_t i) {
  std::size_t n = static_cast<std::size_t>(rd.rank);
  IntMat m = identity_mat(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[a][b] -= rd.simple_roots[i][a] * rd.simple_coroots[i][b];
  return m;
}

}  // namespace

WeylGroup weyl_group(const RootDatum& rd, std::size_t cap) {
  std::size_t s = static_cast<std::size_t>(rd.semisimple_rank());
  std::size_t n = static_cast<std::size_t>(rd.rank);
  std::vector<IntMat> gen_c(s), gen_w(s);
  for (std::size_t i = 0; i < s; ++i) {
    gen_c[i] = coweight_reflection(rd, i);
    gen_w[i] = weight_reflection(rd, i);
  }

  WeylGroup wg;
  wg.elements.push_back(WeylElement{{}, identity_mat(n), identity_mat(n)});
  std::set<IntMat> seen{wg.elements[0].on_coweights};
  std::vector<std::size_t> level{0};
  std::size_t last_level_size = 1;

  while (!level.empty()) {
    // Extend each element of the current length by every generator; keep
    // the lexicographically smallest word arriving at each new matrix.
    std::map<IntMat, WeylElement> next;
    for (std::size_t idx : level) {
      const WeylElement& w = wg.elements[idx];
      for (std::size_t i = 0; i < s; ++i) {
        IntMat mc = mat_mul(w.on_coweights, gen_c[i]);
        if (seen.count(mc)) continue;
        std::vector<int> word = w.word;
        word.push_back(static_cast<int>(i));
        auto it = next.find(mc);
        if (it == next.end()) {
          WeylElement el;
          el.word = std::move(word);
          el.on_coweights = mc;
          el.on_weights = mat_mul(w.on_weights, gen_w[i]);
          next.emplace(std::move(mc), std::move(el));
        } else if (word < it->second.word) {
          it->second.word = std::move(word);
        }
      }
    }
    std::vector<WeylElement> batch;
    batch.reserve(next.size());
    for (auto& [mc, el] : next) batch.push_back(std::move(el));
    std::sort(batch.begin(), batch.end(),
              [](const WeylElement& a, const WeylElement& b) { return a.word < b.word; });
    level.clear();
    if (!batch.empty()) last_level_size = batch.size();
    for (WeylElement& el : batch) {
      seen.insert(el.on_coweights);
      level.push_back(wg.elements.size());
      wg.elements.push_back(std::move(el));
      if (wg.elements.size() > cap)
        throw invalid_input("weyl_group: order exceeds cap");
    }
  }

  if (last_level_size != 1)
    throw consistency_error("weyl_group: longest element not unique");
  wg.long_element_index = wg.elements.size() - 1;
  if (wg.long_element().length() != static_cast<int>(rd.num_positive_roots()))
    throw consistency_error("weyl_group: longest length != number of positive roots");
  return wg;
}

IntVec reflect_coweight(const RootDatum& rd, int i, const IntVec& mu) {
  Int p = dot(rd.simple_roots[static_cast<std::size_t>(i)], mu);
  return sub(mu, scale(p, rd.simple_coroots[static_cast<std::size_t>(i)]));
}

RatVec reflect_coweight(const RootDatum& rd, int i, const RatVec& mu) {
  Rat p = rat_dot(rd.simple_roots[static_cast<std::size_t>(i)], mu);
  RatVec r = mu;
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] -= p * to_rat(rd.simple_coroots[static_cast<std::size_t>(i)][k]);
  return r;
}

RatVec reflect_weight(const RootDatum& rd, int i, const RatVec& x) {
  Rat p = rat_dot(rd.simple_coroots[static_cast<std::size_t>(i)], x);
  RatVec r = x;
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] -= p * to_rat(rd.simple_roots[static_cast<std::size_t>(i)][k]);
  return r;
}

IntVec apply_to_coweight(const WeylElement& w, const IntVec& mu) {
  return mat_apply(w.on_coweights, mu);
}

RatVec apply_to_coweight(const WeylElement& w, const RatVec& mu) {
  RatVec y(w.on_coweights.size(), Rat(0));
  for (std::size_t a = 0; a < w.on_coweights.size(); ++a)
    for (std::size_t b = 0; b < mu.size(); ++b) y[a] += to_rat(w.on_coweights[a][b]) * mu[b];
  return y;
}

IntVec apply_inverse_to_weight(const WeylElement& w, const IntVec& x) {
  // <w^{-1} x, y> = <x, w y>, so w^{-1} on X* is the transpose of w on X_*.
  std::size_t n = w.on_coweights.size();
  IntVec y(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) y[a] += w.on_coweights[b][a] * x[b];
  return y;
}

Weight rho(const RootDatum& rd) { return Weight{rd.rho}; }

bool is_dominant_coweight(const RootDatum& rd, const RatVec& mu) {
  for (const IntVec& alpha : rd.simple_roots)
    if (rat_dot(alpha, mu) < 0) return false;
  return true;
}

RatVec dominant_representative(const RootDatum& rd, RatVec mu) {
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = 0; i < rd.semisimple_rank(); ++i)
      if (rat_dot(rd.simple_roots[static_cast<std::size_t>(i)], mu) < 0) {
        mu = reflect_coweight(rd, i, mu);
        moved = true;
        break;
      }
  }
  return mu;
}

Rat norm_star(const RootDatum& rd, const RatVec& mu) {
  if (mu.size() != static_cast<std::size_t>(rd.rank))
    throw invalid_input("norm_star: dimension mismatch");
  return rat_dot(rd.rho, dominant_representative(rd, mu));
}

Rat norm_star(const RootDatum& rd, const Coweight& mu) { return norm_star(rd, mu.coords); }

Rat norm_star_adjoint(const RootDatum& rd, const RatVec& mu) {
  if (mu.size() != static_cast<std::size_t>(rd.rank))
    throw invalid_input("norm_star_adjoint: dimension mismatch");
  Rat s = 0;
  for (const IntVec& alpha : rd.positive_roots) s += abs(rat_dot(alpha, mu));
  return s / 2;
}

Rat norm_star_adjoint(const RootDatum& rd, const Coweight& mu) {
  return norm_star_adjoint(rd, mu.coords);
}

std::vector<IntVec> coweights_up_to_height(const RootDatum& rd, Int h, bool dominant_only) {
  if (h < 0) throw invalid_input("coweights_up_to_height: negative height");
  std::vector<IntVec> out;
  IntVec cur(static_cast<std::size_t>(rd.rank), 0);
  // Depth-first over coordinates, budgeted by remaining L1 height.
  auto rec = [&](auto&& self, std::size_t pos, Int budget) -> void {
    if (pos == cur.size()) {
      if (!dominant_only || is_dominant_coweight(rd, to_rational(cur))) out.push_back(cur);
      return;
    }
    for (Int c = -budget; c <= budget; ++c) {
      cur[pos] = c;
      self(self, pos + 1, budget - std::abs(c));
    }
    cur[pos] = 0;
  };
  rec(rec, 0, h);
  std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
    Int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return out;
}

}  // namespace amp
