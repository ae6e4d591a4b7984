#pragma once

// Shared primitives: error taxonomy, exact rational arithmetic, and the
// small pieces of integer linear algebra (kernels, Smith normal form)
// used by the lattice-level modules.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace amp {

// Error taxonomy, mapped to process exit codes by the CLI layer:
// invalid_input -> 2, consistency_error -> 3, numeric_error -> 4.
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};
struct consistency_error : std::runtime_error {
  explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

using Int = long long;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major, rows of equal length
using Rat = mpq_class;
using BigInt = mpz_class;

// gmpxx lacks long long constructors; Int is 64-bit, as is long here.
inline Rat to_rat(Int num, Int den = 1) {
  Rat r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw consistency_error("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw consistency_error("add: dimension mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw consistency_error("sub: dimension mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec scale(Int c, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline IntVec negate(const IntVec& a) { return scale(-1, a); }

inline bool is_zero(const IntVec& a) {
  for (Int x : a)
    if (x != 0) return false;
  return true;
}

// L1 norm of the coordinate vector; the "height" used for bounded searches.
inline Int height(const IntVec& a) {
  Int h = 0;
  for (Int x : a) h += (x < 0) ? -x : x;
  return h;
}

// y = M x for a rows(M) x cols(M) matrix.
inline IntVec mat_apply(const IntMat& m, const IntVec& x) {
  IntVec y(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
  return y;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, IntVec(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw consistency_error("mat_mul: dimension mismatch");
    for (std::size_t j = 0; j < k; ++j) {
      Int aij = a[i][j];
      if (aij == 0) continue;
      for (std::size_t l = 0; l < m; ++l) c[i][l] += aij * b[j][l];
    }
  }
  return c;
}

inline IntMat identity_mat(std::size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat transpose(const IntMat& m) {
  std::size_t n = m.size(), k = m.empty() ? 0 : m[0].size();
  IntMat t(k, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) t[j][i] = m[i][j];
  return t;
}

inline Int gcd_ll(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Divide out the content; leaves the zero vector unchanged.
inline IntVec primitive_part(IntVec v) {
  Int g = 0;
  for (Int x : v) g = gcd_ll(g, x);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

// Rank over Q of an integer matrix (fraction-free Gaussian elimination on
// exact rationals; matrices here are tiny).
int rational_rank(const IntMat& m);

// Exact inverse of a unimodular integer matrix; throws consistency_error
// if the matrix is not invertible over Z.
IntMat integer_inverse(const IntMat& m);

// Basis of the integer kernel {x : M x = 0}; the result is a saturated
// sublattice, returned as a list of primitive integer vectors.
std::vector<IntVec> integer_kernel(const IntMat& m);

// Smith normal form U*M*V = D with D diagonal, d_1 | d_2 | ..., U and V
// unimodular.  Diagonal entries are normalized non-negative.
struct SmithForm {
  std::vector<BigInt> diagonal;
  IntMat row_ops;  // U, rows(m) x rows(m)
  IntMat col_ops;  // V, cols(m) x cols(m)
};
SmithForm smith_normal_form(const IntMat& m);

inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace amp
