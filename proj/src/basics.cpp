#include "amp/basics.hpp"

#include <algorithm>
#include <cstdlib>

namespace amp {

namespace {

using BigMat = std::vector<std::vector<BigInt>>;

BigMat to_big(const IntMat& m) {
  BigMat b(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    b[i].reserve(m[i].size());
    for (Int x : m[i]) b[i].emplace_back(static_cast<long>(x));
  }
  return b;
}

IntMat from_big(const BigMat& b) {
  IntMat m(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    m[i].reserve(b[i].size());
    for (const BigInt& x : b[i]) {
      if (!x.fits_slong_p())
        throw consistency_error("smith_normal_form: transform entry overflow");
      m[i].push_back(x.get_si());
    }
  }
  return m;
}

BigMat big_identity(std::size_t n) {
  BigMat m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void swap_rows(BigMat& a, BigMat& u, std::size_t i, std::size_t j) {
  std::swap(a[i], a[j]);
  std::swap(u[i], u[j]);
}

void swap_cols(BigMat& a, BigMat& v, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
  for (auto& row : v) std::swap(row[i], row[j]);
}

// row i -= c * row j
void add_row(BigMat& a, BigMat& u, std::size_t i, std::size_t j, const BigInt& c) {
  for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] -= c * a[j][k];
  for (std::size_t k = 0; k < u[i].size(); ++k) u[i][k] -= c * u[j][k];
}

// col i -= c * col j
void add_col(BigMat& a, BigMat& v, std::size_t i, std::size_t j, const BigInt& c) {
  for (auto& row : a) row[i] -= c * row[j];
  for (auto& row : v) row[i] -= c * row[j];
}

}  // namespace

int rational_rank(const IntMat& m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (m[i].size() != cols) throw consistency_error("rational_rank: ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = to_rat(m[i][j]);
  }
  int rank = 0;
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[static_cast<std::size_t>(rank)]);
    const std::vector<Rat>& prow = a[static_cast<std::size_t>(rank)];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(rank) || a[i][col] == 0) continue;
      Rat f = a[i][col] / prow[col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * prow[j];
    }
    ++rank;
  }
  return rank;
}

IntMat integer_inverse(const IntMat& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw consistency_error("integer_inverse: not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = to_rat(m[i][j]);
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw consistency_error("integer_inverse: singular matrix");
    std::swap(a[pivot], a[col]);
    Rat p = a[col][col];
    for (std::size_t j = 0; j < 2 * n; ++j) a[col][j] /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  IntMat inv(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][n + j].get_den() != 1)
        throw consistency_error("integer_inverse: inverse not integral");
      inv[i][j] = a[i][n + j].get_num().get_si();
    }
  return inv;
}

SmithForm smith_normal_form(const IntMat& m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  BigMat a = to_big(m);
  BigMat u = big_identity(rows);
  BigMat v = big_identity(cols);

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Locate a pivot of minimal absolute value in the trailing block.
    std::size_t pi = t, pj = t;
    bool found = false;
    BigInt best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!found || cmp(abs(a[i][j]), best) < 0)) {
          best = abs(a[i][j]);
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    swap_rows(a, u, t, pi);
    swap_cols(a, v, t, pj);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i)
      if (a[i][t] != 0) {
        BigInt q = a[i][t] / a[t][t];
        add_row(a, u, i, t, q);
        if (a[i][t] != 0) clean = false;
      }
    for (std::size_t j = t + 1; j < cols; ++j)
      if (a[t][j] != 0) {
        BigInt q = a[t][j] / a[t][t];
        add_col(a, v, j, t, q);
        if (a[t][j] != 0) clean = false;
      }
    if (!clean) continue;  // remainders left; pick a new, smaller pivot

    // Enforce the divisibility chain d_t | a[i][j].
    bool divides_all = true;
    for (std::size_t i = t + 1; i < rows && divides_all; ++i)
      for (std::size_t j = t + 1; j < cols && divides_all; ++j)
        if (a[i][j] % a[t][t] != 0) {
          add_row(a, u, t, i, BigInt(-1));  // fold row i into row t, retry
          divides_all = false;
        }
    if (!divides_all) continue;
    ++t;
  }

  // Normalize diagonal signs into U so that U m V = diag >= 0 exactly.
  for (std::size_t i = 0; i < std::min(rows, cols); ++i)
    if (a[i][i] < 0) {
      for (auto& x : a[i]) x = -x;
      for (auto& x : u[i]) x = -x;
    }

  SmithForm out;
  out.diagonal.resize(std::min(rows, cols), 0);
  for (std::size_t i = 0; i < out.diagonal.size(); ++i) out.diagonal[i] = a[i][i];
  out.row_ops = from_big(u);
  out.col_ops = from_big(v);
  return out;
}

std::vector<IntVec> integer_kernel(const IntMat& m) {
  if (m.empty() || m[0].empty()) {
    // Kernel of an empty map is everything; caller supplies the dimension
    // via columns, so an empty matrix has no well-defined answer.
    std::size_t cols = m.empty() ? 0 : m[0].size();
    std::vector<IntVec> basis;
    for (std::size_t j = 0; j < cols; ++j) {
      IntVec e(cols, 0);
      e[j] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  SmithForm sf = smith_normal_form(m);
  std::size_t cols = m[0].size();
  std::vector<IntVec> basis;
  for (std::size_t j = 0; j < cols; ++j) {
    bool in_kernel = j >= sf.diagonal.size() || sf.diagonal[j] == 0;
    if (!in_kernel) continue;
    IntVec col(cols);
    for (std::size_t i = 0; i < cols; ++i) col[i] = sf.col_ops[i][j];
    basis.push_back(col);
  }
  return basis;
}

}  // namespace amp
