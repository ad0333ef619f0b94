#include "toric/linalg.hpp"

#include "toric/error.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <utility>

namespace toric::linalg {

Rational determinant(RatMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

namespace {

bool fits(__int128 v) {
  return v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min();
}

}  // namespace

Integer determinant(const IntMatrix& input) {
  const std::size_t n = input.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m[r][c] = input[r][c];
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const __int128 a = m[i][j], b = m[k][k], c = m[i][k], d = m[k][j];
        if (!fits(a) || !fits(b) || !fits(c) || !fits(d)) {
          RatMatrix q(n, RatPoint(n));
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) q[r][s] = Rational(input[r][s]);
          return boost::multiprecision::numerator(linalg::determinant(std::move(q)));
        }
        m[i][j] = (a * b - c * d) / prev;
      }
    }
    prev = m[k][k];
  }
  const __int128 det = m[n - 1][n - 1];
  const auto hi = static_cast<std::int64_t>(det >> 64);
  const auto lo = static_cast<std::uint64_t>(det);
  Integer out = Integer(hi) * (Integer(1) << 64) + Integer(lo);
  return sign < 0 ? Integer(-out) : out;
}

std::size_t rank(RatMatrix rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (rows[k][col] == 0) continue;
      const Rational f = rows[k][col] / rows[r][col];
      for (std::size_t c = col; c < ncols; ++c) rows[k][c] -= f * rows[r][c];
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IntMatrix& rows) {
  RatMatrix q;
  q.reserve(rows.size());
  for (const auto& row : rows) q.push_back(to_rat_point(row));
  return rank(std::move(q));
}

int affine_rank(const IntMatrix& points) {
  if (points.empty()) return -1;
  IntMatrix diffs;
  for (std::size_t k = 1; k < points.size(); ++k) {
    IntPoint d(points[k].size());
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[k][c] - points[0][c];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(rank(diffs));
}

std::optional<RatPoint> solve_square(RatMatrix a, RatPoint b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RatPoint x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = b[k] / a[k][k];
  return x;
}

RatMatrix nullspace(RatMatrix rows, std::size_t ncols) {
  // Reduced row echelon form, then one basis vector per free column.
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    const Rational inv = 1 / rows[r][col];
    for (std::size_t c = 0; c < ncols; ++c) rows[r][c] *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][col] == 0) continue;
      const Rational f = rows[k][col];
      for (std::size_t c = 0; c < ncols; ++c) rows[k][c] -= f * rows[r][c];
    }
    pivot_cols.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  RatMatrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RatPoint v = zero_point(ncols);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -rows[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

IntPoint primitive(IntPoint v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

std::vector<Integer> primitive_integer(const RatPoint& v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer z = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
    g = boost::multiprecision::gcd(g, z);
    out.push_back(std::move(z));
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t ncols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    // Euclid on column `col` among rows r.. until a single nonzero remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t k = r; k < rows.size(); ++k) {
        if (rows[k][col] == 0) continue;
        if (best == rows.size() || std::llabs(rows[k][col]) < std::llabs(rows[best][col])) best = k;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t k = r + 1; k < rows.size(); ++k) {
        if (rows[k][col] == 0) continue;
        const std::int64_t q = rows[k][col] / rows[r][col];
        for (std::size_t c = 0; c < ncols; ++c) rows[k][c] -= q * rows[r][c];
        if (rows[k][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t k = 0; k < r; ++k) {
      std::int64_t q = rows[k][col] / rows[r][col];
      if (rows[k][col] - q * rows[r][col] < 0) --q;
      for (std::size_t c = 0; c < ncols; ++c) rows[k][c] -= q * rows[r][c];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

IntMatrix kernel_lattice_basis(const IntPoint& normal) {
  // Column operations m * U = (g, 0, ..., 0) with U unimodular; the trailing
  // columns of U span the kernel lattice.
  const std::size_t n = normal.size();
  IntPoint m = normal;
  IntMatrix u(n, IntPoint(n, 0));
  for (std::size_t k = 0; k < n; ++k) u[k][k] = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // col dst -= q * col src
    m[dst] -= q * m[src];
    for (std::size_t r = 0; r < n; ++r) u[r][dst] -= q * u[r][src];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    std::swap(m[a], m[b]);
    for (std::size_t r = 0; r < n; ++r) std::swap(u[r][a], u[r][b]);
  };
  while (true) {
    std::size_t best = n;
    for (std::size_t k = 0; k < n; ++k)
      if (m[k] != 0 && (best == n || std::llabs(m[k]) < std::llabs(m[best]))) best = k;
    if (best == n) throw Error(ErrorKind::InvalidInput, "zero normal vector");
    col_swap(0, best);
    bool done = true;
    for (std::size_t k = 1; k < n; ++k) {
      if (m[k] == 0) continue;
      col_op(k, 0, m[k] / m[0]);
      if (m[k] != 0) done = false;
    }
    if (done) break;
  }
  if (std::llabs(m[0]) != 1) throw Error(ErrorKind::InvalidInput, "normal vector is not primitive");
  IntMatrix basis;
  for (std::size_t k = 1; k < n; ++k) {
    IntPoint col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = u[r][k];
    basis.push_back(std::move(col));
  }
  return hermite_normal_form(std::move(basis));
}

}  // namespace toric::linalg
