#include "linalg.h"

#include <algorithm>
#include <stdexcept>

namespace toricheight::linalg {

namespace {

// Primes occurring in the given column.
std::vector<Integer> column_primes(const std::vector<Point>& rows,
                                   std::size_t col) {
  std::vector<Integer> primes;
  for (const Point& row : rows) {
    for (const auto& term : row[col].log_terms()) primes.push_back(term.first);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

std::optional<std::size_t> log_column(const std::vector<Point>& rows) {
  std::optional<std::size_t> found;
  for (const Point& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j].is_rational()) continue;
      if (found && *found != j) {
        throw std::logic_error("more than one logarithmic column");
      }
      found = j;
    }
  }
  return found;
}

}  // namespace

Rational determinant(RationalMatrix m) {
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

std::vector<std::size_t> rational_pivots(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

void check_log_column(const Point& p) {
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    if (!p[j].is_rational()) {
      throw HypothesisError("logarithms are only allowed in the last coordinate");
    }
  }
}

std::vector<std::size_t> pivot_columns(const std::vector<Point>& rows) {
  if (rows.empty()) return {};
  const std::size_t d = rows.front().size();
  if (d == 0) return {};
  const std::vector<Integer> primes = column_primes(rows, d - 1);
  RationalMatrix m;
  m.reserve(rows.size());
  for (const Point& row : rows) {
    check_log_column(row);
    std::vector<Rational> r;
    r.reserve(d + primes.size());
    for (std::size_t j = 0; j + 1 < d; ++j) r.push_back(row[j].constant());
    r.push_back(row[d - 1].constant());
    for (const Integer& p : primes) r.push_back(row[d - 1].log_coefficient(p));
    m.push_back(std::move(r));
  }
  std::vector<std::size_t> pivots;
  bool last = false;
  for (std::size_t c : rational_pivots(std::move(m))) {
    if (c + 1 < d) {
      pivots.push_back(c);
    } else {
      last = true;
    }
  }
  if (last) pivots.push_back(d - 1);
  return pivots;
}

LogLinear determinant(const std::vector<Point>& rows) {
  const std::size_t n = rows.size();
  auto rational_part = [&](std::size_t col, const Integer* prime) {
    RationalMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != col) {
          m[i][j] = rows[i][j].constant();
        } else {
          m[i][j] = prime ? rows[i][j].log_coefficient(*prime)
                          : rows[i][j].constant();
        }
      }
    }
    return m;
  };
  const auto col = log_column(rows);
  if (!col) return LogLinear(determinant(rational_part(n, nullptr)));
  LogLinear det(determinant(rational_part(*col, nullptr)));
  for (const Integer& p : column_primes(rows, *col)) {
    det += LogLinear::log_prime(p, determinant(rational_part(*col, &p)));
  }
  return det;
}

std::optional<std::vector<Rational>> solve(RationalMatrix m,
                                           std::vector<Rational> b) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[col]);
    std::swap(b[p], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= m[i][i];
  return b;
}

Point subtract(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

LogLinear dot(const std::vector<LogLinear>& normal, const Point& x) {
  LogLinear out;
  for (std::size_t j = 0; j < normal.size(); ++j) out += normal[j] * x[j];
  return out;
}

Point project(const Point& p, const std::vector<std::size_t>& chart) {
  Point out;
  out.reserve(chart.size());
  for (std::size_t c : chart) out.push_back(p[c]);
  return out;
}

}  // namespace toricheight::linalg
