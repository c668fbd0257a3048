// Internal exact linear algebra over rows with at most one logarithmic
// column.

#ifndef TORICHEIGHT_SRC_LINALG_H_
#define TORICHEIGHT_SRC_LINALG_H_

#include <optional>
#include <vector>

#include "toricheight/exactnum.h"
#include "toricheight/geomkernel.h"

namespace toricheight::linalg {

using RationalMatrix = std::vector<std::vector<Rational>>;

Rational determinant(RationalMatrix m);

// Column indices of the pivots of the row echelon form, scanning columns left
// to right.
std::vector<std::size_t> rational_pivots(RationalMatrix m);

// Pivot columns of a matrix whose rows are Points. Logarithms are only
// allowed in the last column, which is a pivot iff it leaves the real span of
// the rational columns.
std::vector<std::size_t> pivot_columns(const std::vector<Point>& rows);

inline std::size_t rank(const std::vector<Point>& rows) {
  return pivot_columns(rows).size();
}

// Determinant of a square matrix of Points, expanded linearly along the
// (unique) logarithmic column.
LogLinear determinant(const std::vector<Point>& rows);

// Solves m x = b for square invertible rational m.
std::optional<std::vector<Rational>> solve(RationalMatrix m,
                                           std::vector<Rational> b);

// Throws unless every entry outside the last column is rational.
void check_log_column(const Point& p);

Point subtract(const Point& a, const Point& b);
LogLinear dot(const std::vector<LogLinear>& normal, const Point& x);
Point project(const Point& p, const std::vector<std::size_t>& chart);

}  // namespace toricheight::linalg

#endif  // TORICHEIGHT_SRC_LINALG_H_
