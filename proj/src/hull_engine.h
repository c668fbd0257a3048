// Internal incremental (beneath-beyond) hull engine.

#ifndef TORICHEIGHT_SRC_HULL_ENGINE_H_
#define TORICHEIGHT_SRC_HULL_ENGINE_H_

#include <utility>
#include <vector>

#include "toricheight/geomkernel.h"

namespace toricheight::hull {

struct Facet {
  // Input points lying on the facet that appear in its triangulation.
  std::vector<std::size_t> points;
  std::vector<std::size_t> vertices;
  std::vector<std::vector<std::size_t>> simplices;
  // Outward normal in chart coordinates: normal . x <= offset on the hull.
  std::vector<LogLinear> normal;
  LogLinear offset;
};

struct Result {
  int dim = -1;
  std::vector<std::size_t> chart;
  std::vector<std::size_t> vertices;
  std::vector<Facet> facets;
  // Every face including the hull itself, as (dim, sorted vertex indices).
  std::vector<std::pair<int, std::vector<std::size_t>>> faces;
};

// Hull of points[subset]. Points must be pairwise distinct. Indices in the
// result refer to `points`.
Result compute(const std::vector<Point>& points,
               const std::vector<std::size_t>& subset);

}  // namespace toricheight::hull

#endif  // TORICHEIGHT_SRC_HULL_ENGINE_H_
