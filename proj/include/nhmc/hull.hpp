#ifndef NHMC_HULL_HPP
#define NHMC_HULL_HPP

#include "nhmc/core.hpp"

#include <vector>

namespace nhmc {

/// Euclidean nearest point of conv(vertices) to a query point.
struct HullProjection {
  RowVector point;
  RowVector weights;       // barycentric, sum to 1
  double euclidean = 0.0;  // |x - point|_2
  double tv = 0.0;         // TV(x, point); upper bound on the TV distance to the hull
};

/// Exact: minimizes over every face of the hull. Cost grows as 2^k; intended for k <= 3.
HullProjection project_by_faces(const std::vector<RowVector>& vertices, const RowVector& x);

/// Wolfe's minimum-norm-point iteration on conv(vertices - x).
HullProjection project_by_wolfe(const std::vector<RowVector>& vertices, const RowVector& x,
                                int max_iterations = 10000);

/// Faces for up to three vertices, Wolfe otherwise.
HullProjection project_onto_hull(const std::vector<RowVector>& vertices, const RowVector& x);

}  // namespace nhmc

#endif  // NHMC_HULL_HPP
