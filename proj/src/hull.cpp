#include "nhmc/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nhmc {

namespace {

void check_input(const std::vector<RowVector>& vertices, const RowVector& x) {
  if (vertices.empty()) throw Error(ErrorKind::InvalidArgument, "hull of an empty vertex set");
  for (const RowVector& v : vertices) {
    if (v.size() != x.size()) {
      throw Error(ErrorKind::DimensionMismatch, "hull vertex and query differ in dimension");
    }
  }
}

HullProjection finish(const std::vector<RowVector>& vertices, const RowVector& x,
                      RowVector weights) {
  HullProjection out;
  out.point = RowVector::Zero(x.size());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    out.point += weights(static_cast<Eigen::Index>(k)) * vertices[k];
  }
  out.weights = std::move(weights);
  out.euclidean = (x - out.point).norm();
  out.tv = 0.5 * (x - out.point).cwiseAbs().sum();
  return out;
}

// Minimum-norm point of the affine hull of the given points; returns barycentric weights.
// Solved as least squares in the edge directions p_j - p_0 rather than through the Gram
// matrix, which would square the condition number.
Eigen::VectorXd affine_min_norm(const std::vector<const RowVector*>& pts) {
  const auto k = static_cast<Eigen::Index>(pts.size());
  Eigen::VectorXd out(k);
  if (k == 1) {
    out(0) = 1.0;
    return out;
  }
  const RowVector& base = *pts[0];
  Eigen::MatrixXd dirs(base.size(), k - 1);
  for (Eigen::Index j = 1; j < k; ++j) dirs.col(j - 1) = (*pts[j] - base).transpose();
  const Eigen::VectorXd lambda = dirs.completeOrthogonalDecomposition().solve(-base.transpose());
  out(0) = 1.0 - lambda.sum();
  out.tail(k - 1) = lambda;
  return out;
}

}  // namespace

HullProjection project_by_faces(const std::vector<RowVector>& vertices, const RowVector& x) {
  check_input(vertices, x);
  const std::size_t k = vertices.size();
  if (k > 16) throw Error(ErrorKind::InvalidArgument, "face enumeration limited to 16 vertices");

  double best = std::numeric_limits<double>::infinity();
  RowVector best_weights;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<std::size_t> face;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) face.push_back(i);
    }
    // x - v0 ~ sum_j lambda_j (v_j - v0)
    const RowVector& base = vertices[face.front()];
    RowVector w = RowVector::Zero(static_cast<Eigen::Index>(k));
    if (face.size() == 1) {
      w(static_cast<Eigen::Index>(face.front())) = 1.0;
    } else {
      Eigen::MatrixXd dirs(x.size(), static_cast<Eigen::Index>(face.size() - 1));
      for (std::size_t j = 1; j < face.size(); ++j) {
        dirs.col(static_cast<Eigen::Index>(j - 1)) = (vertices[face[j]] - base).transpose();
      }
      const Eigen::VectorXd lambda =
          dirs.completeOrthogonalDecomposition().solve((x - base).transpose());
      w(static_cast<Eigen::Index>(face.front())) = 1.0 - lambda.sum();
      for (std::size_t j = 1; j < face.size(); ++j) {
        w(static_cast<Eigen::Index>(face[j])) = lambda(static_cast<Eigen::Index>(j - 1));
      }
      if (w.minCoeff() < -1e-12) continue;
      w = w.cwiseMax(0.0);
      w /= w.sum();
    }
    RowVector p = RowVector::Zero(x.size());
    for (std::size_t i = 0; i < k; ++i) p += w(static_cast<Eigen::Index>(i)) * vertices[i];
    const double dist = (x - p).norm();
    if (dist < best) {
      best = dist;
      best_weights = w;
    }
  }
  return finish(vertices, x, std::move(best_weights));
}

HullProjection project_by_wolfe(const std::vector<RowVector>& vertices, const RowVector& x,
                                int max_iterations) {
  check_input(vertices, x);
  const std::size_t k = vertices.size();
  std::vector<RowVector> pts;
  pts.reserve(k);
  double scale = 0.0;
  for (const RowVector& v : vertices) {
    pts.push_back(v - x);
    scale = std::max(scale, pts.back().squaredNorm());
  }
  // Products of contracting kernels give hulls that are very thin in some directions, so
  // optimality is judged relative to |c|^2 rather than to the vertex scale.
  const double eps_floor = 1e-30 * std::max(scale, 1e-300);
  constexpr double eps_weight = 1e-14;

  // Active set: indices with their weights.
  std::vector<std::size_t> active;
  std::vector<double> weights;
  std::size_t start = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (pts[i].squaredNorm() < pts[start].squaredNorm()) start = i;
  }
  active.push_back(start);
  weights.push_back(1.0);
  RowVector current = pts[start];

  for (int iter = 0; iter < max_iterations; ++iter) {
    if (current.squaredNorm() <= 1e-300) break;
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      const double v = current.dot(pts[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (current.squaredNorm() - best <= std::max(1e-12 * current.squaredNorm(), eps_floor)) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    weights.push_back(0.0);

    for (int minor = 0; minor < max_iterations; ++minor) {
      std::vector<const RowVector*> sub;
      for (std::size_t a : active) sub.push_back(&pts[a]);
      const Eigen::VectorXd alpha = affine_min_norm(sub);
      if (alpha.minCoeff() > eps_weight) {
        for (std::size_t a = 0; a < active.size(); ++a) {
          weights[a] = alpha(static_cast<Eigen::Index>(a));
        }
        break;
      }
      double theta = 1.0;
      for (std::size_t a = 0; a < active.size(); ++a) {
        const double al = alpha(static_cast<Eigen::Index>(a));
        if (al <= eps_weight && weights[a] - al > 0.0) {
          theta = std::min(theta, weights[a] / (weights[a] - al));
        }
      }
      for (std::size_t a = 0; a < active.size(); ++a) {
        weights[a] = theta * alpha(static_cast<Eigen::Index>(a)) + (1.0 - theta) * weights[a];
      }
      std::vector<std::size_t> kept;
      std::vector<double> kept_w;
      for (std::size_t a = 0; a < active.size(); ++a) {
        if (weights[a] > eps_weight) {
          kept.push_back(active[a]);
          kept_w.push_back(weights[a]);
        }
      }
      if (kept.empty()) {
        kept.push_back(active.back());
        kept_w.push_back(1.0);
      }
      active.swap(kept);
      weights.swap(kept_w);
    }

    double total = 0.0;
    for (double w : weights) total += w;
    current = RowVector::Zero(x.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
      weights[a] /= total;
      current += weights[a] * pts[active[a]];
    }
  }

  RowVector w = RowVector::Zero(static_cast<Eigen::Index>(k));
  for (std::size_t a = 0; a < active.size(); ++a) {
    w(static_cast<Eigen::Index>(active[a])) += weights[a];
  }
  return finish(vertices, x, std::move(w));
}

HullProjection project_onto_hull(const std::vector<RowVector>& vertices, const RowVector& x) {
  return vertices.size() <= 3 ? project_by_faces(vertices, x) : project_by_wolfe(vertices, x);
}

}  // namespace nhmc
