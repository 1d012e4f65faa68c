#ifndef NHMC_ENTRANCE_HPP
#define NHMC_ENTRANCE_HPP

#include "nhmc/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nhmc {

inline constexpr double kDefaultDedupTol = 1e-9;

/// Vertex description of the image of the time-s simplex under P_{st}.
struct DeltaApprox {
  TimeIndex s = 0;
  TimeIndex t = 0;
  std::vector<Distribution> vertices;  // rows of P_{st}, merged within dedup_tol (TV)
  double diameter = 0.0;               // max pairwise TV over the merged vertices
};

/// Keeps the first of any group of rows within `dedup_tol` of each other in TV.
std::vector<RowVector> dedup_rows(const Matrix& rows, double dedup_tol);

/// Largest pairwise TV distance among rows.
double tv_diameter(const std::vector<RowVector>& rows);

DeltaApprox delta_vertices(const ChainModel& model, TimeIndex s, TimeIndex t,
                           double dedup_tol = kDefaultDedupTol);

struct NestingStep {
  TimeIndex outer = 0;  // s' (deeper)
  TimeIndex inner = 0;  // s
  double residual = 0.0;
  double outer_diameter = 0.0;
  double inner_diameter = 0.0;
};

struct NestingReport {
  TimeIndex t = 0;
  std::vector<NestingStep> steps;
  double max_residual = 0.0;
};

/// For consecutive schedule entries s' < s, how far the vertices of the deeper
/// image lie outside the hull of the shallower one (TV to the Euclidean nearest point).
NestingReport delta_nesting_check(const ChainModel& model, TimeIndex t,
                                  const std::vector<TimeIndex>& schedule,
                                  double dedup_tol = kDefaultDedupTol);

struct LimitMatrixReport {
  TimeIndex t = 0;
  std::vector<TimeIndex> schedule;
  Matrix limit;                   // product at the last schedule entry
  std::vector<double> residuals;  // max-abs change between consecutive probes
  bool converged = false;
  bool unique = false;
  std::optional<Distribution> unique_law;
  std::optional<std::string> error;  // set when the schedule mixes row counts
};

LimitMatrixReport limit_matrix(const ChainModel& model, TimeIndex t,
                               const std::vector<TimeIndex>& schedule, double tol);

struct UniquenessReport {
  TimeIndex t = 0;
  TimeIndex depth = 0;
  double tol = 0.0;
  bool unique = false;                // at this depth and tolerance, not an absolute claim
  std::optional<Distribution> law;    // centroid of the deepest vertices when unique
  std::vector<double> diameter_trace; // entry d-1 is diameter of the image over [t-d, t]
  std::vector<Distribution> deepest_vertices;
};

UniquenessReport detect_uniqueness(const ChainModel& model, TimeIndex t, double tol,
                                   TimeIndex depth, double dedup_tol = kDefaultDedupTol);

struct EntranceLaw {
  std::vector<Distribution> laws;  // one per requested time, in request order
  double anchor_sensitivity = 0.0;
};

/// Anchored approximation: m_n = anchor P_{start,n}. Distinct anchors give laws
/// within `anchor_sensitivity` of each other in TV at every requested time.
EntranceLaw entrance_law(const ChainModel& model, const Distribution& anchor,
                         const std::vector<TimeIndex>& report_times,
                         double dedup_tol = kDefaultDedupTol);

}  // namespace nhmc

#endif  // NHMC_ENTRANCE_HPP
