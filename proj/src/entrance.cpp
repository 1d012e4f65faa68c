#include "nhmc/entrance.hpp"

#include "nhmc/hull.hpp"

#include <algorithm>
#include <cmath>

namespace nhmc {

std::vector<RowVector> dedup_rows(const Matrix& rows, double dedup_tol) {
  std::vector<RowVector> kept;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const RowVector r = rows.row(i);
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const RowVector& k) {
      return total_variation(k, r) <= dedup_tol;
    });
    if (!dup) kept.push_back(r);
  }
  return kept;
}

double tv_diameter(const std::vector<RowVector>& rows) {
  double d = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      d = std::max(d, total_variation(rows[a], rows[b]));
    }
  }
  return d;
}

namespace {

std::vector<Distribution> as_distributions(const std::vector<RowVector>& rows, TimeIndex t) {
  std::vector<Distribution> out;
  out.reserve(rows.size());
  for (const RowVector& r : rows) out.push_back(Distribution::unchecked(t, r));
  return out;
}

void require_decreasing_below(const std::vector<TimeIndex>& schedule, TimeIndex t) {
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] >= t) {
      throw Error(ErrorKind::InvalidArgument, "schedule entry " + std::to_string(schedule[k]) +
                                                  " is not below t=" + std::to_string(t));
    }
    if (k > 0 && schedule[k] >= schedule[k - 1]) {
      throw Error(ErrorKind::InvalidArgument, "schedule must be strictly decreasing");
    }
  }
}

RowVector centroid(const std::vector<RowVector>& rows) {
  RowVector c = RowVector::Zero(rows.front().size());
  for (const RowVector& r : rows) c += r;
  return c / static_cast<double>(rows.size());
}

}  // namespace

DeltaApprox delta_vertices(const ChainModel& model, TimeIndex s, TimeIndex t, double dedup_tol) {
  const ProductMatrix p = product(model, s, t);
  const std::vector<RowVector> rows = dedup_rows(p.matrix, dedup_tol);
  return {s, t, as_distributions(rows, t), tv_diameter(rows)};
}

NestingReport delta_nesting_check(const ChainModel& model, TimeIndex t,
                                  const std::vector<TimeIndex>& schedule, double dedup_tol) {
  require_decreasing_below(schedule, t);
  NestingReport report{t, {}, 0.0};
  if (schedule.empty()) return report;

  auto vertices_at = [&](TimeIndex s) { return dedup_rows(product(model, s, t).matrix, dedup_tol); };
  std::vector<RowVector> inner = vertices_at(schedule.front());
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    std::vector<RowVector> outer = vertices_at(schedule[k]);
    NestingStep step{schedule[k], schedule[k - 1], 0.0, tv_diameter(outer), tv_diameter(inner)};
    for (const RowVector& v : outer) {
      step.residual = std::max(step.residual, project_onto_hull(inner, v).tv);
    }
    report.max_residual = std::max(report.max_residual, step.residual);
    report.steps.push_back(step);
    inner = std::move(outer);
  }
  return report;
}

LimitMatrixReport limit_matrix(const ChainModel& model, TimeIndex t,
                               const std::vector<TimeIndex>& schedule, double tol) {
  require_decreasing_below(schedule, t);
  LimitMatrixReport report;
  report.t = t;
  report.schedule = schedule;
  if (schedule.empty()) {
    report.error = "empty schedule";
    return report;
  }

  Matrix previous;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    Matrix current = product(model, schedule[k], t).matrix;
    if (k > 0) {
      if (current.rows() != previous.rows()) {
        report.error = "schedule mixes row counts: " + std::to_string(previous.rows()) +
                       " at s=" + std::to_string(schedule[k - 1]) + ", " +
                       std::to_string(current.rows()) + " at s=" + std::to_string(schedule[k]);
        report.limit = std::move(previous);
        return report;
      }
      report.residuals.push_back((current - previous).cwiseAbs().maxCoeff());
    }
    previous = std::move(current);
  }
  report.limit = std::move(previous);
  report.converged = !report.residuals.empty() && report.residuals.back() <= tol;

  double row_gap = 0.0;
  for (Eigen::Index a = 0; a < report.limit.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < report.limit.rows(); ++b) {
      row_gap = std::max(row_gap, (report.limit.row(a) - report.limit.row(b)).cwiseAbs().maxCoeff());
    }
  }
  report.unique = report.converged && row_gap <= tol;
  if (report.unique) {
    report.unique_law = Distribution::unchecked(t, report.limit.colwise().mean());
  }
  return report;
}

UniquenessReport detect_uniqueness(const ChainModel& model, TimeIndex t, double tol,
                                   TimeIndex depth, double dedup_tol) {
  const Window& w = model.window();
  if (depth < 1 || t > w.end || t - depth < w.start) {
    throw Error(ErrorKind::Infeasible, "window [" + std::to_string(w.start) + ", " +
                                           std::to_string(w.end) + "] cannot reach depth " +
                                           std::to_string(depth) + " below t=" +
                                           std::to_string(t));
  }
  UniquenessReport report;
  report.t = t;
  report.depth = depth;
  report.tol = tol;
  report.diameter_trace.reserve(static_cast<std::size_t>(depth));
  std::vector<RowVector> deepest;
  backward_products(model, t, depth, [&](TimeIndex d, const Matrix& p) {
    std::vector<RowVector> rows = dedup_rows(p, dedup_tol);
    report.diameter_trace.push_back(tv_diameter(rows));
    if (d == depth) deepest = std::move(rows);
  });
  report.deepest_vertices = as_distributions(deepest, t);
  report.unique = report.diameter_trace.back() <= tol;
  if (report.unique) report.law = Distribution::unchecked(t, centroid(deepest));
  return report;
}

EntranceLaw entrance_law(const ChainModel& model, const Distribution& anchor,
                         const std::vector<TimeIndex>& report_times, double dedup_tol) {
  const Window& w = model.window();
  if (anchor.time() != w.start) {
    throw Error(ErrorKind::InvalidArgument, "anchor must sit at the window start " +
                                                std::to_string(w.start));
  }
  if (model.empty()) throw Error(ErrorKind::Infeasible, "entrance law over an empty window");
  if (anchor.size() != model.dim(w.start)) {
    throw Error(ErrorKind::DimensionMismatch, "anchor has " + std::to_string(anchor.size()) +
                                                  " states, time " + std::to_string(w.start) +
                                                  " has " + std::to_string(model.dim(w.start)));
  }
  if (report_times.empty()) throw Error(ErrorKind::InvalidArgument, "no report times");
  for (TimeIndex n : report_times) {
    if (!w.contains(n)) {
      throw Error(ErrorKind::OutOfWindow, "report time " + std::to_string(n) + " outside window");
    }
  }

  const TimeIndex last = *std::max_element(report_times.begin(), report_times.end());
  const std::vector<Distribution> seq = marginals(model, anchor, last);
  EntranceLaw out;
  for (TimeIndex n : report_times) out.laws.push_back(seq[static_cast<std::size_t>(n - w.start)]);

  const TimeIndex first = *std::min_element(report_times.begin(), report_times.end());
  if (first == w.start) {
    out.anchor_sensitivity = model.dim(w.start) > 1 ? 1.0 : 0.0;
  } else {
    out.anchor_sensitivity = delta_vertices(model, w.start, first, dedup_tol).diameter;
  }
  return out;
}

}  // namespace nhmc
