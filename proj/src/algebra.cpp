#include "nhmc/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace nhmc {

ProductMatrix product(const ChainModel& model, TimeIndex s, TimeIndex t) {
  const Window& w = model.window();
  if (s >= t) {
    throw Error(ErrorKind::InvalidArgument, "product needs s < t, got s=" + std::to_string(s) +
                                                " t=" + std::to_string(t));
  }
  if (s < w.start || t > w.end) {
    throw Error(ErrorKind::OutOfWindow, "product [" + std::to_string(s) + ", " +
                                            std::to_string(t) + ") outside window");
  }
  Matrix acc = model.step(s).entries();
  for (TimeIndex n = s + 1; n < t; ++n) {
    const Matrix& p = model.step(n).entries();
    if (acc.cols() != p.rows()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "dimension chaining breaks at time " + std::to_string(n));
    }
    Matrix next = acc * p;
    acc.swap(next);
  }
  return {s, t, std::move(acc)};
}

double dobrushin(const Matrix& p) {
  double worst = 0.0;
  for (Eigen::Index a = 0; a < p.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < p.rows(); ++b) {
      worst = std::max(worst, 0.5 * (p.row(a) - p.row(b)).cwiseAbs().sum());
    }
  }
  return worst;
}

std::vector<Distribution> marginals(const ChainModel& model, const Distribution& initial,
                                    TimeIndex last) {
  const Window& w = model.window();
  if (!w.contains(initial.time()) || last < initial.time() || last > w.end) {
    throw Error(ErrorKind::OutOfWindow, "marginals requested outside window");
  }
  std::vector<Distribution> out;
  out.reserve(static_cast<std::size_t>(last - initial.time() + 1));
  out.push_back(initial);
  for (TimeIndex n = initial.time(); n < last; ++n) {
    out.push_back(push_forward(out.back(), model.step(n)));
  }
  return out;
}

std::vector<Distribution> marginals(const ChainModel& model, const Distribution& initial) {
  return marginals(model, initial, model.window().end);
}

ReverseKernel bayes_reverse(TimeIndex n, const Matrix& k, const RowVector& from,
                            const RowVector& to) {
  if (k.rows() != from.size() || k.cols() != to.size()) {
    throw Error(ErrorKind::DimensionMismatch, "reversal marginals do not match kernel shape");
  }
  ReverseKernel out{n, Matrix::Zero(k.cols(), k.rows()), std::vector<bool>(k.cols(), false)};
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    if (!(to(j) > 0.0)) continue;
    out.supported[j] = true;
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      out.matrix(j, i) = k(i, j) * from(i) / to(j);
    }
  }
  return out;
}

namespace {

const Distribution& marginal_at(std::span<const Distribution> ms, TimeIndex t) {
  for (const Distribution& m : ms) {
    if (m.time() == t) return m;
  }
  throw Error(ErrorKind::OutOfWindow, "no marginal supplied for time " + std::to_string(t));
}

}  // namespace

ReverseKernel reverse_kernel(const ChainModel& model, std::span<const Distribution> ms,
                             TimeIndex n, double consistency_tol) {
  const StochasticMatrix& p = model.step(n);
  const Distribution& before = marginal_at(ms, n);
  const Distribution& after = marginal_at(ms, n + 1);
  const Distribution pushed = push_forward(before, p);
  if (pushed.size() != after.size()) {
    throw Error(ErrorKind::DimensionMismatch, "marginal at time " + std::to_string(n + 1) +
                                                  " has the wrong length");
  }
  const double residual = (pushed.probs() - after.probs()).cwiseAbs().maxCoeff();
  if (residual > consistency_tol) {
    throw Error(ErrorKind::DimensionMismatch,
                "marginals inconsistent with P_" + std::to_string(n) + " (residual " +
                    std::to_string(residual) + ")");
  }
  return bayes_reverse(n, p.entries(), before.probs(), after.probs());
}

namespace {

// Largest pairwise max-abs difference across a family of equally shaped matrices.
double spread(const std::vector<Matrix>& family) {
  if (family.size() < 2) return 0.0;
  Matrix lo = family.front();
  Matrix hi = family.front();
  for (const Matrix& m : family) {
    lo = lo.cwiseMin(m);
    hi = hi.cwiseMax(m);
  }
  return (hi - lo).maxCoeff();
}

bool same_shape(const std::vector<Matrix>& family) {
  return std::all_of(family.begin(), family.end(), [&](const Matrix& m) {
    return m.rows() == family.front().rows() && m.cols() == family.front().cols();
  });
}

}  // namespace

ReversalDiagnostics reversal_diagnostics(const ChainModel& model, const Distribution& initial,
                                         double tol) {
  ReversalDiagnostics d;
  const std::vector<Distribution> ms = marginals(model, initial);
  const TimeIndex first = initial.time();
  const TimeIndex end = model.window().end;

  std::vector<Matrix> forward;
  std::vector<Matrix> marginal_rows;
  std::vector<ReverseKernel> reverse;
  for (const Distribution& m : ms) marginal_rows.emplace_back(m.probs());
  for (TimeIndex n = first; n < end; ++n) {
    forward.push_back(model.step(n).entries());
    reverse.push_back(reverse_kernel(model, ms, n, std::max(tol, 1e-10)));
  }

  d.is_homogeneous = same_shape(forward);
  if (d.is_homogeneous) {
    d.forward_spread = spread(forward);
    d.is_homogeneous = d.forward_spread <= tol;
  }
  d.is_stationary = same_shape(marginal_rows);
  if (d.is_stationary) {
    d.marginal_spread = spread(marginal_rows);
    d.is_stationary = d.marginal_spread <= tol;
  }

  std::vector<Matrix> reverse_mats;
  bool masks_agree = true;
  for (const ReverseKernel& r : reverse) {
    reverse_mats.push_back(r.matrix);
    masks_agree = masks_agree && r.supported == reverse.front().supported;
  }
  d.reverse_is_homogeneous = masks_agree && same_shape(reverse_mats);
  if (d.reverse_is_homogeneous) {
    d.reverse_spread = spread(reverse_mats);
    d.reverse_is_homogeneous = d.reverse_spread <= tol;
  }

  bool reversible = d.is_homogeneous && d.is_stationary && d.reverse_is_homogeneous;
  for (std::size_t k = 0; reversible && k < reverse.size(); ++k) {
    const Matrix& f = forward[k];
    const ReverseKernel& r = reverse[k];
    if (f.rows() != r.matrix.rows() || f.cols() != r.matrix.cols()) {
      reversible = false;
      break;
    }
    for (Eigen::Index j = 0; j < f.rows(); ++j) {
      if (!r.supported[j]) continue;
      d.reversal_gap = std::max(d.reversal_gap, (r.matrix.row(j) - f.row(j)).cwiseAbs().maxCoeff());
    }
  }
  d.is_reversible = reversible && d.reversal_gap <= tol;
  return d;
}

}  // namespace nhmc
