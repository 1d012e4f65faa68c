#ifndef NHMC_ALGEBRA_HPP
#define NHMC_ALGEBRA_HPP

#include "nhmc/core.hpp"

#include <span>
#include <vector>

namespace nhmc {

/// Multistep transition matrix P_{st} = P_s P_{s+1} ... P_{t-1}.
struct ProductMatrix {
  TimeIndex s = 0;
  TimeIndex t = 0;
  Matrix matrix;
};

/// Ordered product over [s, t). Requires start <= s < t <= end.
ProductMatrix product(const ChainModel& model, TimeIndex s, TimeIndex t);

/// Products P_{t-d,t} for d = 1..depth, built by prepending one step at a time.
/// `visit(d, matrix)` is called in increasing d.
template <class Visit>
void backward_products(const ChainModel& model, TimeIndex t, TimeIndex depth, Visit&& visit);

/// Dobrushin ergodicity coefficient: half the largest L1 distance between two rows.
double dobrushin(const Matrix& p);

/// m_n for n = initial.time() .. last, by repeated push-forward.
std::vector<Distribution> marginals(const ChainModel& model, const Distribution& initial,
                                    TimeIndex last);
std::vector<Distribution> marginals(const ChainModel& model, const Distribution& initial);

/// Backward transition probabilities of a chain observed at time n+1.
/// Row j of `matrix` is P(Z_n = . | Z_{n+1} = j). Rows with m_{n+1}(j) = 0 are
/// undefined: `supported[j]` is false and the row is left at zero.
struct ReverseKernel {
  TimeIndex n = 0;
  Matrix matrix;
  std::vector<bool> supported;
};

/// Bayes reversal of one step: forward kernel `k` (rows indexed by `from`),
/// marginal `from` before and `to` after. No consistency check.
ReverseKernel bayes_reverse(TimeIndex n, const Matrix& k, const RowVector& from,
                            const RowVector& to);

/// Reverse kernel at n given a marginal sequence covering n and n+1.
/// Throws DimensionMismatch if |m_n P_n - m_{n+1}| exceeds `consistency_tol`.
ReverseKernel reverse_kernel(const ChainModel& model, std::span<const Distribution> marginals,
                             TimeIndex n, double consistency_tol = 1e-10);

struct ReversalDiagnostics {
  bool is_homogeneous = false;
  bool is_stationary = false;
  bool reverse_is_homogeneous = false;
  bool is_reversible = false;
  double forward_spread = 0.0;   // max-abs difference between forward kernels
  double marginal_spread = 0.0;  // max-abs difference between marginals
  double reverse_spread = 0.0;   // max-abs difference between reverse kernels
  double reversal_gap = 0.0;     // max-abs difference reverse vs forward
};

/// Pairwise max-abs comparisons over [initial.time(), end) within `tol`.
ReversalDiagnostics reversal_diagnostics(const ChainModel& model, const Distribution& initial,
                                         double tol = 1e-10);

// ---------------------------------------------------------------------------

template <class Visit>
void backward_products(const ChainModel& model, TimeIndex t, TimeIndex depth, Visit&& visit) {
  const Window& w = model.window();
  if (depth < 1 || t > w.end || t - depth < w.start) {
    throw Error(ErrorKind::OutOfWindow, "backward products of depth " + std::to_string(depth) +
                                            " ending at " + std::to_string(t) +
                                            " leave the window");
  }
  Matrix acc = model.step(t - 1).entries();
  visit(TimeIndex{1}, static_cast<const Matrix&>(acc));
  for (TimeIndex d = 2; d <= depth; ++d) {
    const Matrix& p = model.step(t - d).entries();
    if (p.cols() != acc.rows()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "dimension chaining breaks at time " + std::to_string(t - d));
    }
    Matrix next = p * acc;
    acc.swap(next);
    visit(d, static_cast<const Matrix&>(acc));
  }
}

}  // namespace nhmc

#endif  // NHMC_ALGEBRA_HPP
