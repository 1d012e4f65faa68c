#ifndef NHMC_CORE_HPP
#define NHMC_CORE_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhmc {

/// Integer time. Negative values are past times on the nonpositive half-line.
using TimeIndex = std::int64_t;

using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

inline constexpr double kDefaultStochasticTol = 1e-12;

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  OutOfWindow,
  Validation,
  Infeasible,
  Parse,
};

/// Library-wide exception; `kind()` lets the CLI map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Probability vector on {1..N} at a fixed time. Validated on construction.
class Distribution {
 public:
  Distribution(TimeIndex time, RowVector probs, double tol = kDefaultStochasticTol);

  /// Skips validation. For vectors produced by propagating a valid distribution
  /// through valid kernels, where rounding drift may exceed the input tolerance.
  static Distribution unchecked(TimeIndex time, RowVector probs);

  TimeIndex time() const noexcept { return time_; }
  const RowVector& probs() const noexcept { return probs_; }
  Eigen::Index size() const noexcept { return probs_.size(); }
  /// 0-based access.
  double operator[](Eigen::Index i) const { return probs_(i); }

 private:
  Distribution() = default;

  TimeIndex time_ = 0;
  RowVector probs_;
};

/// Unit mass at 1-based `state` among `dim` states.
Distribution delta_distribution(Eigen::Index state, Eigen::Index dim, TimeIndex t);

/// Half the L1 distance.
double total_variation(const RowVector& a, const RowVector& b);

/// One transition step P_n, rows indexed by states at n, columns by states at n+1.
/// Holds entries as given; `validate_chain` reports defects.
class StochasticMatrix {
 public:
  StochasticMatrix(TimeIndex from_time, Matrix entries);

  TimeIndex from_time() const noexcept { return from_; }
  Eigen::Index rows() const noexcept { return entries_.rows(); }
  Eigen::Index cols() const noexcept { return entries_.cols(); }
  const Matrix& entries() const noexcept { return entries_; }

  /// Copy with each row scaled to sum to 1. Throws on a row with no mass.
  StochasticMatrix renormalized() const;

 private:
  TimeIndex from_;
  Matrix entries_;
};

struct Window {
  TimeIndex start = 0;  // s_min
  TimeIndex end = 0;    // t_max

  bool contains(TimeIndex t) const noexcept { return t >= start && t <= end; }
  TimeIndex length() const noexcept { return end - start; }
};

/// Transition matrices P_n for every n in [start, end).
class ChainModel {
 public:
  /// `steps[k]` is P_{start+k}; exactly `window.length()` steps are required.
  ChainModel(Window window, std::vector<Matrix> steps,
             std::optional<Distribution> initial = std::nullopt,
             double tol_stochastic = kDefaultStochasticTol);

  static ChainModel homogeneous(const Matrix& p, Window window,
                                std::optional<Distribution> initial = std::nullopt,
                                double tol_stochastic = kDefaultStochasticTol);

  const Window& window() const noexcept { return window_; }
  double tol() const noexcept { return tol_; }
  const std::optional<Distribution>& initial() const noexcept { return initial_; }
  bool empty() const noexcept { return steps_.empty(); }

  /// P_n; throws OutOfWindow unless start <= n < end.
  const StochasticMatrix& step(TimeIndex n) const;
  /// N_t: rows of P_t, or columns of P_{t-1} at the right edge.
  Eigen::Index dim(TimeIndex t) const;

  ChainModel with_initial(Distribution initial) const;

 private:
  Window window_;
  std::vector<StochasticMatrix> steps_;
  std::optional<Distribution> initial_;
  double tol_;
};

enum class ViolationKind {
  NegativeEntry,
  RowSum,
  DimensionChain,
  InitialTime,
  InitialLength,
  InitialNotDistribution,
  Document,  // problems in a spec document outside the chain itself
};

struct Violation {
  ViolationKind kind;
  TimeIndex time = 0;
  std::optional<Eigen::Index> row;  // 1-based
  double magnitude = 0.0;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_chain(const ChainModel& model);

/// Throws Error{Validation} carrying the first violation if the report is non-empty.
void require_valid(const ChainModel& model);

/// m P, placed at time m.time()+1.
Distribution push_forward(const Distribution& m, const StochasticMatrix& p);

}  // namespace nhmc

#endif  // NHMC_CORE_HPP
