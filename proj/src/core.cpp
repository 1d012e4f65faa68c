#include "nhmc/core.hpp"

#include <cmath>
#include <sstream>

namespace nhmc {

namespace {

std::string describe(const RowVector& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ")";
  return os.str();
}

}  // namespace

Distribution::Distribution(TimeIndex time, RowVector probs, double tol)
    : time_(time), probs_(std::move(probs)) {
  if (probs_.size() == 0) throw Error(ErrorKind::InvalidArgument, "distribution has no states");
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (!(probs_(i) >= 0.0) || !std::isfinite(probs_(i))) {
      throw Error(ErrorKind::InvalidArgument,
                  "distribution entry " + std::to_string(i + 1) + " is negative or not finite");
    }
  }
  const double defect = std::abs(probs_.sum() - 1.0);
  if (defect > tol) {
    std::ostringstream os;
    os << "distribution " << describe(probs_) << " sums to 1 only within " << defect;
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

Distribution Distribution::unchecked(TimeIndex time, RowVector probs) {
  Distribution d;
  d.time_ = time;
  d.probs_ = std::move(probs);
  return d;
}

Distribution delta_distribution(Eigen::Index state, Eigen::Index dim, TimeIndex t) {
  if (dim < 1 || state < 1 || state > dim) {
    throw Error(ErrorKind::InvalidArgument, "state " + std::to_string(state) +
                                                " outside {1.." + std::to_string(dim) + "}");
  }
  RowVector v = RowVector::Zero(dim);
  v(state - 1) = 1.0;
  return Distribution::unchecked(t, std::move(v));
}

double total_variation(const RowVector& a, const RowVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "total variation between vectors of different length");
  }
  return 0.5 * (a - b).cwiseAbs().sum();
}

StochasticMatrix::StochasticMatrix(TimeIndex from_time, Matrix entries)
    : from_(from_time), entries_(std::move(entries)) {}

StochasticMatrix StochasticMatrix::renormalized() const {
  Matrix out = entries_;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double s = out.row(i).sum();
    if (!(s > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "row " + std::to_string(i + 1) + " at time " +
                                                  std::to_string(from_) + " has no mass");
    }
    out.row(i) /= s;
  }
  return StochasticMatrix(from_, std::move(out));
}

ChainModel::ChainModel(Window window, std::vector<Matrix> steps,
                       std::optional<Distribution> initial, double tol_stochastic)
    : window_(window), initial_(std::move(initial)), tol_(tol_stochastic) {
  if (window.end < window.start) {
    throw Error(ErrorKind::InvalidArgument, "window end precedes start");
  }
  if (static_cast<TimeIndex>(steps.size()) != window.length()) {
    throw Error(ErrorKind::InvalidArgument,
                "window [" + std::to_string(window.start) + ", " + std::to_string(window.end) +
                    "] needs " + std::to_string(window.length()) + " matrices, got " +
                    std::to_string(steps.size()));
  }
  steps_.reserve(steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k) {
    steps_.emplace_back(window.start + static_cast<TimeIndex>(k), std::move(steps[k]));
  }
}

ChainModel ChainModel::homogeneous(const Matrix& p, Window window,
                                   std::optional<Distribution> initial, double tol_stochastic) {
  std::vector<Matrix> steps(static_cast<std::size_t>(std::max<TimeIndex>(window.length(), 0)), p);
  return ChainModel(window, std::move(steps), std::move(initial), tol_stochastic);
}

const StochasticMatrix& ChainModel::step(TimeIndex n) const {
  if (n < window_.start || n >= window_.end) {
    throw Error(ErrorKind::OutOfWindow, "no transition matrix at time " + std::to_string(n) +
                                            " in window [" + std::to_string(window_.start) +
                                            ", " + std::to_string(window_.end) + "]");
  }
  return steps_[static_cast<std::size_t>(n - window_.start)];
}

Eigen::Index ChainModel::dim(TimeIndex t) const {
  if (steps_.empty()) throw Error(ErrorKind::OutOfWindow, "empty window has no state spaces");
  if (t == window_.end) return steps_.back().cols();
  return step(t).rows();
}

ChainModel ChainModel::with_initial(Distribution initial) const {
  ChainModel copy = *this;
  copy.initial_ = std::move(initial);
  return copy;
}

ValidationReport validate_chain(const ChainModel& model) {
  ValidationReport report;
  const Window& w = model.window();
  const double tol = model.tol();
  for (TimeIndex n = w.start; n < w.end; ++n) {
    const Matrix& p = model.step(n).entries();
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      double worst = 0.0;
      bool finite = true;
      for (Eigen::Index j = 0; j < p.cols(); ++j) {
        if (!std::isfinite(p(i, j))) finite = false;
        else if (p(i, j) < worst) worst = p(i, j);
      }
      if (!finite) worst = -std::numeric_limits<double>::infinity();
      if (worst < 0.0) {
        report.push_back({ViolationKind::NegativeEntry, n, i + 1, std::abs(worst),
                          "negative or non-finite entry in row " + std::to_string(i + 1) +
                              " at time " + std::to_string(n)});
      }
      const double defect = std::abs(p.row(i).sum() - 1.0);
      if (!(defect <= tol)) {
        std::ostringstream os;
        os << "row " << i + 1 << " at time " << n << " sums to " << p.row(i).sum()
           << " (defect " << defect << ")";
        report.push_back({ViolationKind::RowSum, n, i + 1, defect, os.str()});
      }
    }
    if (n > w.start) {
      const Eigen::Index before = model.step(n - 1).cols();
      if (before != p.rows()) {
        report.push_back({ViolationKind::DimensionChain, n, std::nullopt,
                          static_cast<double>(std::abs(before - p.rows())),
                          "matrix at time " + std::to_string(n - 1) + " has " +
                              std::to_string(before) + " columns but matrix at time " +
                              std::to_string(n) + " has " + std::to_string(p.rows()) + " rows"});
      }
    }
  }

  if (const auto& init = model.initial()) {
    if (!w.contains(init->time())) {
      report.push_back({ViolationKind::InitialTime, init->time(), std::nullopt, 0.0,
                        "initial distribution time " + std::to_string(init->time()) +
                            " outside window"});
    } else if (!model.empty() && init->size() != model.dim(init->time())) {
      report.push_back({ViolationKind::InitialLength, init->time(), std::nullopt,
                        static_cast<double>(std::abs(init->size() - model.dim(init->time()))),
                        "initial distribution has " + std::to_string(init->size()) +
                            " entries, state space has " +
                            std::to_string(model.dim(init->time()))});
    }
    const RowVector& v = init->probs();
    const double min_entry = v.size() ? v.minCoeff() : 0.0;
    const double defect = std::abs(v.sum() - 1.0);
    if (v.size() == 0 || min_entry < 0.0 || !(defect <= tol)) {
      report.push_back({ViolationKind::InitialNotDistribution, init->time(), std::nullopt,
                        std::max(defect, min_entry < 0.0 ? -min_entry : 0.0),
                        "initial vector is not a probability distribution"});
    }
  }
  return report;
}

void require_valid(const ChainModel& model) {
  const ValidationReport report = validate_chain(model);
  if (!report.empty()) {
    throw Error(ErrorKind::Validation, report.front().message + " (" +
                                           std::to_string(report.size()) + " violation(s))");
  }
}

Distribution push_forward(const Distribution& m, const StochasticMatrix& p) {
  if (m.time() != p.from_time()) {
    throw Error(ErrorKind::DimensionMismatch, "distribution at time " + std::to_string(m.time()) +
                                                  " pushed through matrix from time " +
                                                  std::to_string(p.from_time()));
  }
  if (m.size() != p.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "distribution of length " + std::to_string(m.size()) + " against " +
                    std::to_string(p.rows()) + "-row matrix at time " +
                    std::to_string(p.from_time()));
  }
  return Distribution::unchecked(m.time() + 1, m.probs() * p.entries());
}

}  // namespace nhmc
