#include "nhmc/tail.hpp"

#include "nhmc/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace nhmc {

const RowVector& HarmonicSequence::at(TimeIndex n) const {
  if (n < first || n > last) {
    throw Error(ErrorKind::OutOfWindow, "harmonic sequence has no value at time " +
                                            std::to_string(n));
  }
  return values[static_cast<std::size_t>(n - first)];
}

namespace {

void require_square_constant(const ChainModel& model) {
  if (model.empty()) throw Error(ErrorKind::Infeasible, "absorption event over an empty window");
  const Eigen::Index dim = model.dim(model.window().start);
  for (TimeIndex n = model.window().start; n < model.window().end; ++n) {
    const StochasticMatrix& p = model.step(n);
    if (p.rows() != dim || p.cols() != dim) {
      throw Error(ErrorKind::InvalidArgument,
                  "absorption events need one fixed state space; time " + std::to_string(n) +
                      " breaks it");
    }
  }
}

bool absorbing_at_all_times(const ChainModel& model, Eigen::Index i) {
  for (TimeIndex n = model.window().start; n < model.window().end; ++n) {
    if (model.step(n).entries()(i, i) < 1.0 - model.tol()) return false;
  }
  return true;
}

// h over [first, horizon] from a seed at the horizon.
std::vector<RowVector> recurse(const ChainModel& model, TimeIndex first, TimeIndex horizon,
                               RowVector seed) {
  std::vector<RowVector> out(static_cast<std::size_t>(horizon - first + 1));
  out.back() = std::move(seed);
  for (TimeIndex n = horizon - 1; n >= first; --n) {
    const Matrix& p = model.step(n).entries();
    const RowVector& next = out[static_cast<std::size_t>(n + 1 - first)];
    if (p.cols() != next.size()) {
      throw Error(ErrorKind::DimensionMismatch, "seed length does not match state space at " +
                                                    std::to_string(n + 1));
    }
    RowVector h = (p * next.transpose()).transpose();
    out[static_cast<std::size_t>(n - first)] = h.cwiseMax(0.0).cwiseMin(1.0);
  }
  return out;
}

}  // namespace

std::vector<Eigen::Index> absorbing_states(const ChainModel& model) {
  require_square_constant(model);
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < model.dim(model.window().start); ++i) {
    if (absorbing_at_all_times(model, i)) out.push_back(i + 1);
  }
  return out;
}

HarmonicSequence harmonic_backward(const ChainModel& model, const TailEventSpec& event,
                                   TimeIndex stabilization_steps) {
  const Window& w = model.window();
  HarmonicSequence h;
  h.first = w.start;

  if (const auto* abs = std::get_if<AbsorptionEvent>(&event)) {
    require_square_constant(model);
    const Eigen::Index dim = model.dim(w.start);
    RowVector seed = RowVector::Zero(dim);
    for (Eigen::Index target : abs->targets) {
      if (target < 1 || target > dim) {
        throw Error(ErrorKind::InvalidArgument,
                    "absorbing target " + std::to_string(target) + " outside state space");
      }
      if (!absorbing_at_all_times(model, target - 1)) {
        throw Error(ErrorKind::InvalidArgument,
                    "target state " + std::to_string(target) + " is not absorbing at every time");
      }
      seed(target - 1) = 1.0;
    }
    h.last = w.end;
    h.values = recurse(model, w.start, w.end, seed);
    const TimeIndex shorter = std::max(w.start, w.end - stabilization_steps);
    const std::vector<RowVector> alt = recurse(model, w.start, shorter, seed);
    h.stabilization_residual = (h.values.front() - alt.front()).cwiseAbs().maxCoeff();
    return h;
  }

  const auto& seed = std::get<TerminalSeed>(event);
  if (seed.horizon < w.start || seed.horizon > w.end) {
    throw Error(ErrorKind::OutOfWindow, "seed horizon " + std::to_string(seed.horizon) +
                                            " outside window");
  }
  for (Eigen::Index i = 0; i < seed.values.size(); ++i) {
    if (!(seed.values(i) >= 0.0 && seed.values(i) <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "seed entry " + std::to_string(i + 1) +
                                                  " outside [0, 1]");
    }
  }
  if (!model.empty() && seed.values.size() != model.dim(seed.horizon)) {
    throw Error(ErrorKind::DimensionMismatch, "seed length does not match the horizon state space");
  }
  h.last = seed.horizon;
  h.values = recurse(model, w.start, seed.horizon, seed.values);

  const TimeIndex later = seed.horizon + stabilization_steps;
  const TimeIndex earlier = seed.horizon - stabilization_steps;
  std::optional<TimeIndex> moved;
  if (stabilization_steps > 0 && later <= w.end && model.dim(later) == seed.values.size()) {
    moved = later;
  } else if (stabilization_steps > 0 && earlier >= w.start &&
             model.dim(earlier) == seed.values.size()) {
    moved = earlier;
  }
  if (moved) {
    const std::vector<RowVector> alt = recurse(model, w.start, *moved, seed.values);
    h.stabilization_residual = (h.values.front() - alt.front()).cwiseAbs().maxCoeff();
  }
  return h;
}

BandPartition::Band BandPartition::classify(double h, double p, double q) {
  if (h < p) return Band::Low;
  if (h <= q) return Band::Mid;
  return Band::High;
}

BandPartition band_sets(const HarmonicSequence& h, double p, double q) {
  if (!(p > 0.0 && p < q && q < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "bands need 0 < p < q < 1");
  }
  BandPartition out;
  out.p = p;
  out.q = q;
  out.first = h.first;
  for (const RowVector& v : h.values) {
    auto& low = out.low.emplace_back();
    auto& mid = out.mid.emplace_back();
    auto& high = out.high.emplace_back();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      switch (BandPartition::classify(v(i), p, q)) {
        case BandPartition::Band::Low: low.push_back(i + 1); break;
        case BandPartition::Band::Mid: mid.push_back(i + 1); break;
        case BandPartition::Band::High: high.push_back(i + 1); break;
      }
    }
  }
  return out;
}

namespace {

double mass_on(const RowVector& m, const std::vector<Eigen::Index>& states) {
  double s = 0.0;
  for (Eigen::Index i : states) s += m(i - 1);
  return s;
}

}  // namespace

BandProbabilities band_probabilities(const ChainModel& model, const Distribution& initial,
                                     const HarmonicSequence& h, const BandPartition& bands) {
  if (initial.time() < h.first || initial.time() > h.last) {
    throw Error(ErrorKind::OutOfWindow, "initial time outside the harmonic sequence");
  }
  if (bands.first != h.first || bands.high.size() != h.values.size()) {
    throw Error(ErrorKind::InvalidArgument, "band partition does not match harmonic sequence");
  }
  const std::vector<Distribution> ms = marginals(model, initial, h.last);
  BandProbabilities out;
  out.prob_event = initial.probs().dot(h.at(initial.time()));
  for (const Distribution& m : ms) {
    const auto idx = static_cast<std::size_t>(m.time() - bands.first);
    BandRow row;
    row.n = m.time();
    row.high = mass_on(m.probs(), bands.high[idx]);
    row.mid = mass_on(m.probs(), bands.mid[idx]);
    row.low = 1.0 - (row.mid + row.high);
    row.conservation_residual = std::abs(m.probs().dot(h.at(m.time())) - out.prob_event);
    out.rows.push_back(row);
  }
  return out;
}

BackwardBands backward_band_sets(const ChainModel& model, const Distribution& initial,
                                 const Cylinder& cyl, double p, double q) {
  if (!(p > 0.0 && p < q && q < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "bands need 0 < p < q < 1");
  }
  const Window& w = model.window();
  if (cyl.k > cyl.n || cyl.k < initial.time() || cyl.n > w.end) {
    throw Error(ErrorKind::OutOfWindow, "cylinder window must satisfy initial <= k <= n <= end");
  }
  if (static_cast<TimeIndex>(cyl.allowed.size()) != cyl.n - cyl.k + 1) {
    throw Error(ErrorKind::InvalidArgument, "cylinder needs one allowed set per time in [k, n]");
  }

  const std::vector<Distribution> ms = marginals(model, initial, cyl.n);
  auto restrict_to = [&](RowVector v, TimeIndex t) {
    const auto& allowed = cyl.allowed[static_cast<std::size_t>(t - cyl.k)];
    RowVector out = RowVector::Zero(v.size());
    for (Eigen::Index i : allowed) {
      if (i < 1 || i > v.size()) {
        throw Error(ErrorKind::InvalidArgument, "allowed state " + std::to_string(i) +
                                                    " outside state space at " + std::to_string(t));
      }
      out(i - 1) = v(i - 1);
    }
    return out;
  };

  BackwardBands out;
  out.k = cyl.k;
  out.n = cyl.n;
  out.impossible = std::any_of(cyl.allowed.begin(), cyl.allowed.end(),
                               [](const auto& s) { return s.empty(); });

  // joint(i) = P(A_kn, Z_j = i), carried forward through the allowed sets.
  RowVector joint = restrict_to(ms[static_cast<std::size_t>(cyl.k - initial.time())].probs(), cyl.k);
  for (TimeIndex j = cyl.k; j < cyl.n; ++j) {
    joint = restrict_to(joint * model.step(j).entries(), j + 1);
  }
  out.prob_event = joint.sum();

  const RowVector& mn = ms.back().probs();
  out.conditional.resize(static_cast<std::size_t>(mn.size()));
  for (Eigen::Index i = 0; i < mn.size(); ++i) {
    if (!(mn(i) > 0.0)) continue;
    const double c = std::clamp(joint(i) / mn(i), 0.0, 1.0);
    out.conditional[static_cast<std::size_t>(i)] = c;
    switch (BandPartition::classify(c, p, q)) {
      case BandPartition::Band::Low: out.low.push_back(i + 1); break;
      case BandPartition::Band::Mid: out.mid.push_back(i + 1); break;
      case BandPartition::Band::High: out.high.push_back(i + 1); break;
    }
  }
  out.prob_high = mass_on(mn, out.high);
  out.prob_mid = mass_on(mn, out.mid);
  out.prob_low = mass_on(mn, out.low);
  return out;
}

}  // namespace nhmc
