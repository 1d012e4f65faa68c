#include "nhmc/countable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace nhmc {

double RowFamily::prefix_mass(TimeIndex n, StateIndex i, StateIndex cutoff) const {
  double s = 0.0;
  for (StateIndex k = 1; k <= cutoff; ++k) s += entry(n, i, k);
  return s;
}

// --- reset ------------------------------------------------------------------

ResetFamily::ResetFamily(double alpha, double beta, StateIndex band)
    : ResetFamily(alpha, [beta](TimeIndex) { return beta; }, band,
                  "beta=" + std::to_string(beta)) {}

ResetFamily::ResetFamily(double alpha, std::function<double(TimeIndex)> beta, StateIndex band,
                         std::string beta_description)
    : alpha_(alpha), beta_(std::move(beta)), band_(band), description_(std::move(beta_description)) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "reset probability alpha must lie in (0, 1]");
  }
  if (band < 1) throw Error(ErrorKind::InvalidArgument, "reset band must be at least 1");
}

std::string ResetFamily::name() const {
  std::ostringstream os;
  os << "reset(alpha=" << alpha_ << ", band=" << band_ << ", " << description_ << ")";
  return os.str();
}

double ResetFamily::beta_at(TimeIndex n) const {
  const double b = beta_(n);
  if (!(b > 0.0 && b < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "geometric ratio at time " + std::to_string(n) +
                                                " must lie in (0, 1)");
  }
  return b;
}

double ResetFamily::entry(TimeIndex n, StateIndex i, StateIndex k) const {
  if (i < 1 || k < 1) return 0.0;
  const double b = beta_at(n);
  const double reset = (1.0 - b) * std::pow(b, static_cast<double>(k - 1));
  if (i >= band_) return reset;
  return alpha_ * reset + (k == i + 1 ? 1.0 - alpha_ : 0.0);
}

double ResetFamily::prefix_mass(TimeIndex n, StateIndex i, StateIndex cutoff) const {
  if (i < 1 || cutoff < 1) return 0.0;
  const double tail = std::pow(beta_at(n), static_cast<double>(cutoff));
  if (i >= band_) return 1.0 - tail;
  return alpha_ * (1.0 - tail) + (i + 1 <= cutoff ? 1.0 - alpha_ : 0.0);
}

std::optional<StateIndex> ResetFamily::envelope(TimeIndex n, double eps) const {
  if (!(eps > 0.0 && eps < 1.0)) return std::nullopt;
  const double b = beta_at(n);
  auto cutoff = static_cast<StateIndex>(std::ceil(std::log(eps) / std::log(b)));
  cutoff = std::max({cutoff, band_, StateIndex{1}});
  while (std::pow(b, static_cast<double>(cutoff)) > eps) ++cutoff;
  return cutoff;
}

// --- random walk ------------------------------------------------------------

double RandomWalkFamily::entry(TimeIndex, StateIndex i, StateIndex k) const {
  if (i < 1 || k < 1) return 0.0;
  if (i == 1) return (k == 1 || k == 2) ? 0.5 : 0.0;
  return (k == i - 1 || k == i + 1) ? 0.5 : 0.0;
}

double RandomWalkFamily::prefix_mass(TimeIndex, StateIndex i, StateIndex cutoff) const {
  if (i < 1) return 0.0;
  const StateIndex down = i == 1 ? 1 : i - 1;
  const StateIndex up = i + 1;
  return (down <= cutoff ? 0.5 : 0.0) + (up <= cutoff ? 0.5 : 0.0);
}

// --- shift ------------------------------------------------------------------

ShiftFamily::ShiftFamily(StateIndex shift) : shift_(shift) {
  if (shift < 0) throw Error(ErrorKind::InvalidArgument, "shift family needs shift >= 0 on {1, 2, ...}");
}

double ShiftFamily::entry(TimeIndex, StateIndex i, StateIndex k) const {
  return (i >= 1 && k == i + shift_) ? 1.0 : 0.0;
}

double ShiftFamily::prefix_mass(TimeIndex, StateIndex i, StateIndex cutoff) const {
  return (i >= 1 && i + shift_ <= cutoff) ? 1.0 : 0.0;
}

// --- tightness --------------------------------------------------------------

namespace {

void require_eps_grid(const std::vector<double>& eps_grid) {
  if (eps_grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty eps grid");
  for (double e : eps_grid) {
    if (!(e > 0.0 && e < 1.0)) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
  }
}

std::optional<Counterexample> find_counterexample(const RowFamily& family, TimeIndex n,
                                                  double eps, StateIndex cutoff,
                                                  StateIndex probe_states) {
  const StateIndex bw = family.bandwidth();
  std::vector<StateIndex> probes;
  for (StateIndex i = cutoff - bw; i <= cutoff + 2 * bw + 2; ++i) {
    if (i >= 1) probes.push_back(i);
  }
  for (StateIndex i = 1; i <= std::max(probe_states, cutoff); ++i) probes.push_back(i);
  for (StateIndex i : probes) {
    const double mass = family.prefix_mass(n, i, cutoff);
    if (mass < 1.0 - eps) return Counterexample{i, eps, cutoff, mass};
  }
  return std::nullopt;
}

TimeTightness check_time(const RowFamily& family, TimeIndex n, const std::vector<double>& eps_grid,
                         const ProbeConfig& probes) {
  TimeTightness out;
  out.n = n;
  out.verdict = TightVerdict::Tight;
  for (double eps : eps_grid) {
    const std::optional<StateIndex> cutoff = family.envelope(n, eps);
    out.table.push_back({eps, cutoff});
    if (cutoff) {
      std::set<StateIndex> rows;
      for (StateIndex i = 1; i <= probes.probe_states; ++i) rows.insert(i);
      const StateIndex bw = family.bandwidth();
      for (StateIndex i : {*cutoff + bw, *cutoff + bw + 1, 2 * *cutoff, 10 * *cutoff}) rows.insert(i);
      for (StateIndex i : rows) {
        const double mass = family.prefix_mass(n, i, *cutoff);
        if (mass < 1.0 - eps) {
          out.verdict = TightVerdict::CertificateViolation;
          out.counterexample = Counterexample{i, eps, *cutoff, mass};
          return out;
        }
      }
      continue;
    }
    auto ce = find_counterexample(family, n, eps, probes.counterexample_cutoff, probes.probe_states);
    if (ce) {
      out.verdict = TightVerdict::NotTight;
      out.counterexample = ce;
      return out;
    }
    out.verdict = TightVerdict::Undetermined;
  }
  return out;
}

}  // namespace

ConditionPReport condition_p_check(const RowFamily& family, const std::vector<TimeIndex>& times,
                                   const std::vector<double>& eps_grid,
                                   const ProbeConfig& probes) {
  require_eps_grid(eps_grid);
  ConditionPReport report;
  report.probes = probes;
  report.holds = !times.empty();
  for (TimeIndex n : times) {
    report.times.push_back(check_time(family, n, eps_grid, probes));
    report.holds = report.holds && report.times.back().verdict == TightVerdict::Tight;
  }
  return report;
}

ConditionUReport condition_u_check(const RowFamily& family, const std::vector<TimeIndex>& times,
                                   const std::vector<double>& eps_grid,
                                   const ProbeConfig& probes) {
  ConditionUReport report;
  report.per_time = condition_p_check(family, times, eps_grid, probes);
  if (!report.per_time.holds) {
    report.reason = "Condition P fails at a probed time";
    for (double eps : eps_grid) report.table.push_back({eps, std::nullopt});
    return report;
  }

  // Shallow = closest to zero.
  std::vector<std::size_t> order(times.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] > times[b]; });
  const std::size_t split = std::max<std::size_t>(order.size() / 2, 1);

  report.uniform = true;
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    StateIndex shallow = 0, deep = 0, overall = 0;
    for (std::size_t r = 0; r < order.size(); ++r) {
      const StateIndex c = *report.per_time.times[order[r]].table[e].cutoff;
      overall = std::max(overall, c);
      if (r < split) shallow = std::max(shallow, c);
      else deep = std::max(deep, c);
    }
    report.table.push_back({eps_grid[e], overall});
    if (order.size() >= 2 && deep > shallow) {
      report.growth_detected = true;
      report.uniform = false;
      std::ostringstream os;
      os << "cutoff for eps=" << eps_grid[e] << " grows with depth (" << shallow << " -> " << deep
         << ")";
      if (report.reason.empty()) report.reason = os.str();
    }
    if (overall > probes.max_cutoff) {
      report.uniform = false;
      if (report.reason.empty()) report.reason = "cutoff exceeds the probe budget";
    }
  }
  if (report.uniform) report.reason = "one cutoff table serves every probed time";
  return report;
}

// --- truncation -------------------------------------------------------------

TruncatedStep truncate(const RowFamily& family, TimeIndex n, StateIndex m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "truncation size must be at least 1");
  TruncatedStep out;
  out.n = n;
  out.entries = Matrix::Zero(m, m);
  out.leaked.resize(static_cast<std::size_t>(m));
  out.renormalization.resize(static_cast<std::size_t>(m));
  for (StateIndex i = 1; i <= m; ++i) {
    double inside = 0.0;
    for (StateIndex k = 1; k <= m; ++k) {
      const double p = family.entry(n, i, k);
      out.entries(i - 1, k - 1) = p;
      inside += p;
    }
    const double leaked = std::max(0.0, 1.0 - family.prefix_mass(n, i, m));
    out.leaked[static_cast<std::size_t>(i - 1)] = leaked;
    out.mass_defect = std::max(out.mass_defect, leaked);
    if (!(inside > 0.0)) {
      out.flagged.push_back(i);
      out.renormalization[static_cast<std::size_t>(i - 1)] = 0.0;
      continue;
    }
    out.entries.row(i - 1) /= inside;
    out.renormalization[static_cast<std::size_t>(i - 1)] = 1.0 / inside;
  }
  return out;
}

double TruncatedModel::total_defect() const {
  double s = 0.0;
  for (double d : step_defects) s += d;
  return s;
}

TruncatedModel truncate_chain(const RowFamily& family, Window window, StateIndex m) {
  std::vector<Matrix> steps;
  std::vector<double> defects;
  for (TimeIndex n = window.start; n < window.end; ++n) {
    TruncatedStep step = truncate(family, n, m);
    if (!step.flagged.empty()) {
      throw Error(ErrorKind::Infeasible,
                  "truncation to " + std::to_string(m) + " states loses all mass of row " +
                      std::to_string(step.flagged.front()) + " at time " + std::to_string(n));
    }
    defects.push_back(step.mass_defect);
    steps.push_back(std::move(step.entries));
  }
  return {ChainModel(window, std::move(steps)), std::move(defects)};
}

// --- random walk bounds ------------------------------------------------------

double central_binomial_probability(std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be nonnegative");
  const double x = static_cast<double>(n);
  return std::exp(std::lgamma(2.0 * x + 1.0) - 2.0 * std::lgamma(x + 1.0) - 2.0 * x * std::numbers::ln2);
}

double rw_stirling_bound(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  return std::sqrt(std::numbers::e / (2.0 * std::numbers::pi)) / std::sqrt(static_cast<double>(n));
}

std::vector<RwBoundRow> rw_bound_check(const std::vector<std::int64_t>& ns) {
  std::vector<RwBoundRow> out;
  out.reserve(ns.size());
  for (std::int64_t n : ns) {
    RwBoundRow row{n, central_binomial_probability(n), rw_stirling_bound(n), false};
    row.holds = row.exact <= row.bound;
    out.push_back(row);
  }
  return out;
}

double rw_max_row_entry(std::int64_t n, StateIndex m) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  if (m < 4 * n + 1) {
    throw Error(ErrorKind::Infeasible, "2n-step support needs a truncation of at least " +
                                           std::to_string(4 * n + 1) + " states");
  }
  const RandomWalkFamily walk;
  const TruncatedModel trunc = truncate_chain(walk, {-2 * n, 0}, m);
  Distribution row = delta_distribution(2 * n + 1, m, -2 * n);
  for (TimeIndex t = -2 * n; t < 0; ++t) row = push_forward(row, trunc.model.step(t));
  return row.probs().maxCoeff();
}

// --- shift family -------------------------------------------------------------

ShiftDemo shift_family_checks(StateIndex shift, StateIndex m, Window window, StateIndex base) {
  const ShiftFamily family(shift);
  ShiftDemo demo;
  demo.shift = shift;
  demo.base = base;

  auto state_at = [&](TimeIndex n) { return base + n * shift; };
  for (TimeIndex n = window.start; n <= window.end; ++n) {
    const StateIndex s = state_at(n);
    if (s < 1 || s > m) {
      throw Error(ErrorKind::Infeasible, "delta path reaches state " + std::to_string(s) +
                                             " at time " + std::to_string(n) +
                                             ", outside truncation {1.." + std::to_string(m) + "}");
    }
    demo.laws.push_back(delta_distribution(s, m, n));
  }

  demo.onto_modulo_shift = true;
  for (TimeIndex n = window.start; n < window.end; ++n) {
    const TruncatedStep step = truncate(family, n, m);
    for (StateIndex j = 1 + shift; j <= m; ++j) {
      if (!(step.entries.col(j - 1).maxCoeff() > 0.0)) demo.onto_modulo_shift = false;
    }
    const RowVector& now = demo.laws[static_cast<std::size_t>(n - window.start)].probs();
    const RowVector& next = demo.laws[static_cast<std::size_t>(n + 1 - window.start)].probs();
    demo.recursion_residual =
        std::max(demo.recursion_residual, (now * step.entries - next).cwiseAbs().maxCoeff());
  }
  return demo;
}

TruncatedEntrance truncated_entrance_law(const RowFamily& family, Window window, StateIndex m,
                                         double tol) {
  const TruncatedModel trunc = truncate_chain(family, window, m);
  TruncatedEntrance out;
  out.defect_bound = trunc.total_defect();
  out.law = entrance_law(trunc.model, delta_distribution(1, m, window.start), {window.end});
  out.uniqueness = detect_uniqueness(trunc.model, window.end, tol, window.length());
  return out;
}

}  // namespace nhmc
