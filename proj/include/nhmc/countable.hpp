#ifndef NHMC_COUNTABLE_HPP
#define NHMC_COUNTABLE_HPP

#include "nhmc/entrance.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nhmc {

using StateIndex = std::int64_t;  // 1-based state of a countable space

enum class BuiltinFamily { Reset, RandomWalk, Shift, Custom };

/// Infinite stochastic matrices P_n on {1, 2, ...}, evaluated lazily.
class RowFamily {
 public:
  virtual ~RowFamily() = default;

  virtual BuiltinFamily tag() const noexcept { return BuiltinFamily::Custom; }
  virtual std::string name() const = 0;

  /// p_n(i, k).
  virtual double entry(TimeIndex n, StateIndex i, StateIndex k) const = 0;

  /// sum_{k <= cutoff} p_n(i, k). The default sums `entry`.
  virtual double prefix_mass(TimeIndex n, StateIndex i, StateIndex cutoff) const;

  /// Certified N with sum_{k <= N} p_n(i, k) >= 1 - eps for every i, or nullopt
  /// when P_n is not tight.
  virtual std::optional<StateIndex> envelope(TimeIndex n, double eps) const = 0;

  /// Largest upward jump of a banded row; adversarial probes sit just past N + bandwidth.
  virtual StateIndex bandwidth() const noexcept { return 0; }
};

/// Below state `band`: move up by one w.p. 1 - alpha, else reset to a geometric
/// law g(k) = (1 - beta) beta^(k-1). At or above `band`: always reset.
/// Envelope: N_eps = max(band, ceil(log eps / log beta)).
class ResetFamily final : public RowFamily {
 public:
  ResetFamily(double alpha, double beta, StateIndex band);
  /// Time-varying reset law with ratio beta(n).
  ResetFamily(double alpha, std::function<double(TimeIndex)> beta, StateIndex band,
              std::string beta_description);

  BuiltinFamily tag() const noexcept override { return BuiltinFamily::Reset; }
  std::string name() const override;
  double entry(TimeIndex n, StateIndex i, StateIndex k) const override;
  double prefix_mass(TimeIndex n, StateIndex i, StateIndex cutoff) const override;
  std::optional<StateIndex> envelope(TimeIndex n, double eps) const override;
  StateIndex bandwidth() const noexcept override { return 1; }

  double beta_at(TimeIndex n) const;

 private:
  double alpha_;
  std::function<double(TimeIndex)> beta_;
  StateIndex band_;
  std::string description_;
};

/// Symmetric +-1 walk; state 1 holds w.p. 1/2. Centred products never see the boundary
/// when the truncation is at least 4n+1 wide for 2n steps.
class RandomWalkFamily final : public RowFamily {
 public:
  BuiltinFamily tag() const noexcept override { return BuiltinFamily::RandomWalk; }
  std::string name() const override { return "random_walk"; }
  double entry(TimeIndex n, StateIndex i, StateIndex k) const override;
  double prefix_mass(TimeIndex n, StateIndex i, StateIndex cutoff) const override;
  std::optional<StateIndex> envelope(TimeIndex, double) const override { return std::nullopt; }
  StateIndex bandwidth() const noexcept override { return 1; }
};

/// Deterministic jump i -> i + shift, shift >= 0.
class ShiftFamily final : public RowFamily {
 public:
  explicit ShiftFamily(StateIndex shift);
  BuiltinFamily tag() const noexcept override { return BuiltinFamily::Shift; }
  std::string name() const override { return "shift"; }
  double entry(TimeIndex n, StateIndex i, StateIndex k) const override;
  double prefix_mass(TimeIndex n, StateIndex i, StateIndex cutoff) const override;
  std::optional<StateIndex> envelope(TimeIndex, double) const override { return std::nullopt; }
  StateIndex bandwidth() const noexcept override { return shift_; }
  StateIndex shift() const noexcept { return shift_; }

 private:
  StateIndex shift_;
};

/// Finite probe budget behind every tightness verdict.
struct ProbeConfig {
  StateIndex probe_states = 200;        // rows 1..probe_states are always checked
  StateIndex counterexample_cutoff = 1000;  // N used when searching for a counterexample
  StateIndex max_cutoff = 1'000'000;    // tables above this count as divergent
};

enum class TightVerdict { Tight, NotTight, Undetermined, CertificateViolation };

struct EnvelopeEntry {
  double eps = 0.0;
  std::optional<StateIndex> cutoff;
};

struct Counterexample {
  StateIndex state = 0;
  double eps = 0.0;
  StateIndex cutoff = 0;
  double mass = 0.0;  // sum_{k <= cutoff} p(state, k) < 1 - eps
};

struct TimeTightness {
  TimeIndex n = 0;
  TightVerdict verdict = TightVerdict::Undetermined;
  std::vector<EnvelopeEntry> table;
  std::optional<Counterexample> counterexample;
};

struct ConditionPReport {
  std::vector<TimeTightness> times;
  bool holds = false;  // every probed time tight
  ProbeConfig probes;
};

ConditionPReport condition_p_check(const RowFamily& family, const std::vector<TimeIndex>& times,
                                   const std::vector<double>& eps_grid,
                                   const ProbeConfig& probes = {});

struct ConditionUReport {
  bool uniform = false;
  std::vector<EnvelopeEntry> table;  // max over probed times
  bool growth_detected = false;      // deeper times need larger cutoffs
  std::string reason;
  ConditionPReport per_time;
};

/// Uniform when every probed time is tight and, for each eps, the cutoffs needed
/// at the deeper half of the probed times do not exceed those at the shallower half.
ConditionUReport condition_u_check(const RowFamily& family, const std::vector<TimeIndex>& times,
                                   const std::vector<double>& eps_grid,
                                   const ProbeConfig& probes = {});

/// P_n restricted to {1..M}, rows renormalized. Rows with no mass inside are flagged
/// and left zero.
struct TruncatedStep {
  TimeIndex n = 0;
  Matrix entries;
  std::vector<double> leaked;               // 1 - mass inside, per row
  std::vector<double> renormalization;      // factor applied, per row
  double mass_defect = 0.0;                 // max leaked over rows 1..M
  std::vector<StateIndex> flagged;
};

TruncatedStep truncate(const RowFamily& family, TimeIndex n, StateIndex m);

struct TruncatedModel {
  ChainModel model;
  std::vector<double> step_defects;
  /// Union bound on the TV error of any product over the window.
  double total_defect() const;
};

/// Throws Infeasible if any row is flagged.
TruncatedModel truncate_chain(const RowFamily& family, Window window, StateIndex m);

struct RwBoundRow {
  std::int64_t n = 0;
  double exact = 0.0;  // (1/2)^(2n) C(2n, n), evaluated with lgamma
  double bound = 0.0;  // sqrt(e / (2 pi)) n^(-1/2)
  bool holds = false;
};

double central_binomial_probability(std::int64_t n);
double rw_stirling_bound(std::int64_t n);
std::vector<RwBoundRow> rw_bound_check(const std::vector<std::int64_t>& ns);

/// Largest entry of the centred row of the 2n-step truncated random-walk product.
/// Centre state 2n+1; needs m >= 4n+1.
double rw_max_row_entry(std::int64_t n, StateIndex m);

struct ShiftDemo {
  StateIndex shift = 0;
  StateIndex base = 0;
  bool onto_modulo_shift = false;  // every state above `shift` has a preimage in the truncation
  std::vector<Distribution> laws;  // m_n = delta at base + n * shift
  double recursion_residual = 0.0;
};

/// Throws Infeasible if the delta path leaves {1..m} inside the window.
ShiftDemo shift_family_checks(StateIndex shift, StateIndex m, Window window, StateIndex base);

struct TruncatedEntrance {
  EntranceLaw law;
  double defect_bound = 0.0;
  UniquenessReport uniqueness;
};

/// Anchored entrance law at the window end on the truncation, anchor at state 1.
TruncatedEntrance truncated_entrance_law(const RowFamily& family, Window window, StateIndex m,
                                         double tol);

}  // namespace nhmc

#endif  // NHMC_COUNTABLE_HPP
