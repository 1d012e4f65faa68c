#ifndef NHMC_TAIL_HPP
#define NHMC_TAIL_HPP

#include "nhmc/core.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace nhmc {

/// Eventual absorption in `targets` (1-based). Every target must be absorbing
/// under every matrix in the window, and all state spaces must share one size.
struct AbsorptionEvent {
  std::vector<Eigen::Index> targets;
};

/// Event whose conditional probability at `horizon` is given directly.
struct TerminalSeed {
  TimeIndex horizon = 0;
  RowVector values;  // entries in [0, 1]
};

using TailEventSpec = std::variant<AbsorptionEvent, TerminalSeed>;

inline constexpr TimeIndex kDefaultStabilizationSteps = 10;

/// h_n(i) = P(A | Z_n = i) for n in [first, last], with h_n = P_n h_{n+1}.
struct HarmonicSequence {
  TimeIndex first = 0;
  TimeIndex last = 0;
  std::vector<RowVector> values;  // values[n - first]
  /// Sup-norm change of h_first when the horizon moves by the stabilization step.
  /// Absent when the window leaves no room to move it.
  std::optional<double> stabilization_residual;

  const RowVector& at(TimeIndex n) const;
};

/// States i with p_n(i,i) = 1 (within tol) at every n of the window.
std::vector<Eigen::Index> absorbing_states(const ChainModel& model);

HarmonicSequence harmonic_backward(const ChainModel& model, const TailEventSpec& event,
                                   TimeIndex stabilization_steps = kDefaultStabilizationSteps);

/// low = [0,p), mid = [p,q], high = (q,1] applied to h_n. States are 1-based.
struct BandPartition {
  double p = 0.0;
  double q = 0.0;
  TimeIndex first = 0;
  std::vector<std::vector<Eigen::Index>> low, mid, high;  // indexed by n - first

  enum class Band { Low, Mid, High };
  static Band classify(double h, double p, double q);
};

BandPartition band_sets(const HarmonicSequence& h, double p, double q);

struct BandRow {
  TimeIndex n = 0;
  double low = 0.0;   // computed as 1 - (mid + high), so low + (mid + high) == 1 exactly
  double mid = 0.0;
  double high = 0.0;
  double conservation_residual = 0.0;  // |sum_i m_n(i) h_n(i) - P(A)|
};

struct BandProbabilities {
  double prob_event = 0.0;  // P(A) = sum_i m_0(i) h_0(i) at the initial time
  std::vector<BandRow> rows;
};

/// One row per n from initial.time() to h.last.
BandProbabilities band_probabilities(const ChainModel& model, const Distribution& initial,
                                     const HarmonicSequence& h, const BandPartition& bands);

/// Rectangular cylinder {Z_j in allowed[j - k] for all j in [k, n]}; states 1-based.
struct Cylinder {
  TimeIndex k = 0;
  TimeIndex n = 0;
  std::vector<std::vector<Eigen::Index>> allowed;
};

struct BackwardBands {
  TimeIndex k = 0;
  TimeIndex n = 0;
  std::vector<std::optional<double>> conditional;  // P(A_kn | Z_n = i); empty where m_n(i) = 0
  std::vector<Eigen::Index> low, mid, high;        // masked states belong to none
  double prob_low = 0.0;
  double prob_mid = 0.0;
  double prob_high = 0.0;  // P(Z_n in S_kn(q, 1))
  double prob_event = 0.0; // P(A_kn)
  bool impossible = false; // some allowed set is empty
};

BackwardBands backward_band_sets(const ChainModel& model, const Distribution& initial,
                                 const Cylinder& cylinder, double p, double q);

}  // namespace nhmc

#endif  // NHMC_TAIL_HPP
