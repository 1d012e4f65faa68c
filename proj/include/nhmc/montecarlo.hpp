#ifndef NHMC_MONTECARLO_HPP
#define NHMC_MONTECARLO_HPP

#include "nhmc/tail.hpp"

#include <cstdint>
#include <vector>

namespace nhmc {

struct SimConfig {
  std::int64_t n_trajectories = 1;
  TimeIndex horizon = 0;
  std::uint64_t root_seed = 0;
  std::vector<TimeIndex> checkpoints;
  unsigned workers = 1;  // results do not depend on this
};

/// Seed of trajectory `index`: two rounds of SplitMix64 over root and index.
/// Part of the reproducibility contract; do not change.
std::uint64_t trajectory_seed(std::uint64_t root_seed, std::uint64_t index);

/// Uniform on (0, 1] with 53 random bits from a 64-bit draw.
double unit_interval_open_closed(std::uint64_t bits);

/// Smallest 1-based j with u <= cumsum(row)[j]; zero-mass states are never
/// returned. Falls back to the last positive entry if rounding leaves u above the total.
Eigen::Index sample_categorical(const RowVector& row, double u);

/// States (1-based) of every trajectory from the initial time to the horizon.
class TrajectoryBatch {
 public:
  TrajectoryBatch(TimeIndex first, TimeIndex horizon, std::int64_t count);

  TimeIndex first() const noexcept { return first_; }
  TimeIndex horizon() const noexcept { return horizon_; }
  std::int64_t size() const noexcept { return count_; }
  std::int32_t state(std::int64_t trajectory, TimeIndex n) const;
  void set_state(std::int64_t trajectory, TimeIndex n, std::int32_t s);
  const std::vector<std::int32_t>& raw() const noexcept { return states_; }

 private:
  TimeIndex first_;
  TimeIndex horizon_;
  std::int64_t count_;
  std::vector<std::int32_t> states_;
};

/// Trajectory i uses std::mt19937_64 seeded with trajectory_seed(root_seed, i).
TrajectoryBatch simulate(const ChainModel& model, const Distribution& initial,
                         const SimConfig& config);

struct Estimate {
  double value = 0.0;
  double se = 0.0;  // sqrt(p(1-p)/n)
};

Estimate make_estimate(std::int64_t hits, std::int64_t total);

struct EmpiricalCheckpoint {
  TimeIndex n = 0;
  Estimate low, mid, high;
  Estimate event;       // A decided at the horizon
  Estimate sym_diff;    // A xor B_n among decided trajectories, over all trajectories
  Estimate undecided;   // not yet absorbed at the horizon
};

struct EmpiricalReport {
  std::vector<EmpiricalCheckpoint> checkpoints;
};

/// Refuses (InvalidArgument) for terminal seeds with values other than 0 or 1,
/// since membership in A is then not visible on a finite trajectory.
EmpiricalReport empirical_band_report(const TrajectoryBatch& batch, const ChainModel& model,
                                      const HarmonicSequence& h, const BandPartition& bands,
                                      const TailEventSpec& event, const SimConfig& config);

}  // namespace nhmc

#endif  // NHMC_MONTECARLO_HPP
