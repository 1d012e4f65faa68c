#include "nhmc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace nhmc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trajectory_seed(std::uint64_t root_seed, std::uint64_t index) {
  return splitmix64(splitmix64(root_seed) ^ index);
}

double unit_interval_open_closed(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

Eigen::Index sample_categorical(const RowVector& row, double u) {
  double cum = 0.0;
  Eigen::Index last_positive = -1;
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    if (row(j) <= 0.0) continue;
    cum += row(j);
    last_positive = j;
    if (u <= cum) return j + 1;
  }
  if (last_positive < 0) throw Error(ErrorKind::InvalidArgument, "cannot sample from a zero row");
  return last_positive + 1;
}

TrajectoryBatch::TrajectoryBatch(TimeIndex first, TimeIndex horizon, std::int64_t count)
    : first_(first), horizon_(horizon), count_(count),
      states_(static_cast<std::size_t>(count * (horizon - first + 1)), 0) {}

std::int32_t TrajectoryBatch::state(std::int64_t trajectory, TimeIndex n) const {
  return states_[static_cast<std::size_t>(trajectory * (horizon_ - first_ + 1) + (n - first_))];
}

void TrajectoryBatch::set_state(std::int64_t trajectory, TimeIndex n, std::int32_t s) {
  states_[static_cast<std::size_t>(trajectory * (horizon_ - first_ + 1) + (n - first_))] = s;
}

TrajectoryBatch simulate(const ChainModel& model, const Distribution& initial,
                         const SimConfig& config) {
  const Window& w = model.window();
  if (config.n_trajectories < 1) {
    throw Error(ErrorKind::InvalidArgument, "need at least one trajectory");
  }
  if (!w.contains(initial.time()) || config.horizon < initial.time() || config.horizon > w.end) {
    throw Error(ErrorKind::OutOfWindow, "simulation horizon outside window");
  }
  TrajectoryBatch batch(initial.time(), config.horizon, config.n_trajectories);

  auto run = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t traj = begin; traj < end; ++traj) {
      std::mt19937_64 gen(trajectory_seed(config.root_seed, static_cast<std::uint64_t>(traj)));
      auto state = sample_categorical(initial.probs(), unit_interval_open_closed(gen()));
      batch.set_state(traj, initial.time(), static_cast<std::int32_t>(state));
      for (TimeIndex n = initial.time(); n < config.horizon; ++n) {
        const Matrix& p = model.step(n).entries();
        state = sample_categorical(p.row(state - 1), unit_interval_open_closed(gen()));
        batch.set_state(traj, n + 1, static_cast<std::int32_t>(state));
      }
    }
  };

  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1) {
    run(0, config.n_trajectories);
  } else {
    std::vector<std::jthread> pool;
    const std::int64_t chunk = (config.n_trajectories + workers - 1) / workers;
    for (unsigned k = 0; k < workers; ++k) {
      const std::int64_t b = std::min<std::int64_t>(k * chunk, config.n_trajectories);
      const std::int64_t e = std::min<std::int64_t>(b + chunk, config.n_trajectories);
      if (b < e) pool.emplace_back(run, b, e);
    }
  }
  return batch;
}

Estimate make_estimate(std::int64_t hits, std::int64_t total) {
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(total))};
}

EmpiricalReport empirical_band_report(const TrajectoryBatch& batch, const ChainModel& model,
                                      const HarmonicSequence& h, const BandPartition& bands,
                                      const TailEventSpec& event, const SimConfig& config) {
  // decided[traj]: -1 undecided, 0 not in A, 1 in A
  std::vector<std::int8_t> decided(static_cast<std::size_t>(batch.size()), -1);
  if (const auto* abs = std::get_if<AbsorptionEvent>(&event)) {
    const std::vector<Eigen::Index> absorbing = absorbing_states(model);
    for (std::int64_t traj = 0; traj < batch.size(); ++traj) {
      const Eigen::Index s = batch.state(traj, batch.horizon());
      if (std::find(abs->targets.begin(), abs->targets.end(), s) != abs->targets.end()) {
        decided[static_cast<std::size_t>(traj)] = 1;
      } else if (std::find(absorbing.begin(), absorbing.end(), s) != absorbing.end()) {
        decided[static_cast<std::size_t>(traj)] = 0;
      }
    }
  } else {
    const auto& seed = std::get<TerminalSeed>(event);
    for (Eigen::Index i = 0; i < seed.values.size(); ++i) {
      if (seed.values(i) != 0.0 && seed.values(i) != 1.0) {
        throw Error(ErrorKind::InvalidArgument,
                    "terminal seed takes values other than 0 and 1; the event is not decidable "
                    "from a finite trajectory, use exact band probabilities instead");
      }
    }
    if (batch.horizon() < seed.horizon) {
      throw Error(ErrorKind::InvalidArgument, "trajectories stop before the seed horizon");
    }
    for (std::int64_t traj = 0; traj < batch.size(); ++traj) {
      const auto s = batch.state(traj, seed.horizon);
      decided[static_cast<std::size_t>(traj)] = seed.values(s - 1) == 1.0 ? 1 : 0;
    }
  }

  std::int64_t in_event = 0;
  std::int64_t undecided = 0;
  for (std::int8_t d : decided) {
    in_event += d == 1;
    undecided += d == -1;
  }

  EmpiricalReport report;
  for (TimeIndex n : config.checkpoints) {
    if (n < batch.first() || n > batch.horizon() || n > h.last) {
      throw Error(ErrorKind::OutOfWindow, "checkpoint " + std::to_string(n) +
                                              " outside simulated range");
    }
    const RowVector& hn = h.at(n);
    std::int64_t low = 0, mid = 0, high = 0, disagree = 0;
    for (std::int64_t traj = 0; traj < batch.size(); ++traj) {
      const auto s = batch.state(traj, n);
      const auto band = BandPartition::classify(hn(s - 1), bands.p, bands.q);
      const bool in_b = band == BandPartition::Band::High;
      low += band == BandPartition::Band::Low;
      mid += band == BandPartition::Band::Mid;
      high += in_b;
      const std::int8_t d = decided[static_cast<std::size_t>(traj)];
      if (d >= 0 && (d == 1) != in_b) ++disagree;
    }
    const std::int64_t total = batch.size();
    report.checkpoints.push_back({n, make_estimate(low, total), make_estimate(mid, total),
                                  make_estimate(high, total), make_estimate(in_event, total),
                                  make_estimate(disagree, total), make_estimate(undecided, total)});
  }
  return report;
}

}  // namespace nhmc
