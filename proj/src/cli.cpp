#include "nhmc/cli.hpp"

#include "nhmc/algebra.hpp"
#include "nhmc/countable.hpp"
#include "nhmc/entrance.hpp"
#include "nhmc/montecarlo.hpp"
#include "nhmc/report.hpp"
#include "nhmc/spec_file.hpp"
#include "nhmc/tail.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>

namespace nhmc::cli {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse:
      return kExitParse;
    case ErrorKind::Infeasible:
    case ErrorKind::OutOfWindow:
      return kExitInfeasible;
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::Validation:
      return kExitValidation;
  }
  return kExitUsage;
}

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct ValidationFailed {
  ojson summary;
};

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::NegativeEntry: return "negative_entry";
    case ViolationKind::RowSum: return "row_sum";
    case ViolationKind::DimensionChain: return "dimension_chain";
    case ViolationKind::InitialTime: return "initial_time";
    case ViolationKind::InitialLength: return "initial_length";
    case ViolationKind::InitialNotDistribution: return "initial_not_distribution";
    case ViolationKind::Document: return "document";
  }
  return "unknown";
}

const char* verdict_name(TightVerdict v) {
  switch (v) {
    case TightVerdict::Tight: return "tight";
    case TightVerdict::NotTight: return "not-tight";
    case TightVerdict::Undetermined: return "undetermined";
    case TightVerdict::CertificateViolation: return "certificate-violation";
  }
  return "unknown";
}

ojson to_json(const RowVector& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ojson to_json(const Matrix& m) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(RowVector(m.row(i))));
  return a;
}

ojson violations_json(const ValidationReport& report) {
  ojson a = ojson::array();
  for (const Violation& v : report) {
    ojson j;
    j["kind"] = violation_name(v.kind);
    j["time"] = v.time;
    j["row"] = v.row ? ojson(*v.row) : ojson(nullptr);
    j["magnitude"] = v.magnitude;
    j["message"] = v.message;
    a.push_back(std::move(j));
  }
  return a;
}

ojson base_summary(const std::string& command, const ChainSpec& spec) {
  ojson s;
  s["command"] = command;
  s["tool_version"] = kToolVersion;
  s["spec_hash"] = spec.hash;
  s["source"] = spec.source;
  s["window"] = {{"start", spec.window.start}, {"end", spec.window.end}};
  s["tolerances"] = {{"stochastic", spec.tolerances.stochastic},
                     {"convergence", spec.tolerances.convergence},
                     {"dedup", spec.tolerances.dedup}};
  return s;
}

ChainSpec load_valid(const std::string& path, const std::string& command) {
  ChainSpec spec = load_chain_spec(path);
  const ValidationReport report = validate_spec(spec);
  if (!report.empty()) {
    ojson s = base_summary(command, spec);
    s["valid"] = false;
    s["violations"] = violations_json(report);
    throw ValidationFailed{std::move(s)};
  }
  return spec;
}

const ChainModel& finite_model(const ChainSpec& spec) {
  if (!spec.chain) {
    throw Error(ErrorKind::Infeasible,
                "no finite model: " + spec.truncation_problem.value_or("spec has no matrices"));
  }
  return *spec.chain;
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error(ErrorKind::InvalidArgument, "cannot create " + dir + ": " + ec.message());
  return p;
}

void emit(const ojson& summary, const fs::path* out_dir, std::ostream& out) {
  const std::string text = summary.dump(2) + "\n";
  if (out_dir) write_text(*out_dir / "summary.json", text);
  out << text;
}

// ---- validate ----

int cmd_validate(const std::string& spec_path, std::ostream& out) {
  const ChainSpec spec = load_chain_spec(spec_path);
  const ValidationReport report = validate_spec(spec);
  ojson s = base_summary("validate", spec);
  s["valid"] = report.empty();
  s["violations"] = violations_json(report);
  if (spec.truncation_problem) s["truncation_note"] = *spec.truncation_problem;
  emit(s, nullptr, out);
  return report.empty() ? kExitOk : kExitValidation;
}

// ---- entrance ----

struct EntranceOptions {
  std::string spec;
  std::string out;
  std::optional<TimeIndex> depth;
  double tol = 1e-10;
};

// Largest TV distance from a row of one set to the nearest row of the other.
double set_distance(const Matrix& a, const Matrix& b) {
  auto one_way = [](const Matrix& x, const Matrix& y) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      double best = 1.0;
      for (Eigen::Index j = 0; j < y.rows(); ++j) {
        best = std::min(best, 0.5 * (x.row(i) - y.row(j)).cwiseAbs().sum());
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

int cmd_entrance(const EntranceOptions& opt, std::ostream& out) {
  const ChainSpec spec = load_valid(opt.spec, "entrance");
  const ChainModel& model = finite_model(spec);
  const TimeIndex t = spec.window.end;
  const TimeIndex depth = opt.depth.value_or(spec.window.length());
  const double dedup = spec.tolerances.dedup;

  const UniquenessReport u = detect_uniqueness(model, t, opt.tol, depth, dedup);
  const fs::path dir = prepare_out(opt.out);

  CsvTable trace({"depth", "s", "diameter"});
  for (std::size_t k = 0; k < u.diameter_trace.size(); ++k) {
    const auto d = static_cast<std::int64_t>(k + 1);
    trace.add_row({d, t - d, u.diameter_trace[k]});
  }
  trace.write(dir / "diameter_trace.csv");

  CsvTable verts({"vertex", "state", "probability"});
  for (std::size_t v = 0; v < u.deepest_vertices.size(); ++v) {
    const RowVector& p = u.deepest_vertices[v].probs();
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      verts.add_row({static_cast<std::int64_t>(v + 1), static_cast<std::int64_t>(j + 1), p(j)});
    }
  }
  verts.write(dir / "vertices.csv");

  std::vector<TimeIndex> all, even, odd;
  for (TimeIndex s = t - 1; s >= t - depth; --s) {
    all.push_back(s);
    (s % 2 == 0 ? even : odd).push_back(s);
  }

  ojson s = base_summary("entrance", spec);
  s["tolerances"]["uniqueness"] = opt.tol;
  s["t"] = t;
  s["depth"] = depth;

  CsvTable limits({"schedule", "row", "col", "value"});
  ojson limit_json;
  std::vector<std::optional<Matrix>> limit_matrices;
  for (const auto& [name, schedule] : {std::pair{"even_s", even}, std::pair{"odd_s", odd}}) {
    ojson j;
    if (schedule.empty()) {
      j["error"] = "empty schedule";
      limit_matrices.push_back(std::nullopt);
      limit_json[name] = j;
      continue;
    }
    const LimitMatrixReport lm = limit_matrix(model, t, schedule, opt.tol);
    if (lm.error) {
      j["error"] = *lm.error;
      limit_matrices.push_back(std::nullopt);
    } else {
      j["converged"] = lm.converged;
      j["unique"] = lm.unique;
      j["last_residual"] = lm.residuals.empty() ? 0.0 : lm.residuals.back();
      j["limit"] = to_json(lm.limit);
      if (lm.unique_law) j["law"] = to_json(lm.unique_law->probs());
      for (Eigen::Index r = 0; r < lm.limit.rows(); ++r) {
        for (Eigen::Index c = 0; c < lm.limit.cols(); ++c) {
          limits.add_row({std::string(name), static_cast<std::int64_t>(r + 1),
                          static_cast<std::int64_t>(c + 1), lm.limit(r, c)});
        }
      }
      limit_matrices.push_back(lm.limit);
    }
    limit_json[name] = j;
  }
  limits.write(dir / "limits.csv");
  s["limits"] = limit_json;

  const NestingReport nest = delta_nesting_check(model, t, all, dedup);
  const EntranceLaw anchored =
      entrance_law(model, delta_distribution(1, model.dim(spec.window.start), spec.window.start),
                   {t}, dedup);

  s["verdicts"] = {{"uniqueness", u.unique ? "unique" : "non-unique"}};
  if (limit_matrices[0] && limit_matrices[1] &&
      limit_matrices[0]->cols() == limit_matrices[1]->cols()) {
    s["verdicts"]["parity_limits_equal_as_sets"] =
        set_distance(*limit_matrices[0], *limit_matrices[1]) <= 1e-12;
  }
  ojson residuals;
  residuals["final_diameter"] = u.diameter_trace.back();
  residuals["nesting_max_residual"] = nest.max_residual;
  residuals["anchor_sensitivity"] = anchored.anchor_sensitivity;
  if (limit_matrices[0] && limit_matrices[1] &&
      limit_matrices[0]->cols() == limit_matrices[1]->cols()) {
    residuals["parity_set_distance"] = set_distance(*limit_matrices[0], *limit_matrices[1]);
  }
  if (spec.family) {
    residuals["truncation_defect_bound"] =
        truncate_chain(*spec.family, spec.window, spec.truncation).total_defect();
  }
  s["residuals"] = residuals;
  s["law"] = u.law ? to_json(u.law->probs()) : ojson(nullptr);
  s["anchored_law"] = to_json(anchored.laws.front().probs());
  emit(s, &dir, out);
  return kExitOk;
}

// ---- zeroone ----

struct ZeroOneOptions {
  std::string spec;
  std::string out;
  std::optional<std::int64_t> simulate;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<TimeIndex> horizon;
};

int cmd_zeroone(const ZeroOneOptions& opt, std::ostream& out) {
  const ChainSpec spec = load_valid(opt.spec, "zeroone");
  const ChainModel& model = finite_model(spec);
  if (!spec.tail_event) throw Error(ErrorKind::Validation, "zeroone needs a tail_event in the spec");
  if (!model.initial()) throw Error(ErrorKind::Validation, "zeroone needs an initial distribution");
  const Distribution& initial = *model.initial();

  const HarmonicSequence h = harmonic_backward(model, *spec.tail_event);
  const BandPartition bands = band_sets(h, spec.bands.p, spec.bands.q);
  const BandProbabilities bp = band_probabilities(model, initial, h, bands);

  std::optional<EmpiricalReport> emp;
  SimConfig config;
  if (opt.simulate) {
    config.n_trajectories = *opt.simulate;
    config.horizon = opt.horizon.value_or(h.last);
    config.root_seed = opt.seed;
    config.workers = opt.workers;
    for (const BandRow& r : bp.rows) {
      if (r.n <= config.horizon) config.checkpoints.push_back(r.n);
    }
    const TrajectoryBatch batch = simulate(model, initial, config);
    emp = empirical_band_report(batch, model, h, bands, *spec.tail_event, config);
  }

  const fs::path dir = prepare_out(opt.out);
  std::vector<std::string> cols{"n", "P_low", "P_mid", "P_high", "P_A", "conservation_residual"};
  if (emp) {
    for (const char* c : {"emp_low", "se_low", "emp_mid", "se_mid", "emp_high", "se_high", "emp_A",
                          "se_A", "emp_sym_diff", "se_sym_diff", "emp_undecided", "emp_mask"}) {
      cols.emplace_back(c);
    }
  }
  CsvTable table(cols);
  double max_conservation = 0.0;
  std::size_t next_checkpoint = 0;
  for (const BandRow& r : bp.rows) {
    max_conservation = std::max(max_conservation, r.conservation_residual);
    std::vector<Cell> row{r.n, r.low, r.mid, r.high, bp.prob_event, r.conservation_residual};
    if (emp) {
      if (next_checkpoint < emp->checkpoints.size() && emp->checkpoints[next_checkpoint].n == r.n) {
        const EmpiricalCheckpoint& c = emp->checkpoints[next_checkpoint++];
        for (const Estimate& e : {c.low, c.mid, c.high, c.event, c.sym_diff}) {
          row.emplace_back(e.value);
          row.emplace_back(e.se);
        }
        row.emplace_back(c.undecided.value);
        row.emplace_back(std::int64_t{0});
      } else {
        row.resize(row.size() + 11);
        row.emplace_back(std::int64_t{1});
      }
    }
    table.add_row(std::move(row));
  }
  table.write(dir / "bands.csv");

  CsvTable harmonic({"n", "state", "h"});
  for (TimeIndex n = h.first; n <= h.last; ++n) {
    const RowVector& v = h.at(n);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      harmonic.add_row({n, static_cast<std::int64_t>(i + 1), v(i)});
    }
  }
  harmonic.write(dir / "harmonic.csv");

  ojson s = base_summary("zeroone", spec);
  s["bands"] = {{"p", spec.bands.p}, {"q", spec.bands.q}};
  s["P_A"] = bp.prob_event;
  const BandRow& last = bp.rows.back();
  s["verdicts"] = {{"mid_band_vanishes", last.mid <= spec.tolerances.convergence},
                   {"high_band_matches_event",
                    std::abs(last.high - bp.prob_event) <= spec.tolerances.convergence}};
  ojson residuals;
  residuals["final_P_mid"] = last.mid;
  residuals["final_high_gap"] = std::abs(last.high - bp.prob_event);
  residuals["max_conservation_residual"] = max_conservation;
  residuals["stabilization_residual"] =
      h.stabilization_residual ? ojson(*h.stabilization_residual) : ojson(nullptr);
  if (emp && !emp->checkpoints.empty()) {
    residuals["final_emp_sym_diff"] = emp->checkpoints.back().sym_diff.value;
  }
  s["residuals"] = residuals;
  if (emp) {
    s["seeds"] = {{"root_seed", config.root_seed},
                  {"n_trajectories", config.n_trajectories},
                  {"horizon", config.horizon},
                  {"workers", config.workers}};
  } else {
    s["seeds"] = nullptr;
  }
  emit(s, &dir, out);
  return kExitOk;
}

// ---- countable ----

struct CountableOptions {
  std::string spec;
  std::string out;
  std::vector<double> eps{0.1, 0.01, 0.001, 1e-6};
  StateIndex probe_states = ProbeConfig{}.probe_states;
};

int cmd_countable(const CountableOptions& opt, std::ostream& out) {
  const ChainSpec spec = load_valid(opt.spec, "countable");
  if (!spec.family) {
    throw Error(ErrorKind::Validation, "countable needs a countable builtin family (reset, random_walk, shift)");
  }
  const RowFamily& family = *spec.family;
  std::vector<TimeIndex> times;
  for (TimeIndex n = spec.window.start; n < spec.window.end; ++n) times.push_back(n);
  if (times.empty()) throw Error(ErrorKind::Infeasible, "empty window");

  ProbeConfig probes;
  probes.probe_states = opt.probe_states;
  const ConditionUReport cu = condition_u_check(family, times, opt.eps, probes);
  const ConditionPReport& cp = cu.per_time;
  const fs::path dir = prepare_out(opt.out);

  CsvTable tight({"n", "verdict", "eps", "cutoff", "cutoff_masked", "cx_state", "cx_cutoff",
                  "cx_mass", "cx_masked"});
  for (const TimeTightness& tt : cp.times) {
    for (const EnvelopeEntry& e : tt.table) {
      std::vector<Cell> row{tt.n, std::string(verdict_name(tt.verdict)), e.eps};
      if (e.cutoff) {
        row.insert(row.end(), {Cell{*e.cutoff}, Cell{std::int64_t{0}}});
      } else {
        row.insert(row.end(), {Cell{}, Cell{std::int64_t{1}}});
      }
      if (tt.counterexample && tt.counterexample->eps == e.eps) {
        const Counterexample& c = *tt.counterexample;
        row.insert(row.end(), {Cell{c.state}, Cell{c.cutoff}, Cell{c.mass}, Cell{std::int64_t{0}}});
      } else {
        row.insert(row.end(), {Cell{}, Cell{}, Cell{}, Cell{std::int64_t{1}}});
      }
      tight.add_row(std::move(row));
    }
  }
  tight.write(dir / "tightness.csv");

  CsvTable uniform({"eps", "cutoff", "cutoff_masked"});
  for (const EnvelopeEntry& e : cu.table) {
    if (e.cutoff) {
      uniform.add_row({e.eps, *e.cutoff, std::int64_t{0}});
    } else {
      uniform.add_row({e.eps, Cell{}, std::int64_t{1}});
    }
  }
  uniform.write(dir / "uniform.csv");

  CsvTable trunc({"n", "M", "mass_defect", "flagged_rows"});
  for (TimeIndex n : times) {
    const TruncatedStep step = truncate(family, n, spec.truncation);
    trunc.add_row({n, spec.truncation, step.mass_defect, static_cast<std::int64_t>(step.flagged.size())});
  }
  trunc.write(dir / "truncation.csv");

  ojson s = base_summary("countable", spec);
  s["truncation"] = spec.truncation;
  s["probes"] = {{"probe_states", probes.probe_states},
                 {"counterexample_cutoff", probes.counterexample_cutoff},
                 {"max_cutoff", probes.max_cutoff}};
  s["eps_grid"] = opt.eps;
  ojson verdicts;
  verdicts["family"] = family.name();
  verdicts["condition_p"] = cp.holds;
  verdicts["condition_u"] = cu.uniform;
  verdicts["growth_detected"] = cu.growth_detected;
  verdicts["reason"] = cu.reason;
  {
    std::vector<TightVerdict> all;
    for (const TimeTightness& tt : cp.times) all.push_back(tt.verdict);
    const bool same = std::all_of(all.begin(), all.end(), [&](TightVerdict v) { return v == all.front(); });
    verdicts["tightness"] = same ? verdict_name(all.front()) : "mixed";
  }
  ojson counterexamples = ojson::array();
  for (const TimeTightness& tt : cp.times) {
    if (!tt.counterexample) continue;
    counterexamples.push_back({{"n", tt.n},
                               {"state", tt.counterexample->state},
                               {"eps", tt.counterexample->eps},
                               {"cutoff", tt.counterexample->cutoff},
                               {"mass", tt.counterexample->mass}});
    if (counterexamples.size() == 1) verdicts["first_counterexample_state"] = tt.counterexample->state;
  }
  s["counterexamples"] = counterexamples;
  ojson residuals;

  if (family.tag() == BuiltinFamily::RandomWalk) {
    std::vector<std::int64_t> ns(1000);
    for (std::int64_t n = 1; n <= 1000; ++n) ns[static_cast<std::size_t>(n - 1)] = n;
    CsvTable rw({"n", "exact", "bound", "holds"});
    bool all_hold = true;
    for (const RwBoundRow& r : rw_bound_check(ns)) {
      rw.add_row({r.n, r.exact, r.bound, std::int64_t{r.holds ? 1 : 0}});
      all_hold = all_hold && r.holds;
    }
    rw.write(dir / "rw_bound.csv");
    verdicts["rw_bound_holds"] = all_hold;

    CsvTable rwt({"n", "M", "max_entry", "exact", "abs_diff"});
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 50; ++n) {
      const StateIndex m = 4 * n + 1;
      const double got = rw_max_row_entry(n, m);
      const double exact = central_binomial_probability(n);
      worst = std::max(worst, std::abs(got - exact));
      rwt.add_row({n, m, got, exact, std::abs(got - exact)});
    }
    rwt.write(dir / "rw_truncated.csv");
    residuals["rw_truncated_max_abs_diff"] = worst;
  }

  if (family.tag() == BuiltinFamily::Shift) {
    const auto& shift = static_cast<const ShiftFamily&>(family);
    const ShiftDemo demo = shift_family_checks(shift.shift(), spec.truncation, spec.window, spec.shift_base);
    CsvTable sd({"n", "state", "probability"});
    for (const Distribution& d : demo.laws) {
      for (Eigen::Index j = 0; j < d.size(); ++j) {
        if (d[j] != 0.0) sd.add_row({d.time(), static_cast<std::int64_t>(j + 1), d[j]});
      }
    }
    sd.write(dir / "shift_demo.csv");
    verdicts["onto_modulo_shift"] = demo.onto_modulo_shift;
    s["shift"] = {{"ell", demo.shift}, {"base", demo.base}};
    residuals["shift_recursion_residual"] = demo.recursion_residual;
  }

  if (family.tag() == BuiltinFamily::Reset) {
    const TruncatedEntrance te =
        truncated_entrance_law(family, spec.window, spec.truncation, spec.tolerances.convergence);
    CsvTable law({"state", "probability"});
    const RowVector& p = te.law.laws.front().probs();
    for (Eigen::Index j = 0; j < p.size(); ++j) law.add_row({static_cast<std::int64_t>(j + 1), p(j)});
    law.write(dir / "entrance_law.csv");
    verdicts["truncated_uniqueness"] = te.uniqueness.unique ? "unique" : "non-unique";
    residuals["truncation_defect_bound"] = te.defect_bound;
    residuals["truncated_final_diameter"] = te.uniqueness.diameter_trace.back();
    residuals["anchor_sensitivity"] = te.law.anchor_sensitivity;
  }

  s["verdicts"] = verdicts;
  s["residuals"] = residuals;
  emit(s, &dir, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis of nonhomogeneous Markov chains", "nhmc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string validate_spec_path;
  auto* validate = app.add_subcommand("validate", "Check a chain spec");
  validate->add_option("--spec", validate_spec_path, "Chain spec (JSON)")->required();

  EntranceOptions eopt;
  auto* entrance = app.add_subcommand("entrance", "Entrance-law uniqueness via backward products");
  entrance->add_option("--spec", eopt.spec, "Chain spec (JSON)")->required();
  entrance->add_option("--out", eopt.out, "Output directory")->required();
  entrance->add_option("--depth", eopt.depth, "Backward depth below the window end")
      ->check(CLI::PositiveNumber);
  entrance->add_option("--tol", eopt.tol, "Diameter tolerance for the uniqueness verdict")->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  ZeroOneOptions zopt;
  auto* zeroone = app.add_subcommand("zeroone", "Exact and simulated band probabilities for a tail event");
  zeroone->add_option("--spec", zopt.spec, "Chain spec (JSON)")->required();
  zeroone->add_option("--out", zopt.out, "Output directory")->required();
  zeroone->add_option("--simulate", zopt.simulate, "Number of trajectories")->check(CLI::PositiveNumber);
  zeroone->add_option("--seed", zopt.seed, "Root seed")->capture_default_str();
  zeroone->add_option("--workers", zopt.workers, "Simulation threads")->capture_default_str()->check(CLI::PositiveNumber);
  zeroone->add_option("--horizon", zopt.horizon, "Simulation horizon (default: end of the harmonic sequence)");

  CountableOptions copt;
  auto* countable = app.add_subcommand("countable", "Tightness tables and truncation reports for countable families");
  countable->add_option("--spec", copt.spec, "Chain spec (JSON)")->required();
  countable->add_option("--out", copt.out, "Output directory")->required();
  countable->add_option("--eps", copt.eps, "Tail-mass levels")->capture_default_str();
  countable->add_option("--probe-states", copt.probe_states, "Rows probed per time")->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_spec_path, out);
    if (*entrance) return cmd_entrance(eopt, out);
    if (*zeroone) return cmd_zeroone(zopt, out);
    if (*countable) return cmd_countable(copt, out);
  } catch (const ValidationFailed& v) {
    emit(v.summary, nullptr, out);
    err << "error: spec failed validation\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace nhmc::cli
