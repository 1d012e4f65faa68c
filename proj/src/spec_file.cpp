#include "nhmc/spec_file.hpp"

#include "nhmc/builtins.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace nhmc {

using json = nlohmann::json;

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
  return *it;
}

template <class T>
T get_as(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    fail(where, e.what());
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

RowVector vector_of(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  RowVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = number(v[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

Violation document_problem(TimeIndex t, std::string message) {
  return {ViolationKind::Document, t, std::nullopt, 0.0, std::move(message)};
}

void parse_explicit(const json& list, ChainSpec& spec) {
  const Window w = spec.window;
  std::vector<std::optional<Matrix>> by_time(static_cast<std::size_t>(w.length()));
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "matrices[" + std::to_string(k) + "]";
    const json& item = list[k];
    const TimeIndex t = integer(require(item, "time", where), where + ".time");
    const auto rows = integer(require(item, "rows", where), where + ".rows");
    const auto cols = integer(require(item, "cols", where), where + ".cols");
    const json& entries = require(item, "entries", where);
    if (!entries.is_array() || static_cast<std::int64_t>(entries.size()) != rows) {
      fail(where + ".entries", "expected " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i) {
      const std::string rw = where + ".entries[" + std::to_string(i) + "]";
      const RowVector r = vector_of(entries[static_cast<std::size_t>(i)], rw);
      if (r.size() != cols) fail(rw, "expected " + std::to_string(cols) + " columns");
      m.row(i) = r;
    }
    if (t < w.start || t >= w.end) {
      spec.problems.push_back(document_problem(t, where + " has time " + std::to_string(t) +
                                                      " outside the window"));
      continue;
    }
    auto& slot = by_time[static_cast<std::size_t>(t - w.start)];
    if (slot) {
      spec.problems.push_back(document_problem(t, "two matrices given for time " + std::to_string(t)));
      continue;
    }
    slot = std::move(m);
  }
  std::vector<Matrix> steps;
  for (std::size_t k = 0; k < by_time.size(); ++k) {
    if (!by_time[k]) {
      spec.problems.push_back(document_problem(w.start + static_cast<TimeIndex>(k),
                                               "no matrix for time " +
                                                   std::to_string(w.start + static_cast<TimeIndex>(k))));
    } else {
      steps.push_back(*by_time[k]);
    }
  }
  if (steps.size() == by_time.size()) {
    spec.chain.emplace(w, std::move(steps), std::nullopt, spec.tolerances.stochastic);
  }
}

void parse_builtin(const json& obj, ChainSpec& spec) {
  const std::string family = get_as<std::string>(require(obj, "family", "matrices"), "matrices.family");
  const json params = obj.contains("params") ? obj.at("params") : json::object();
  if (!params.is_object()) fail("matrices.params", "expected an object");
  auto param = [&](const char* key, double fallback) {
    return params.contains(key) ? number(params.at(key), std::string("matrices.params.") + key)
                                : fallback;
  };
  auto int_param = [&](const char* key, std::int64_t fallback) {
    return params.contains(key) ? integer(params.at(key), std::string("matrices.params.") + key)
                                : fallback;
  };
  spec.source = family;
  const Window w = spec.window;

  try {
    if (family == "permutation2") {
      spec.chain = permutation2(w);
    } else if (family == "alt_dim") {
      spec.chain = alternating_dimension(w);
    } else if (family == "reset") {
      const double alpha = param("alpha", 0.5);
      const auto band = int_param("band", 3);
      if (params.contains("beta_to_one")) {
        // beta_n = 1 - 1 / (|n| + offset): the reset law spreads out as n -> -infinity
        const double offset = param("beta_to_one", 2.0);
        if (!(offset > 1.0)) fail("matrices.params.beta_to_one", "offset must exceed 1");
        spec.family = std::make_shared<ResetFamily>(
            alpha, [offset](TimeIndex n) { return 1.0 - 1.0 / (std::abs(static_cast<double>(n)) + offset); },
            band, "beta_n=1-1/(|n|+" + std::to_string(offset) + ")");
      } else {
        spec.family = std::make_shared<ResetFamily>(alpha, param("beta", 0.5), band);
      }
    } else if (family == "random_walk") {
      spec.family = std::make_shared<RandomWalkFamily>();
    } else if (family == "shift") {
      const auto ell = int_param("ell", 1);
      spec.family = std::make_shared<ShiftFamily>(ell);
      spec.shift_base = int_param("base", 1 - w.start * ell);
    } else {
      fail("matrices.family", "unknown family '" + family + "'");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    spec.problems.push_back(document_problem(w.start, e.what()));
  }
}

TailEventSpec parse_tail_event(const json& obj) {
  const std::string type = get_as<std::string>(require(obj, "type", "tail_event"), "tail_event.type");
  if (type == "absorption") {
    const json& targets = require(obj, "targets", "tail_event");
    if (!targets.is_array()) fail("tail_event.targets", "expected an array");
    AbsorptionEvent ev;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      ev.targets.push_back(integer(targets[i], "tail_event.targets[" + std::to_string(i) + "]"));
    }
    return ev;
  }
  if (type == "terminal_seed") {
    TerminalSeed seed;
    seed.horizon = integer(require(obj, "horizon", "tail_event"), "tail_event.horizon");
    seed.values = vector_of(require(obj, "values", "tail_event"), "tail_event.values");
    return seed;
  }
  fail("tail_event.type", "unknown type '" + type + "'");
}

}  // namespace

ChainSpec parse_chain_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");

  ChainSpec spec;
  spec.hash = fnv1a64_hex(text);
  spec.source = "explicit";

  if (doc.contains("tolerances")) {
    const json& tol = doc.at("tolerances");
    if (!tol.is_object()) fail("tolerances", "expected an object");
    if (tol.contains("stochastic")) spec.tolerances.stochastic = number(tol.at("stochastic"), "tolerances.stochastic");
    if (tol.contains("convergence")) spec.tolerances.convergence = number(tol.at("convergence"), "tolerances.convergence");
    if (tol.contains("dedup")) spec.tolerances.dedup = number(tol.at("dedup"), "tolerances.dedup");
  }

  const json& window = require(doc, "window", "document");
  spec.window.start = integer(require(window, "start", "window"), "window.start");
  spec.window.end = integer(require(window, "end", "window"), "window.end");
  if (spec.window.end < spec.window.start) fail("window", "end precedes start");

  if (doc.contains("truncation")) {
    spec.truncation = integer(require(doc.at("truncation"), "M", "truncation"), "truncation.M");
    if (spec.truncation < 1) fail("truncation.M", "must be at least 1");
  }

  const json& matrices = require(doc, "matrices", "document");
  if (matrices.is_array()) {
    parse_explicit(matrices, spec);
  } else if (matrices.is_object()) {
    parse_builtin(matrices, spec);
  } else {
    fail("matrices", "expected an array of matrices or a builtin family object");
  }

  if (spec.family && !spec.chain) {
    try {
      spec.chain = truncate_chain(*spec.family, spec.window, spec.truncation).model;
    } catch (const Error& e) {
      spec.truncation_problem = e.what();
    }
  }

  if (doc.contains("initial")) {
    const json& init = doc.at("initial");
    const TimeIndex t = integer(require(init, "time", "initial"), "initial.time");
    const RowVector probs = vector_of(require(init, "probs", "initial"), "initial.probs");
    if (spec.chain) spec.chain = spec.chain->with_initial(Distribution::unchecked(t, probs));
  }

  if (doc.contains("tail_event")) spec.tail_event = parse_tail_event(doc.at("tail_event"));

  if (doc.contains("bands")) {
    const json& b = doc.at("bands");
    spec.bands.p = number(require(b, "p", "bands"), "bands.p");
    spec.bands.q = number(require(b, "q", "bands"), "bands.q");
  }
  if (!(spec.bands.p > 0.0 && spec.bands.p < spec.bands.q && spec.bands.q < 1.0)) {
    spec.problems.push_back(document_problem(0, "bands must satisfy 0 < p < q < 1"));
  }
  return spec;
}

ChainSpec load_chain_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_chain_spec(text);
}

ValidationReport validate_spec(const ChainSpec& spec) {
  ValidationReport report = spec.problems;
  if (!spec.chain) return report;
  const ValidationReport chain = validate_chain(*spec.chain);
  report.insert(report.end(), chain.begin(), chain.end());
  if (chain.empty() && spec.tail_event) {
    try {
      (void)harmonic_backward(*spec.chain, *spec.tail_event);
    } catch (const Error& e) {
      report.push_back(document_problem(spec.window.start, std::string("tail_event: ") + e.what()));
    }
  }
  return report;
}

}  // namespace nhmc
