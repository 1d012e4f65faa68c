#include "nhmc/spec_file.hpp"

#include <doctest.h>

using namespace nhmc;

namespace {

ErrorKind parse_error_kind(const std::string& text) {
  try {
    (void)parse_chain_spec(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse failure");
  return ErrorKind::InvalidArgument;
}

const char* kExplicit = R"({
  "window": {"start": 0, "end": 2},
  "matrices": [
    {"time": 1, "rows": 2, "cols": 2, "entries": [[0.5, 0.5], [0.1, 0.9]]},
    {"time": 0, "rows": 2, "cols": 2, "entries": [[1, 0], [0.25, 0.75]]}
  ],
  "initial": {"time": 0, "probs": [0.5, 0.5]},
  "tail_event": {"type": "terminal_seed", "horizon": 2, "values": [0, 1]},
  "bands": {"p": 0.2, "q": 0.8},
  "tolerances": {"stochastic": 1e-10, "convergence": 1e-8, "dedup": 1e-7}
})";

}  // namespace

TEST_CASE("explicit matrices in any order") {
  const ChainSpec s = parse_chain_spec(kExplicit);
  REQUIRE(s.chain.has_value());
  CHECK(s.source == "explicit");
  CHECK(s.chain->step(0).entries()(1, 0) == 0.25);
  CHECK(s.chain->step(1).entries()(1, 1) == 0.9);
  CHECK(s.chain->initial()->time() == 0);
  CHECK(s.chain->tol() == 1e-10);
  CHECK(s.bands.p == 0.2);
  CHECK(s.tolerances.dedup == 1e-7);
  CHECK(std::holds_alternative<TerminalSeed>(*s.tail_event));
  CHECK(validate_spec(s).empty());
  CHECK(s.hash == fnv1a64_hex(kExplicit));
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("builtin families") {
  const ChainSpec perm = parse_chain_spec(R"({"window": {"start": -4, "end": 0}, "matrices": {"family": "permutation2"}})");
  CHECK(perm.source == "permutation2");
  CHECK(perm.chain->step(-2).entries()(0, 1) == 1.0);

  const ChainSpec alt = parse_chain_spec(R"({"window": {"start": -4, "end": 0}, "matrices": {"family": "alt_dim", "params": {}}})");
  CHECK(alt.chain->dim(0) == 2);
  CHECK(alt.chain->dim(-1) == 1);

  const ChainSpec reset = parse_chain_spec(
      R"({"window": {"start": -4, "end": 0}, "matrices": {"family": "reset", "params": {"alpha": 0.3, "beta": 0.25, "band": 2}}, "truncation": {"M": 30}})");
  REQUIRE(reset.family);
  CHECK(reset.family->tag() == BuiltinFamily::Reset);
  CHECK(reset.chain->dim(0) == 30);

  const ChainSpec shift = parse_chain_spec(
      R"({"window": {"start": -4, "end": 0}, "matrices": {"family": "shift", "params": {"ell": 1}}, "truncation": {"M": 30}})");
  CHECK(shift.family->tag() == BuiltinFamily::Shift);
  CHECK(shift.shift_base == 5);
  CHECK_FALSE(shift.chain.has_value());
  CHECK(shift.truncation_problem.has_value());
  CHECK(validate_spec(shift).empty());

  const ChainSpec spreading = parse_chain_spec(
      R"({"window": {"start": -4, "end": 0}, "matrices": {"family": "reset", "params": {"beta_to_one": 2}}})");
  const auto& rf = dynamic_cast<const ResetFamily&>(*spreading.family);
  CHECK(rf.beta_at(-4) == doctest::Approx(1.0 - 1.0 / 6.0));

  const ChainSpec bad_param = parse_chain_spec(
      R"({"window": {"start": -4, "end": 0}, "matrices": {"family": "shift", "params": {"ell": -1}}})");
  CHECK_FALSE(validate_spec(bad_param).empty());
}

TEST_CASE("parse failures carry a location") {
  CHECK(parse_error_kind(R"({"window": {"start": 0, "end": 2}, "matrices": [)") == ErrorKind::Parse);
  CHECK(parse_error_kind("[]") == ErrorKind::Parse);
  CHECK(parse_error_kind(R"({"matrices": []})") == ErrorKind::Parse);
  CHECK(parse_error_kind(R"({"window": {"start": "a", "end": 2}, "matrices": []})") == ErrorKind::Parse);
  CHECK(parse_error_kind(R"({"window": {"start": 0, "end": 1}, "matrices": {"family": "nope"}})") == ErrorKind::Parse);
  CHECK(parse_error_kind(R"({"window": {"start": 0, "end": 1}, "matrices": [{"time": 0, "rows": 2, "cols": 2, "entries": [[1, 0]]}]})") ==
        ErrorKind::Parse);
  CHECK(parse_error_kind(R"({"window": {"start": 0, "end": 1}, "matrices": {"family": "permutation2"}, "tail_event": {"type": "x"}})") ==
        ErrorKind::Parse);
  try {
    (void)parse_chain_spec(R"({"window": {"start": 0, "end": 1}, "matrices": [{"time": 0, "rows": 1, "cols": 1, "entries": [["x"]]}]})");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("matrices[0].entries[0][0]") != std::string::npos);
  }
  CHECK_THROWS_AS(load_chain_spec("/nonexistent/spec.json"), Error);
}

TEST_CASE("document problems surface through validate_spec") {
  const ChainSpec missing = parse_chain_spec(
      R"({"window": {"start": 0, "end": 2}, "matrices": [{"time": 0, "rows": 1, "cols": 1, "entries": [[1]]}]})");
  CHECK_FALSE(missing.chain.has_value());
  CHECK(validate_spec(missing).size() == 1);

  const ChainSpec dup = parse_chain_spec(
      R"({"window": {"start": 0, "end": 1}, "matrices": [{"time": 0, "rows": 1, "cols": 1, "entries": [[1]]}, {"time": 0, "rows": 1, "cols": 1, "entries": [[1]]}]})");
  CHECK(validate_spec(dup).size() == 1);

  const ChainSpec bands = parse_chain_spec(
      R"({"window": {"start": 0, "end": 1}, "matrices": {"family": "permutation2"}, "bands": {"p": 0.9, "q": 0.1}})");
  REQUIRE(validate_spec(bands).size() == 1);
  CHECK(validate_spec(bands)[0].kind == ViolationKind::Document);

  const ChainSpec target = parse_chain_spec(
      R"({"window": {"start": 0, "end": 3}, "matrices": {"family": "permutation2"}, "tail_event": {"type": "absorption", "targets": [1]}})");
  CHECK(validate_spec(target).size() == 1);

  const ChainSpec rowsum = parse_chain_spec(
      R"({"window": {"start": 0, "end": 1}, "matrices": [{"time": 0, "rows": 1, "cols": 2, "entries": [[0.5, 0.4]]}]})");
  REQUIRE(validate_spec(rowsum).size() == 1);
  CHECK(validate_spec(rowsum)[0].kind == ViolationKind::RowSum);
}
