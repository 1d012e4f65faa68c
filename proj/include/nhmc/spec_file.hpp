#ifndef NHMC_SPEC_FILE_HPP
#define NHMC_SPEC_FILE_HPP

#include "nhmc/countable.hpp"
#include "nhmc/tail.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace nhmc {

struct Tolerances {
  double stochastic = kDefaultStochasticTol;
  double convergence = 1e-10;
  double dedup = kDefaultDedupTol;
};

struct BandSpec {
  double p = 0.1;
  double q = 0.9;
};

/// A parsed chain specification document.
///
/// `chain` holds the finite model: explicit matrices, a finite builtin, or the
/// truncation of a countable builtin when that truncation loses no row. `family`
/// is set for countable builtins.
struct ChainSpec {
  Window window;
  std::string source;  // "explicit" or the builtin family name
  std::optional<ChainModel> chain;
  std::shared_ptr<const RowFamily> family;
  std::optional<std::string> truncation_problem;
  std::optional<TailEventSpec> tail_event;
  BandSpec bands;
  Tolerances tolerances;
  StateIndex truncation = 100;
  StateIndex shift_base = 1;  // base state of the shift-family entrance demo
  std::string hash;           // FNV-1a 64 of the document bytes, hex
  ValidationReport problems;  // document-level violations (bands, missing times)
};

/// Throws Error{Parse} for malformed JSON or wrong field types, with a location.
ChainSpec parse_chain_spec(std::string_view text);
ChainSpec load_chain_spec(const std::filesystem::path& path);

/// Document problems plus validate_chain on the finite model.
ValidationReport validate_spec(const ChainSpec& spec);

std::string fnv1a64_hex(std::string_view bytes);

}  // namespace nhmc

#endif  // NHMC_SPEC_FILE_HPP
