#pragma once

// Brute-force search for solving linear codes on small layered instances.
//
// Candidates are numbered by reading every free entry as one base-p digit:
// the matrices are laid out as C_1..C_n, then F for each relay in node
// declaration order, then D_1..D_n, each row-major, and the first entry is
// the least significant digit. "First" always means smallest index.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ldnet/coding.hpp"
#include "ldnet/network.hpp"

namespace ldnet {

enum class SearchStatus { found, exhausted, budget_exceeded, not_found };

const char* to_string(SearchStatus status);

struct SearchResult {
  SearchStatus status = SearchStatus::not_found;
  std::optional<LinearCode> code;
  /// Index of the returned candidate (exhaustive) or 1-based trial number
  /// (random).
  std::uint64_t index = 0;
};

/// Total number of free entries E of a code on `ln`.
std::size_t free_entries(const LayeredNetwork& ln);

/// p^E, saturating at UINT64_MAX.
std::uint64_t candidate_count(const LayeredNetwork& ln);

/// Builds the candidate with the given digits (one per free entry, in
/// enumeration order).
LinearCode code_from_digits(const LayeredNetwork& ln,
                            std::span<const Residue> digits);

struct ExhaustiveOptions {
  /// When set, digit i of the candidate index drives entry order[i] of the
  /// layout instead of entry i, and the plain one-candidate-at-a-time scan is
  /// used. Must be a permutation of 0..E-1.
  std::optional<std::vector<std::size_t>> order;
  /// Worker threads for the default scan; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Returns the smallest-index solving code among the first `budget`
/// candidates. `exhausted` means all p^E candidates were examined and none
/// solves; `budget_exceeded` means the budget ran out first.
///
/// With the default order the scan is exact but factored: for fixed relay and
/// decoder digits the encoders decouple by session and by column, so each
/// encoder column is chosen independently as its smallest valid value. The
/// outcome is identical to testing candidates one by one.
SearchResult exhaustive_search(const LayeredNetwork& ln, std::uint64_t budget,
                               const ExhaustiveOptions& options = {});

/// Every entry uniform over GF(p), in enumeration order.
LinearCode random_code(const LayeredNetwork& ln, std::mt19937_64& rng);

/// Draws `trials` random codes from a generator seeded with `seed` and
/// returns the first that solves.
SearchResult random_search(const LayeredNetwork& ln, std::uint64_t trials,
                           std::uint64_t seed);

}  // namespace ldnet
