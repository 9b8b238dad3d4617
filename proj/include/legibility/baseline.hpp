#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "legibility/dataset.hpp"
#include "legibility/execution.hpp"
#include "legibility/responses.hpp"
#include "legibility/trajectory.hpp"

namespace legibility {

/// Human-baseline legibility of one item: the share of correct guesses,
/// with a percentile-bootstrap interval.
struct BaselineEstimate {
  ItemKey item;
  double legibility = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;
};

/// Correct-guess rate; "none" counts as incorrect. The returned interval is
/// the degenerate [legibility, legibility].
BaselineEstimate empirical_legibility(std::span<const ResponseRecord> responses, const Scene& scene);

struct BootstrapOptions {
  std::size_t resamples = 2000;
  double level = 0.95;
};

/// Percentile bootstrap of the correct-guess rate. Quantiles use linear
/// interpolation between order statistics. Deterministic for a given seed.
std::pair<double, double> bootstrap_ci(std::span<const ResponseRecord> responses, const Scene& scene,
                                       const BootstrapOptions& options, std::uint64_t seed);

/// splitmix64 finalizer.
std::uint64_t mix_seed(std::uint64_t x);

/// Stable per-item stream seed: master seed mixed with an FNV-1a hash of the
/// canonical item key, so adding items leaves other items' streams intact.
std::uint64_t item_seed(std::uint64_t master, const ItemKey& key);

/// One estimate per item that has responses, in canonical item order.
std::vector<BaselineEstimate> estimate_baselines(const Dataset& dataset, const BootstrapOptions& options,
                                                 std::uint64_t seed, Execution execution = Execution::Parallel);

}  // namespace legibility
