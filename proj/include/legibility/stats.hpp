#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "legibility/baseline.hpp"
#include "legibility/dataset.hpp"
#include "legibility/frameworks.hpp"

namespace legibility {

enum class CorrelationBin { Low, Medium, High };

std::string_view to_string(CorrelationBin bin);

/// |rho| < 0.3 low, [0.3, 0.5) medium, >= 0.5 high.
CorrelationBin bin_correlation(double rho);

struct CorrelationResult {
  double rho = 0.0;
  std::size_t n = 0;
  CorrelationBin bin = CorrelationBin::Low;
};

/// 1-based ranks; ties share the mean of the positions they occupy.
std::vector<double> average_ranks(std::span<const double> xs);

/// Pearson correlation of average ranks. Needs n >= 3 and at least two
/// distinct values per side; a constant side throws UndefinedCorrelation.
CorrelationResult spearman_rho(std::span<const double> xs, std::span<const double> ys);

enum class CorrelationFlag {
  None,
  ConstantScores,     // reported as zero association
  ConstantBaseline,   // reported as zero association
  InsufficientPairs,  // no value
};

std::string_view to_string(CorrelationFlag flag);

struct FrameworkBaselineRow {
  FrameworkId framework;
  std::optional<CorrelationResult> result;
  CorrelationFlag flag = CorrelationFlag::None;
  std::size_t matched = 0;
  std::size_t excluded = 0;  // items with a score or a baseline but not both
};

/// Signed Spearman rho per framework over items matched on the full item key.
std::vector<FrameworkBaselineRow> framework_baseline_table(std::span<const ScoreRecord> scores,
                                                           std::span<const BaselineEstimate> baselines);

struct MatrixCell {
  std::optional<CorrelationResult> result;  // absolute rho
  CorrelationFlag flag = CorrelationFlag::None;
};

struct FrameworkMatrix {
  std::vector<FrameworkId> frameworks;
  std::vector<std::vector<MatrixCell>> cells;  // symmetric, unit diagonal
};

/// |rho| for every framework pair over their common items.
FrameworkMatrix framework_framework_matrix(std::span<const ScoreRecord> scores);

}  // namespace legibility
