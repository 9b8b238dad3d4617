#include "legibility/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "legibility/error.hpp"

namespace legibility {

std::string_view to_string(CorrelationBin bin) {
  switch (bin) {
    case CorrelationBin::Low: return "low";
    case CorrelationBin::Medium: return "medium";
    case CorrelationBin::High: return "high";
  }
  return "unknown";
}

std::string_view to_string(CorrelationFlag flag) {
  switch (flag) {
    case CorrelationFlag::None: return "";
    case CorrelationFlag::ConstantScores: return "constant_scores";
    case CorrelationFlag::ConstantBaseline: return "constant_baseline";
    case CorrelationFlag::InsufficientPairs: return "insufficient_pairs";
  }
  return "unknown";
}

CorrelationBin bin_correlation(double rho) {
  const double a = std::abs(rho);
  if (a < 0.3) return CorrelationBin::Low;
  if (a < 0.5) return CorrelationBin::Medium;
  return CorrelationBin::High;
}

std::vector<double> average_ranks(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorKind::InvalidArgument, "cannot rank an empty list");
  for (double x : xs) {
    if (!std::isfinite(x)) throw Error(ErrorKind::Schema, "cannot rank non-finite values");
  }
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    // positions i..j (0-based) share rank mean((i+1)..(j+1))
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

CorrelationResult spearman_rho(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::InvalidArgument, "spearman_rho needs paired lists");
  if (xs.size() < 3) {
    throw Error(ErrorKind::InsufficientPairs, "spearman_rho needs at least 3 pairs, got " + std::to_string(xs.size()));
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mean = (n + 1.0) / 2.0;  // average ranks always sum to n(n+1)/2
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean, dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorKind::UndefinedCorrelation, "correlation is undefined for a constant list");
  }
  const double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {rho, rx.size(), bin_correlation(rho)};
}

namespace {

bool is_constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

std::map<FrameworkId, std::map<ItemKey, double>> by_framework(std::span<const ScoreRecord> scores) {
  std::map<FrameworkId, std::map<ItemKey, double>> out;
  for (const auto& s : scores) out[s.framework][s.item] = s.value;
  return out;
}

// Correlation with the zero-association convention for constant inputs.
std::pair<std::optional<CorrelationResult>, CorrelationFlag> correlate(const std::vector<double>& xs,
                                                                       const std::vector<double>& ys,
                                                                       CorrelationFlag constant_y_flag) {
  if (xs.size() < 3) return {std::nullopt, CorrelationFlag::InsufficientPairs};
  if (is_constant(xs)) return {CorrelationResult{0.0, xs.size(), CorrelationBin::Low}, CorrelationFlag::ConstantScores};
  if (is_constant(ys)) return {CorrelationResult{0.0, xs.size(), CorrelationBin::Low}, constant_y_flag};
  return {spearman_rho(xs, ys), CorrelationFlag::None};
}

}  // namespace

std::vector<FrameworkBaselineRow> framework_baseline_table(std::span<const ScoreRecord> scores,
                                                           std::span<const BaselineEstimate> baselines) {
  std::map<ItemKey, double> truth;
  for (const auto& b : baselines) truth[b.item] = b.legibility;

  std::vector<FrameworkBaselineRow> rows;
  for (const auto& [framework, values] : by_framework(scores)) {
    std::vector<double> xs, ys;
    std::size_t unmatched_scores = 0;
    for (const auto& [key, value] : values) {
      const auto it = truth.find(key);
      if (it == truth.end()) {
        ++unmatched_scores;
        continue;
      }
      xs.push_back(value);
      ys.push_back(it->second);
    }
    FrameworkBaselineRow row{framework, std::nullopt, CorrelationFlag::None, xs.size(), 0};
    row.excluded = unmatched_scores + (truth.size() - xs.size());
    std::tie(row.result, row.flag) = correlate(xs, ys, CorrelationFlag::ConstantBaseline);
    rows.push_back(std::move(row));
  }
  return rows;
}

FrameworkMatrix framework_framework_matrix(std::span<const ScoreRecord> scores) {
  const auto values = by_framework(scores);
  FrameworkMatrix m;
  for (const auto& [framework, _] : values) m.frameworks.push_back(framework);
  const std::size_t k = m.frameworks.size();
  m.cells.assign(k, std::vector<MatrixCell>(k));

  for (std::size_t a = 0; a < k; ++a) {
    const auto& va = values.at(m.frameworks[a]);
    m.cells[a][a].result = CorrelationResult{1.0, va.size(), CorrelationBin::High};
    for (std::size_t b = a + 1; b < k; ++b) {
      const auto& vb = values.at(m.frameworks[b]);
      std::vector<double> xs, ys;
      for (const auto& [key, value] : va) {
        const auto it = vb.find(key);
        if (it == vb.end()) continue;
        xs.push_back(value);
        ys.push_back(it->second);
      }
      MatrixCell cell;
      std::tie(cell.result, cell.flag) = correlate(xs, ys, CorrelationFlag::ConstantScores);
      if (cell.result) {
        cell.result->rho = std::abs(cell.result->rho);
      }
      m.cells[a][b] = cell;
      m.cells[b][a] = cell;
    }
  }
  return m;
}

}  // namespace legibility
