#pragma once

#include <compare>
#include <optional>
#include <string>

namespace legibility {

inline constexpr const char* kNoAnswer = "none";

/// One observer guess for one (trajectory, fraction, viewpoint) item.
struct ResponseRecord {
  std::string trajectory_id;
  double fraction = 1.0;
  std::string viewpoint_id;  // empty when the dataset has no viewpoints
  std::string participant_id;
  std::string guess;  // goal id or kNoAnswer
  std::optional<double> response_time_s;
};

/// Identifies one evaluation item. Ordering is the canonical report order.
struct ItemKey {
  std::string trajectory_id;
  double fraction = 1.0;
  std::string viewpoint_id;

  friend auto operator<=>(const ItemKey&, const ItemKey&) = default;
  friend bool operator==(const ItemKey&, const ItemKey&) = default;
};

inline ItemKey item_of(const ResponseRecord& r) { return {r.trajectory_id, r.fraction, r.viewpoint_id}; }

std::string to_string(const ItemKey& key);

}  // namespace legibility
