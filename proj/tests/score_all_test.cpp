#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <set>

#include "legibility/dataset.hpp"
#include "legibility/error.hpp"
#include "test_support.hpp"

using namespace legibility;
using legibility::testing::camera_at;

namespace {

Scene scene() { return Scene("s", {{"g0", {0.5, 0.3, 0}}, {"g1", {0.5, -0.3, 0}}}, "g0"); }

Trajectory path(const std::string& id, const Point3& end) {
  std::vector<TrajectorySample> s;
  const Point3 start{-0.5, 0, 0.2};
  for (int i = 0; i <= 20; ++i) s.push_back({0.1 * i, start + (i / 20.0) * (end - start)});
  return Trajectory(id, "s", s);
}

// Two trajectories, one fraction each: two items.
Dataset two_items(bool with_views) {
  Dataset d;
  d.scenes.push_back(scene());
  d.trajectories.push_back({path("bent", {0.5, 0.3, 0}), {0.6}});
  d.trajectories.push_back({path("flat", {0.5, 0.0, 0.1}), {1.0}});
  if (with_views) d.viewpoints = {camera_at("v1", 0.0), camera_at("v2", 0.9), camera_at("v3", -1.2, 2.0, 2.5)};
  d.validate();
  return d;
}

BenchmarkConfig only(std::initializer_list<FrameworkId> ids) {
  BenchmarkConfig c;
  for (auto id : ids) c.frameworks[id] = {};
  return c;
}

void add_responses(Dataset& d) {
  d.has_responses = true;
  for (const auto& item : d.items()) {
    for (int k = 0; k < 4; ++k) {
      // each viewpoint gets a different correct count so busch differs
      const bool correct = k < 1 + static_cast<int>(item.viewpoint_id.size() ? item.viewpoint_id.back() - '0' : 0);
      d.responses.push_back({item.trajectory_id, item.fraction, item.viewpoint_id, "p" + std::to_string(k),
                             correct ? "g0" : "g1", std::nullopt});
    }
  }
  d.validate();
}

}  // namespace

TEST(ScoreAll, ViewIndependentValuesAreReplicated) {
  const Dataset d = two_items(true);
  const auto out = score_all(d, only({FrameworkId::Dragan}));
  ASSERT_EQ(out.records.size(), 6u);
  EXPECT_TRUE(out.exclusions.empty());
  std::set<double> distinct;
  for (const auto& r : out.records) distinct.insert(r.value);
  EXPECT_EQ(distinct.size(), 2u);
  for (const auto& r : out.records) {
    const auto& dt = *d.find_trajectory(r.item.trajectory_id);
    EXPECT_EQ(r.value, score_dragan(truncate_to_fraction(dt.trajectory, Fraction(r.item.fraction)), scene()));
  }
}

TEST(ScoreAll, EveryViewIndependentFrameworkReplicates) {
  Dataset d = two_items(true);
  add_responses(d);
  const auto out = score_all(d, BenchmarkConfig::all_defaults());
  EXPECT_TRUE(out.exclusions.empty());
  EXPECT_EQ(out.records.size(), 10u * 6u);
  for (auto id : kAllFrameworks) {
    std::map<std::pair<std::string, double>, std::set<double>> by_item;
    for (const auto& r : out.records) {
      if (r.framework == id) by_item[{r.item.trajectory_id, r.item.fraction}].insert(r.value);
    }
    ASSERT_EQ(by_item.size(), 2u);
    for (const auto& [item, values] : by_item) {
      if (is_view_dependent(id)) {
        EXPECT_GE(values.size(), 2u) << to_string(id);
      } else {
        EXPECT_EQ(values.size(), 1u) << to_string(id);
      }
    }
  }
}

TEST(ScoreAll, NikolaidisVariesByView) {
  const Dataset d = two_items(true);
  const auto out = score_all(d, only({FrameworkId::Nikolaidis}));
  ASSERT_EQ(out.records.size(), 6u);
  std::set<double> distinct;
  for (const auto& r : out.records) {
    distinct.insert(r.value);
    const auto& dt = *d.find_trajectory(r.item.trajectory_id);
    EXPECT_EQ(r.value, score_nikolaidis(truncate_to_fraction(dt.trajectory, Fraction(r.item.fraction)), scene(),
                                        *d.find_viewpoint(r.item.viewpoint_id)));
  }
  EXPECT_GE(distinct.size(), 2u);
  EXPECT_LE(distinct.size(), 6u);
}

TEST(ScoreAll, EmptySelection) {
  const auto out = score_all(two_items(true), BenchmarkConfig{});
  EXPECT_TRUE(out.records.empty());
  EXPECT_TRUE(out.exclusions.empty());
}

TEST(ScoreAll, MissingCameraForNikolaidis) {
  const Dataset d = two_items(false);
  try {
    score_all(d, only({FrameworkId::Nikolaidis}), {Execution::Serial, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Configuration);
  }
  const auto out = score_all(d, only({FrameworkId::Nikolaidis, FrameworkId::Dragan}));
  EXPECT_EQ(out.records.size(), 2u);
  ASSERT_EQ(out.exclusions.size(), 1u);
  EXPECT_EQ(out.exclusions[0].framework, FrameworkId::Nikolaidis);
  EXPECT_FALSE(out.exclusions[0].item);
  EXPECT_EQ(out.exclusions[0].kind, ErrorKind::Configuration);
}

TEST(ScoreAll, MissingResponsesForBusch) {
  const Dataset d = two_items(false);
  try {
    score_all(d, only({FrameworkId::Busch}), {Execution::Serial, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingFeedback);
  }
  const auto out = score_all(d, only({FrameworkId::Busch, FrameworkId::ZhaoFastApp}));
  EXPECT_EQ(out.records.size(), 2u);
  ASSERT_EQ(out.exclusions.size(), 1u);
  EXPECT_EQ(out.exclusions[0].kind, ErrorKind::MissingFeedback);
}

TEST(ScoreAll, BuschUsesItsOwnResponses) {
  Dataset d = two_items(false);
  add_responses(d);
  const auto out = score_all(d, only({FrameworkId::Busch}));
  ASSERT_EQ(out.records.size(), 2u);
  for (const auto& r : out.records) {
    const auto& dt = *d.find_trajectory(r.item.trajectory_id);
    const auto partial = truncate_to_fraction(dt.trajectory, Fraction(r.item.fraction));
    std::vector<ResponseRecord> mine;
    for (const auto& resp : d.responses) {
      if (item_of(resp) == r.item) mine.push_back(resp);
    }
    EXPECT_EQ(mine.size(), 4u);
    EXPECT_EQ(r.value, score_busch(partial, scene(), mine, {}));
  }
}

TEST(ScoreAll, ConfigParamsAreApplied) {
  const Dataset d = two_items(false);
  BenchmarkConfig c = only({FrameworkId::BiedObsD});
  c.frameworks[FrameworkId::BiedObsD].params = {{"beta", 0.0}, {"epsilon", -2.0}};
  const auto out = score_all(d, c);
  for (const auto& r : out.records) {
    const auto& dt = *d.find_trajectory(r.item.trajectory_id);
    EXPECT_DOUBLE_EQ(r.value, -2.0 * arc_length(truncate_to_fraction(dt.trajectory, Fraction(r.item.fraction))));
  }
}

TEST(ScoreAll, CanonicalOrderAndSerialParallelAgreement) {
  Dataset d = two_items(true);
  add_responses(d);
  const auto serial = score_all(d, BenchmarkConfig::all_defaults(), {Execution::Serial, false});
  const auto parallel = score_all(d, BenchmarkConfig::all_defaults(), {Execution::Parallel, false});
  ASSERT_EQ(serial.records.size(), parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    EXPECT_EQ(serial.records[i].framework, parallel.records[i].framework);
    EXPECT_EQ(serial.records[i].item, parallel.records[i].item);
    EXPECT_EQ(std::memcmp(&serial.records[i].value, &parallel.records[i].value, sizeof(double)), 0);
  }
  EXPECT_TRUE(std::is_sorted(serial.records.begin(), serial.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.framework, a.item) < std::tie(b.framework, b.item);
  }));
}

TEST(ScoreAll, ItemFailuresBecomeExclusions) {
  // a viewpoint that cannot see the start point excludes only its own items
  Dataset d = two_items(true);
  d.viewpoints.push_back(Viewpoint("behind", {800, 800, 640, 360, 1280, 720}, {1, 0, 0, 0, 1, 0, 0, 0, 1}, {0, 0, -0.1}));
  d.validate();
  const auto out = score_all(d, only({FrameworkId::Nikolaidis, FrameworkId::Dragan}));
  std::size_t nik = 0;
  for (const auto& r : out.records) nik += r.framework == FrameworkId::Nikolaidis;
  EXPECT_EQ(nik, 6u);
  ASSERT_EQ(out.exclusions.size(), 2u);
  for (const auto& ex : out.exclusions) {
    ASSERT_TRUE(ex.item);
    EXPECT_EQ(ex.item->viewpoint_id, "behind");
    EXPECT_EQ(ex.kind, ErrorKind::BehindCamera);
  }
  EXPECT_EQ(out.records.size() - nik, 8u);  // dragan covers all four views
}
