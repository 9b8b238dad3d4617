#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "legibility/camera.hpp"
#include "legibility/error.hpp"

using namespace legibility;

namespace {

constexpr std::array<double, 9> kIdentity{1, 0, 0, 0, 1, 0, 0, 0, 1};

Viewpoint identity_camera() { return Viewpoint("id", {100, 100, 50, 50, 100, 100}, kIdentity, {0, 0, 0}); }

// Rotation from yaw-pitch-roll; always orthonormal with det +1.
std::array<double, 9> rotation(double yaw, double pitch, double roll) {
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  const double cr = std::cos(roll), sr = std::sin(roll);
  return {cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr,
          sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr,
          -sp,     cp * sr,                cp * cr};
}

// Independent formula: u = fx * x/z + cx with (x, y, z) = R p + t.
Pixel oracle(const std::array<double, 9>& r, const Point3& t, double f, double c, const Point3& p) {
  const double x = r[0] * p.x + r[1] * p.y + r[2] * p.z + t.x;
  const double y = r[3] * p.x + r[4] * p.y + r[5] * p.z + t.y;
  const double z = r[6] * p.x + r[7] * p.y + r[8] * p.z + t.z;
  return {f * x / z + c, f * y / z + c};
}

}  // namespace

TEST(Viewpoint, RejectsInvalidParameters) {
  EXPECT_THROW(Viewpoint("v", {0, 100, 50, 50, 100, 100}, kIdentity, {}), Error);
  EXPECT_THROW(Viewpoint("v", {100, 100, 50, 50, 0, 100}, kIdentity, {}), Error);
  EXPECT_THROW(Viewpoint("v", {100, 100, 50, 50, 100, 100}, {1, 0, 0, 0, 1, 0, 0, 0, -1}, {}), Error);  // det -1
  EXPECT_THROW(Viewpoint("v", {100, 100, 50, 50, 100, 100}, {2, 0, 0, 0, 1, 0, 0, 0, 1}, {}), Error);
  EXPECT_NO_THROW(Viewpoint("v", {100, 100, 50, 50, 100, 100}, rotation(0.3, -0.2, 1.1), {}));
}

TEST(ProjectPoint, PinholeValues) {
  const auto cam = identity_camera();
  const Pixel axis = project_point(cam, {0, 0, 1});
  EXPECT_DOUBLE_EQ(axis.u, 50.0);
  EXPECT_DOUBLE_EQ(axis.v, 50.0);
  const Pixel off = project_point(cam, {0.1, 0, 1});
  EXPECT_DOUBLE_EQ(off.u, 60.0);  // 100 * 0.1 / 1 + 50
  EXPECT_DOUBLE_EQ(off.v, 50.0);
  try {
    project_point(cam, {0, 0, -1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BehindCamera);
  }
  EXPECT_THROW(project_point(cam, {1, 1, 0}), Error);
}

TEST(ProjectPoint, MatchesOracleForRandomPoses) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-1.0, 1.0), u(-0.5, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = rotation(ang(rng), ang(rng), ang(rng));
    const Point3 t{u(rng), u(rng), 5.0};
    const Viewpoint cam("v", {320, 320, 200, 200, 400, 400}, r, t);
    const Point3 p{u(rng), u(rng), u(rng)};
    const Pixel got = project_point(cam, p);
    const Pixel want = oracle(r, t, 320, 200, p);
    EXPECT_NEAR(got.u, want.u, 1e-9);
    EXPECT_NEAR(got.v, want.v, 1e-9);
  }
}

TEST(ProjectPoint, PrincipalAxisRayHitsPrincipalPoint) {
  const auto r = rotation(0.4, -0.3, 0.9);
  const Point3 t{0.2, -0.1, 0.7};
  const Viewpoint cam("v", {500, 450, 310, 240, 640, 480}, r, t);
  for (double depth : {0.5, 1.0, 7.0}) {
    // world point whose camera coordinates are (0, 0, depth): p = R^T (c - t)
    const Point3 c{-t.x, -t.y, depth - t.z};
    const Point3 p{r[0] * c.x + r[3] * c.y + r[6] * c.z, r[1] * c.x + r[4] * c.y + r[7] * c.z,
                   r[2] * c.x + r[5] * c.y + r[8] * c.z};
    const Pixel px = project_point(cam, p);
    EXPECT_NEAR(px.u, 310.0, 1e-9);
    EXPECT_NEAR(px.v, 240.0, 1e-9);
  }
}

TEST(ProjectTrajectory, RepeatedAxisPoint) {
  const Trajectory traj("t", "s", {{0, {0, 0, 2}}, {1, {0, 0, 2}}, {2, {0, 0, 2}}});
  const auto px = project_trajectory(identity_camera(), traj);
  ASSERT_EQ(px.size(), 3u);
  for (std::size_t i = 0; i < px.size(); ++i) {
    EXPECT_EQ(px[i].t, traj.samples()[i].t);
    EXPECT_DOUBLE_EQ(px[i].px.u, 50.0);
    EXPECT_DOUBLE_EQ(px[i].px.v, 50.0);
  }
}

TEST(ProjectTrajectory, LinesStayCollinear) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(-0.6, 0.6), u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Viewpoint cam("v", {600, 600, 320, 240, 640, 480}, rotation(ang(rng), ang(rng), ang(rng)), {0, 0, 6});
    const Point3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
    std::vector<TrajectorySample> samples;
    for (int i = 0; i <= 100; ++i) samples.push_back({0.01 * i, a + (0.01 * i) * (b - a)});
    const auto px = project_trajectory(cam, Trajectory("line", "s", samples));
    const double du = px.back().px.u - px.front().px.u, dv = px.back().px.v - px.front().px.v;
    const double len = std::hypot(du, dv);
    for (const auto& s : px) {
      const double off = std::abs((s.px.u - px.front().px.u) * dv - (s.px.v - px.front().px.v) * du) / len;
      EXPECT_LT(off, 1e-6);
    }
  }
}

TEST(ProjectTrajectory, ViewpointsDiffer) {
  const Trajectory traj("t", "s", {{0, {0, 0, 0}}, {1, {0.3, 0.1, 0}}, {2, {0.5, 0.4, 0.1}}});
  const auto r1 = rotation(0, 0, 0), r2 = rotation(0.5, 0.2, 0);
  const Point3 t{0, 0, 3};
  const Viewpoint v1("a", {400, 400, 200, 200, 400, 400}, r1, t);
  const Viewpoint v2("b", {400, 400, 200, 200, 400, 400}, r2, t);
  const auto p1 = project_trajectory(v1, traj);
  const auto p2 = project_trajectory(v2, traj);
  bool differs = false;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const Pixel w1 = oracle(r1, t, 400, 200, traj.samples()[i].p);
    const Pixel w2 = oracle(r2, t, 400, 200, traj.samples()[i].p);
    EXPECT_NEAR(p1[i].px.u, w1.u, 1e-9);
    EXPECT_NEAR(p2[i].px.u, w2.u, 1e-9);
    differs |= std::abs(w1.u - w2.u) > 1e-6 || std::abs(w1.v - w2.v) > 1e-6;
  }
  EXPECT_TRUE(differs);
}

TEST(ProjectTrajectory, ErrorNamesSample) {
  const Trajectory traj("t", "s", {{0, {0, 0, 1}}, {1, {0, 0, 0.5}}, {2, {0, 0, -1}}});
  try {
    project_trajectory(identity_camera(), traj);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BehindCamera);
    EXPECT_NE(std::string(e.what()).find("sample 2"), std::string::npos);
  }
}

TEST(NormalizedImagePoint, DividesByDiagonal) {
  const Viewpoint cam("v", {100, 100, 0, 0, 300, 400}, kIdentity, {});
  const Point3 n = normalized_image_point(cam, {250, 100});
  EXPECT_DOUBLE_EQ(n.x, 0.5);
  EXPECT_DOUBLE_EQ(n.y, 0.2);
  EXPECT_EQ(n.z, 0.0);
}
