#pragma once

#include <array>
#include <string>
#include <vector>

#include "legibility/trajectory.hpp"

namespace legibility {

struct Pixel {
  double u = 0.0;
  double v = 0.0;
};

/// Pinhole camera. The extrinsics map world to camera coordinates as
/// p_cam = rotation * p_world + translation, with +z pointing into the scene.
class Viewpoint {
 public:
  struct Intrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double width = 0.0;
    double height = 0.0;
  };

  Viewpoint(std::string id, Intrinsics intrinsics, std::array<double, 9> rotation, Point3 translation);

  const std::string& id() const { return id_; }
  const Intrinsics& intrinsics() const { return k_; }
  const std::array<double, 9>& rotation() const { return rotation_; }
  const Point3& translation() const { return translation_; }

  Point3 to_camera(const Point3& world) const;
  double image_diagonal() const;

 private:
  std::string id_;
  Intrinsics k_;
  std::array<double, 9> rotation_;
  Point3 translation_;
};

/// Throws ErrorKind::BehindCamera when the camera-frame depth is not positive.
Pixel project_point(const Viewpoint& view, const Point3& p);

struct PixelSample {
  double t = 0.0;
  Pixel px;
};

/// Per-sample projection with timestamps preserved. Errors name the
/// offending sample index.
std::vector<PixelSample> project_trajectory(const Viewpoint& view, const Trajectory& traj);

/// Pixel coordinates divided by the image diagonal, embedded as (u, v, 0) so
/// the world-space inference code applies unchanged.
Point3 normalized_image_point(const Viewpoint& view, const Pixel& px);

}  // namespace legibility
