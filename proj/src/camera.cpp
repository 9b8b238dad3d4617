#include "legibility/camera.hpp"

#include <cmath>

#include "legibility/error.hpp"

namespace legibility {

Viewpoint::Viewpoint(std::string id, Intrinsics intrinsics, std::array<double, 9> rotation, Point3 translation)
    : id_(std::move(id)), k_(intrinsics), rotation_(rotation), translation_(translation) {
  if (!(k_.fx > 0.0 && k_.fy > 0.0) || !std::isfinite(k_.fx) || !std::isfinite(k_.fy)) {
    throw Error(ErrorKind::InvalidArgument, "viewpoint '" + id_ + "': focal lengths must be positive");
  }
  if (!(k_.width > 0.0 && k_.height > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "viewpoint '" + id_ + "': image size must be positive");
  }
  if (!std::isfinite(k_.cx) || !std::isfinite(k_.cy) || !translation_.finite()) {
    throw Error(ErrorKind::InvalidArgument, "viewpoint '" + id_ + "': non-finite parameter");
  }
  const auto& r = rotation_;
  // R * R^T == I and det(R) == +1
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += r[3 * i + k] * r[3 * j + k];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-9) {
        throw Error(ErrorKind::InvalidArgument, "viewpoint '" + id_ + "': rotation is not orthonormal");
      }
    }
  }
  const double det = r[0] * (r[4] * r[8] - r[5] * r[7]) - r[1] * (r[3] * r[8] - r[5] * r[6]) +
                     r[2] * (r[3] * r[7] - r[4] * r[6]);
  if (std::abs(det - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "viewpoint '" + id_ + "': rotation must have determinant +1");
  }
}

Point3 Viewpoint::to_camera(const Point3& w) const {
  const auto& r = rotation_;
  return {r[0] * w.x + r[1] * w.y + r[2] * w.z + translation_.x,
          r[3] * w.x + r[4] * w.y + r[5] * w.z + translation_.y,
          r[6] * w.x + r[7] * w.y + r[8] * w.z + translation_.z};
}

double Viewpoint::image_diagonal() const { return std::hypot(k_.width, k_.height); }

Pixel project_point(const Viewpoint& view, const Point3& p) {
  const Point3 c = view.to_camera(p);
  if (!(c.z > 0.0)) {
    throw Error(ErrorKind::BehindCamera, "point is behind viewpoint '" + view.id() + "' (depth " +
                                             std::to_string(c.z) + ")");
  }
  const auto& k = view.intrinsics();
  return {k.fx * c.x / c.z + k.cx, k.fy * c.y / c.z + k.cy};
}

std::vector<PixelSample> project_trajectory(const Viewpoint& view, const Trajectory& traj) {
  std::vector<PixelSample> out;
  out.reserve(traj.size());
  const auto samples = traj.samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      out.push_back({samples[i].t, project_point(view, samples[i].p)});
    } catch (const Error& e) {
      throw Error(e.kind(), "trajectory '" + traj.id() + "' sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

Point3 normalized_image_point(const Viewpoint& view, const Pixel& px) {
  const double diag = view.image_diagonal();
  return {px.u / diag, px.v / diag, 0.0};
}

}  // namespace legibility
