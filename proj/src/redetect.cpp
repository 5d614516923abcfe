#include "octrack/redetect.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace octrack::redetect {

PolarGrid polar_candidates(Point2d center, double radius, int n_r, int n_t) {
  if (radius <= 0.0)
    throw std::invalid_argument("polar_candidates: radius must be positive");
  if (n_r < 1 || n_t < 1)
    throw std::invalid_argument("polar_candidates: grid counts must be >= 1");
  PolarGrid g;
  g.center = center;
  g.radius = radius;
  g.n_r = n_r;
  g.n_t = n_t;
  g.points.reserve(static_cast<std::size_t>(n_r) * n_t);
  const double r_step = radius / n_r;
  const double t_step = 2.0 * std::numbers::pi / n_t;
  for (int ir = 1; ir <= n_r; ++ir) {
    const double r = ir * r_step;
    for (int it = 1; it <= n_t; ++it) {
      const double angle = it * t_step + (it % 2 == 1 ? t_step / 2.0 : 0.0);
      g.points.push_back(
          {center.x + r * std::cos(angle), center.y + r * std::sin(angle)});
    }
  }
  return g;
}

CoarseResult coarse_search(const kcf::FilterModel& model, const Plane& frame,
                           const PolarGrid& grid,
                           const features::WindowGeometry& geometry) {
  const int n = static_cast<int>(grid.points.size());
  if (n == 0) throw std::invalid_argument("coarse_search: empty grid");
  CoarseResult out;
  out.responses.resize(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const FeaturePatch z =
        features::window_features(frame, grid.points[i], geometry);
    out.responses[i] = kcf::detect(model, z).peak_value;
  }
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (out.responses[i] > out.responses[best]) best = i;
  out.best_index = best;
  out.best_center = grid.points[best];
  out.best_response = out.responses[best];
  return out;
}

Point2d fine_localize(const kcf::FilterModel& model, const Plane& frame,
                      Point2d coarse_center,
                      const features::WindowGeometry& geometry) {
  const FeaturePatch z =
      features::window_features(frame, coarse_center, geometry);
  const kcf::Detection d = kcf::detect(model, z);
  return {coarse_center.x + d.offset_x * geometry.cell_size,
          coarse_center.y + d.offset_y * geometry.cell_size};
}

}  // namespace octrack::redetect
