#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "octrack/redetect.hpp"
#include "octrack/spectral.hpp"
#include "octrack/tracker.hpp"
#include "synth.hpp"

using namespace octrack;
namespace rd = octrack::redetect;
namespace ft = octrack::features;

namespace {

kcf::FilterModel scene_model(const Plane& frame, Point2d center,
                             const ft::WindowGeometry& g) {
  const Plane label = ft::make_label(g.cells_w(), g.cells_h(),
                                     ft::label_bandwidth(40.0, 40.0, g.cell_size));
  const FeaturePatch x = ft::window_features(frame, center, g);
  return kcf::make_model(x, spectral::fft2(label), 1e-4, 0.5);
}

}  // namespace

TEST_CASE("polar grid has exact counts, radii, and the worked angles") {
  const rd::PolarGrid grid = rd::polar_candidates({0.0, 0.0}, 50.0, 5, 16);
  REQUIRE(grid.points.size() == 80);
  CHECK(grid.n_r == 5);
  CHECK(grid.n_t == 16);

  // Ring radii are i_r * radius / n_r, exact to 1e-9.
  for (int ir = 1; ir <= 5; ++ir)
    for (int it = 1; it <= 16; ++it) {
      const Point2d p = grid.points[(ir - 1) * 16 + (it - 1)];
      const double r = std::hypot(p.x, p.y);
      CHECK(std::abs(r - 10.0 * ir) < 1e-9);
    }

  // Even angle index on the first ring: angle = i_t * 2*pi/16.
  const Point2d a = grid.points[(1 - 1) * 16 + (4 - 1)];
  CHECK(std::abs(a.x - 0.0) < 1e-9);
  CHECK(std::abs(a.y - 10.0) < 1e-9);

  // Odd angle index gets the half-step offset: i_t = 1 -> 3*pi/16.
  const Point2d b = grid.points[(1 - 1) * 16 + (1 - 1)];
  CHECK(std::abs(b.x - 10.0 * std::cos(3.0 * std::numbers::pi / 16.0)) < 1e-9);
  CHECK(std::abs(b.y - 10.0 * std::sin(3.0 * std::numbers::pi / 16.0)) < 1e-9);
  CHECK(std::abs(b.x - 8.3146961230254524) < 1e-9);
  CHECK(std::abs(b.y - 5.5557023301960218) < 1e-9);
}

TEST_CASE("polar grid offsets apply to the query center") {
  const rd::PolarGrid at_origin = rd::polar_candidates({0.0, 0.0}, 30.0, 3, 8);
  const rd::PolarGrid moved = rd::polar_candidates({17.0, -4.0}, 30.0, 3, 8);
  REQUIRE(at_origin.points.size() == moved.points.size());
  for (std::size_t i = 0; i < moved.points.size(); ++i) {
    CHECK(moved.points[i].x == doctest::Approx(at_origin.points[i].x + 17.0));
    CHECK(moved.points[i].y == doctest::Approx(at_origin.points[i].y - 4.0));
  }
}

TEST_CASE("degenerate grid parameters are rejected") {
  CHECK_THROWS_AS(rd::polar_candidates({0, 0}, 0.0, 5, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(rd::polar_candidates({0, 0}, -2.0, 5, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(rd::polar_candidates({0, 0}, 10.0, 0, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(rd::polar_candidates({0, 0}, 10.0, 5, 0),
                  std::invalid_argument);
}

TEST_CASE("coarse search scores every candidate and keeps the best") {
  const synth::SceneSpec spec;
  const Point2d true_center{120.0, 90.0};
  const Plane frame = synth::render_frame(spec, true_center);
  const ft::WindowGeometry g =
      ft::make_geometry(40.0, 40.0, 1.5, 4, ft::FeatureMode::fhog);
  const kcf::FilterModel model = scene_model(frame, true_center, g);

  // Search from a center displaced well off the target.
  const rd::PolarGrid grid =
      rd::polar_candidates({90.0, 70.0}, 45.0, 5, 16);
  const rd::CoarseResult res = rd::coarse_search(model, frame, grid, g);

  REQUIRE(res.responses.size() == grid.points.size());
  const auto it = std::max_element(res.responses.begin(), res.responses.end());
  CHECK(res.best_index == static_cast<int>(it - res.responses.begin()));
  CHECK(res.best_response == *it);
  CHECK(res.best_center.x == grid.points[res.best_index].x);
  CHECK(res.best_center.y == grid.points[res.best_index].y);

  // The winning candidate is one of the grid points nearest the target.
  double best_possible = 1e300;
  for (const Point2d& p : grid.points)
    best_possible = std::min(best_possible,
                             std::hypot(p.x - true_center.x, p.y - true_center.y));
  const double got =
      std::hypot(res.best_center.x - true_center.x,
                 res.best_center.y - true_center.y);
  CHECK(got <= best_possible + 16.0);
}

TEST_CASE("ties on a featureless frame resolve to the first candidate") {
  Plane frame(200, 160);
  for (double& v : frame.data) v = 0.5;
  const ft::WindowGeometry g =
      ft::make_geometry(40.0, 40.0, 1.5, 4, ft::FeatureMode::fhog);
  const kcf::FilterModel model = scene_model(frame, {100.0, 80.0}, g);
  const rd::PolarGrid grid = rd::polar_candidates({100.0, 80.0}, 30.0, 3, 8);
  const rd::CoarseResult res = rd::coarse_search(model, frame, grid, g);
  CHECK(res.best_index == 0);
  for (double r : res.responses) CHECK(r == res.responses[0]);
}

TEST_CASE("fine localization lands back on the target") {
  const synth::SceneSpec spec;
  const Point2d true_center{120.0, 90.0};
  const Plane frame = synth::render_frame(spec, true_center);
  const ft::WindowGeometry g =
      ft::make_geometry(40.0, 40.0, 1.5, 4, ft::FeatureMode::fhog);
  const kcf::FilterModel model = scene_model(frame, true_center, g);

  const Point2d coarse{128.0, 94.0};  // two cells right, one down
  const Point2d fine = rd::fine_localize(model, frame, coarse, g);
  CHECK(std::abs(fine.x - true_center.x) <= 2.0);
  CHECK(std::abs(fine.y - true_center.y) <= 2.0);
}

TEST_CASE("fine localization moves by whole cells from the coarse center") {
  const synth::SceneSpec spec;
  const Plane frame = synth::render_frame(spec, {120.0, 90.0});
  const ft::WindowGeometry g =
      ft::make_geometry(40.0, 40.0, 1.5, 4, ft::FeatureMode::fhog);
  const kcf::FilterModel model = scene_model(frame, {120.0, 90.0}, g);
  const Point2d coarse{126.0, 90.0};
  const Point2d fine = rd::fine_localize(model, frame, coarse, g);
  const double dx = fine.x - coarse.x;
  const double dy = fine.y - coarse.y;
  CHECK(dx == std::floor(dx / 4.0) * 4.0);
  CHECK(dy == std::floor(dy / 4.0) * 4.0);
}
