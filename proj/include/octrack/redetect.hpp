#pragma once

#include <vector>

#include "octrack/features.hpp"
#include "octrack/geometry.hpp"
#include "octrack/kcf_core.hpp"

namespace octrack::redetect {

// Polar candidate lattice around a center. Ring-major, angle-minor:
// candidate (i_r, i_t) sits at index (i_r-1)*n_t + (i_t-1), for
// i_r in 1..n_r and i_t in 1..n_t. Ring radii step by radius/n_r; angles
// step by 2*pi/n_t, and odd angle indices are advanced half a step so
// consecutive rings interleave.
struct PolarGrid {
  Point2d center;
  double radius = 0.0;
  int n_r = 0;
  int n_t = 0;
  std::vector<Point2d> points;
};

PolarGrid polar_candidates(Point2d center, double radius, int n_r, int n_t);

struct CoarseResult {
  Point2d best_center;
  double best_response = 0.0;
  int best_index = 0;
  std::vector<double> responses;  // per-candidate peak values, grid order
};

// Scores every candidate window against the model and keeps the argmax
// (first index wins exact ties).
CoarseResult coarse_search(const kcf::FilterModel& model, const Plane& frame,
                           const PolarGrid& grid,
                           const features::WindowGeometry& geometry);

// One detection pass at the coarse winner: the winner center moved by the
// response-peak displacement.
Point2d fine_localize(const kcf::FilterModel& model, const Plane& frame,
                      Point2d coarse_center,
                      const features::WindowGeometry& geometry);

}  // namespace octrack::redetect
