#pragma once

#include <algorithm>
#include <cmath>

namespace octrack {

struct Point2d {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned box, (x, y) = top-left corner, in pixels.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  Point2d center() const { return {x + w / 2.0, y + h / 2.0}; }

  static BoundingBox from_center(Point2d c, double w, double h) {
    return {c.x - w / 2.0, c.y - h / 2.0, w, h};
  }
};

// Translates the box so it lies inside a frame_w x frame_h image, keeping its
// size. Boxes larger than the frame get pinned to the top-left.
inline BoundingBox clamp_box(const BoundingBox& b, int frame_w, int frame_h) {
  BoundingBox out = b;
  const double max_x = std::max(0.0, frame_w - b.w);
  const double max_y = std::max(0.0, frame_h - b.h);
  out.x = std::min(std::max(b.x, 0.0), max_x);
  out.y = std::min(std::max(b.y, 0.0), max_y);
  return out;
}

}  // namespace octrack
