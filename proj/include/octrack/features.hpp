#pragma once

#include "octrack/geometry.hpp"
#include "octrack/plane.hpp"

namespace octrack::features {

enum class FeatureMode { fhog, gray };

// Crops a w x h pixel patch centered on `center` (rounded to the nearest
// pixel), replicating border pixels for parts outside the image.
Plane extract_subwindow(const Plane& image, Point2d center, int w, int h);

// Separable Hann window, outer product of 0.5*(1 - cos(2*pi*i/(N-1))).
// A dimension of 1 yields the constant 1.
Plane hann2d(int w, int h);

// Wrapped 2-D Gaussian with peak exactly 1.0 at (0,0); distances wrap past
// half the plane size, so the peak's mass continues at the far edges.
Plane make_label(int w, int h, double bandwidth);

// Label bandwidth in feature cells for a target of the given pixel size.
double label_bandwidth(double target_w, double target_h, int cell_size);

// Felzenszwalb HOG, 31 channels: 18 contrast-sensitive orientation bins,
// 9 contrast-insensitive, 4 texture-energy. Cell grid is the integer
// quotient of the patch size by cell_size; callers pass exact multiples.
FeaturePatch fhog(const Plane& patch, int cell_size);

// Mean-subtracted raw intensities as a single-channel feature patch.
FeaturePatch gray_features(const Plane& patch);

// Multiplies every channel elementwise by the window (same grid size).
void apply_window(FeaturePatch& f, const Plane& window);

// Everything needed to turn a frame position into windowed features.
struct WindowGeometry {
  int window_w = 0;  // pixels, a multiple of cell_size
  int window_h = 0;
  int cell_size = 1;
  FeatureMode mode = FeatureMode::gray;
  Plane hann;  // feature-grid sized

  int cells_w() const { return window_w / cell_size; }
  int cells_h() const { return window_h / cell_size; }
};

// Builds the geometry for a target size: the search window is
// target * search_scale, rounded up to whole cells. Grayscale mode always
// uses cell_size 1.
WindowGeometry make_geometry(double target_w, double target_h,
                             double search_scale, int cell_size,
                             FeatureMode mode);

// extract_subwindow + feature transform + Hann window, in that order.
FeaturePatch window_features(const Plane& frame, Point2d center,
                             const WindowGeometry& g);

}  // namespace octrack::features
