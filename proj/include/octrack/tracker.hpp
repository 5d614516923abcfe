#pragma once

#include <optional>

#include "octrack/features.hpp"
#include "octrack/geometry.hpp"
#include "octrack/kcf_core.hpp"
#include "octrack/oct_filter.hpp"

namespace octrack::tracker {

enum class TrackerMode { kcf, oct_kcf };

struct TrackerConfig {
  double lambda = 1e-4;
  double s = 1000.0;
  double kernel_sigma = 0.5;
  double t_g = 1.6;
  int n_r = 5;
  int n_t = 16;
  double search_scale = 1.5;
  int warmup_frames = 7;
  int cell_size = 4;
  features::FeatureMode feature_mode = features::FeatureMode::fhog;
  TrackerMode mode = TrackerMode::oct_kcf;
  // Fixed interpolation rate used by plain-KCF mode (both template and
  // coefficients); the constrained mode uses the 1/t running-mean schedule
  // for the template and the per-bin blend for the coefficients.
  double kcf_rate = 0.02;
  // Redetection ring radius = max(target_w, target_h) * this factor.
  double redetect_radius_factor = 1.0;

  void validate() const;  // throws std::invalid_argument
};

struct FrameDiagnostics {
  double peak = 0.0;    // response maximum at the accepted position
  double zscore = 0.0;  // pre-decision peak against the running statistics
  bool gate_fired = false;
  bool redetected = false;
};

struct TrackerState {
  TrackerConfig config;
  features::WindowGeometry geometry;
  kcf::FilterModel model;
  oct::ResponseStats stats;
  BoundingBox current_box;
  long long frame_index = 0;  // 1-based index of the last processed frame
  std::optional<long long> last_redetect_frame;
};

struct TrackResult {
  TrackerState state;
  BoundingBox box;
  FrameDiagnostics diag;
};

// Trains the initial model on the first frame. The box is clamped into the
// frame; its size is kept for the whole track.
TrackerState init(const Plane& frame, const BoundingBox& box,
                  const TrackerConfig& config);

// Advances one frame: detect at the previous position, gate the peak against
// the response statistics (after warmup, constrained mode only), redetect on
// a coarse-to-fine polar grid when the gate fires, then update the model from
// the accepted sample and absorb its peak into the statistics.
TrackResult track_frame(TrackerState state, const Plane& frame);

}  // namespace octrack::tracker
