#include "octrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "octrack/redetect.hpp"

namespace octrack::tracker {

using features::window_features;

void TrackerConfig::validate() const {
  if (lambda <= 0.0)
    throw std::invalid_argument("config: lambda must be positive");
  if (s < 0.0) throw std::invalid_argument("config: s must be nonnegative");
  if (kernel_sigma <= 0.0)
    throw std::invalid_argument("config: kernel_sigma must be positive");
  if (t_g <= 0.0) throw std::invalid_argument("config: t_g must be positive");
  if (n_r < 1 || n_t < 1)
    throw std::invalid_argument("config: n_r and n_t must be >= 1");
  if (search_scale < 1.0)
    throw std::invalid_argument("config: search_scale must be >= 1");
  if (warmup_frames < 1)
    throw std::invalid_argument("config: warmup_frames must be >= 1");
  if (cell_size < 1)
    throw std::invalid_argument("config: cell_size must be >= 1");
  if (kcf_rate < 0.0 || kcf_rate > 1.0)
    throw std::invalid_argument("config: kcf_rate must be in [0,1]");
  if (redetect_radius_factor <= 0.0)
    throw std::invalid_argument("config: redetect_radius_factor must be positive");
}

TrackerState init(const Plane& frame, const BoundingBox& box,
                  const TrackerConfig& config) {
  config.validate();
  if (box.w <= 0.0 || box.h <= 0.0)
    throw std::invalid_argument("init: box size must be positive");
  TrackerState st;
  st.config = config;
  st.current_box = clamp_box(box, frame.width, frame.height);
  st.geometry = features::make_geometry(box.w, box.h, config.search_scale,
                                        config.cell_size, config.feature_mode);
  const Plane label = features::make_label(
      st.geometry.cells_w(), st.geometry.cells_h(),
      features::label_bandwidth(box.w, box.h, st.geometry.cell_size));
  const SpectralPlane label_spec = spectral::fft2(label);
  const FeaturePatch x =
      window_features(frame, st.current_box.center(), st.geometry);
  st.model =
      kcf::make_model(x, label_spec, config.lambda, config.kernel_sigma);
  st.stats.warmup = config.warmup_frames;
  st.frame_index = 1;
  return st;
}

namespace {

// Window center moved by a detection's peak displacement, in pixels.
Point2d displaced(Point2d center, const kcf::Detection& d, int cell_size) {
  return {center.x + d.offset_x * cell_size, center.y + d.offset_y * cell_size};
}

}  // namespace

TrackResult track_frame(TrackerState state, const Plane& frame) {
  if (state.frame_index < 1)
    throw std::invalid_argument("track_frame: state is not initialized");
  const TrackerConfig& cfg = state.config;
  const long long t = state.frame_index + 1;

  const Point2d prev_center = state.current_box.center();
  const FeaturePatch z = window_features(frame, prev_center, state.geometry);
  const kcf::Detection d = kcf::detect(state.model, z);

  FrameDiagnostics diag;
  diag.zscore = state.stats.count > 0
                    ? oct::drift_zscore(state.stats, d.peak_value)
                    : 0.0;
  const bool gated = cfg.mode == TrackerMode::oct_kcf &&
                     oct::is_drifting(state.stats, d.peak_value, cfg.t_g);
  diag.gate_fired = gated;

  Point2d accepted = displaced(prev_center, d, state.geometry.cell_size);
  double accepted_peak = d.peak_value;
  if (gated) {
    const double radius =
        std::max(state.current_box.w, state.current_box.h) *
        cfg.redetect_radius_factor;
    const redetect::PolarGrid grid =
        redetect::polar_candidates(prev_center, radius, cfg.n_r, cfg.n_t);
    const redetect::CoarseResult coarse =
        redetect::coarse_search(state.model, frame, grid, state.geometry);
    const FeaturePatch zc =
        window_features(frame, coarse.best_center, state.geometry);
    const kcf::Detection dc = kcf::detect(state.model, zc);
    accepted = displaced(coarse.best_center, dc, state.geometry.cell_size);
    accepted_peak = dc.peak_value;
    diag.redetected = true;
    state.last_redetect_frame = t;
  }

  BoundingBox box = clamp_box(
      BoundingBox::from_center(accepted, state.current_box.w,
                               state.current_box.h),
      frame.width, frame.height);
  state.current_box = box;

  // Train on the accepted (clamped) position.
  const FeaturePatch x = window_features(frame, box.center(), state.geometry);
  const auto x_spec = kcf::fft2_channels(x);
  const double x_sq = kcf::sum_squares(x);
  if (cfg.mode == TrackerMode::kcf) {
    const SpectralPlane alpha =
        kcf::train_spectra(x_spec, x_sq, state.model.label_spectrum,
                           cfg.lambda, cfg.kernel_sigma);
    state.model = kcf::kcf_update_spectra(state.model, alpha, x, x_spec,
                                          cfg.kcf_rate);
  } else {
    const SpectralPlane ks =
        kcf::kernel_autocorrelation_spectrum(x_spec, x_sq, cfg.kernel_sigma);
    const SpectralPlane alpha_plain =
        kcf::train_from_kernel(ks, state.model.label_spectrum, cfg.lambda);
    const SpectralPlane eta = oct::compute_eta(ks, cfg.lambda, cfg.s);
    const SpectralPlane alpha =
        oct::oct_update(state.model.alpha_hat, alpha_plain, eta);
    const oct::OctConfig oc{cfg.s, cfg.lambda, cfg.t_g};
    kcf::blend_appearance(state.model, x, x_spec, oc.rho(t));
    state.model.alpha_hat = alpha;
  }

  diag.peak = accepted_peak;
  state.stats = oct::stats_update(state.stats, accepted_peak);
  state.frame_index = t;

  return {std::move(state), box, diag};
}

}  // namespace octrack::tracker
