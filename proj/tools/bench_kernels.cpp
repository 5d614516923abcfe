#include <chrono>
#include <cstdio>
#include <random>
#include <utility>

#include <omp.h>

#include "octrack/features.hpp"
#include "octrack/kcf_core.hpp"
#include "octrack/spectral.hpp"
#include "octrack/tracker.hpp"
#include "oracle.hpp"
#include "synth.hpp"
#include "test_util.hpp"

using namespace octrack;

namespace {

template <class F>
double time_ms(int reps, F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* label, double ref_ms, double fast_ms) {
  std::printf("%-36s %10.4f %10.4f %7.1fx\n", label, ref_ms, fast_ms,
              ref_ms / fast_ms);
}

double sink = 0.0;

}  // namespace

int main() {
  std::mt19937 rng(42);
  const int max_threads = omp_get_max_threads();
  std::printf("threads available: %d\n\n", max_threads);
  std::printf("%-36s %10s %10s %8s\n", "kernel", "ref ms", "fast ms", "ratio");

  {
    const Plane p = testutil::random_plane(8, 8, rng);
    const double ref =
        time_ms(300, [&] { sink += oracle::naive_dft2(p).data[0].real(); });
    const double fast =
        time_ms(300, [&] { sink += spectral::fft2(p).data[0].real(); });
    row("2-D transform, 8x8 (vs quadratic)", ref, fast);
  }
  {
    const FeaturePatch x = testutil::random_patch(8, 8, 3, rng);
    const FeaturePatch xp = testutil::random_patch(8, 8, 3, rng);
    const double ref = time_ms(100, [&] {
      sink += oracle::naive_gaussian_correlation(x, xp, 0.5).data[0];
    });
    const double fast =
        time_ms(100, [&] { sink += kcf::gaussian_correlation(x, xp, 0.5).data[0]; });
    row("kernel correlation, 8x8x3 (vs naive)", ref, fast);
  }

  // OpenMP-parallel paths, single thread vs everything available.
  const synth::SceneSpec spec{240, 180, 100.0, 100.0};
  const Plane frame = synth::render_frame(spec, {120.0, 90.0});
  {
    const Plane patch = features::extract_subwindow(frame, {120.0, 90.0}, 152, 152);
    omp_set_num_threads(1);
    const double serial =
        time_ms(100, [&] { sink += features::fhog(patch, 4).data[0]; });
    omp_set_num_threads(max_threads);
    const double parallel =
        time_ms(100, [&] { sink += features::fhog(patch, 4).data[0]; });
    row("hog features, 152x152 (1 thread vs all)", serial, parallel);
  }
  {
    tracker::TrackerConfig cfg;
    const BoundingBox first = synth::target_box(spec, {120.0, 90.0});
    omp_set_num_threads(1);
    tracker::TrackerState st = tracker::init(frame, first, cfg);
    const double serial = time_ms(50, [&] {
      tracker::TrackResult r = tracker::track_frame(std::move(st), frame);
      st = std::move(r.state);
    });
    omp_set_num_threads(max_threads);
    st = tracker::init(frame, first, cfg);
    const double parallel = time_ms(50, [&] {
      tracker::TrackResult r = tracker::track_frame(std::move(st), frame);
      st = std::move(r.state);
    });
    row("track_frame, 100x100 target (1 vs all)", serial, parallel);
    std::printf("\nsingle-thread tracking: %.1f frames/s\n", 1000.0 / serial);
  }
  return sink == 12345.6789 ? 1 : 0;
}
