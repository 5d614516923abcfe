#pragma once

#include "octrack/plane.hpp"
#include "octrack/spectral.hpp"

namespace octrack::oct {

// Per-bin blending weight between the fresh ridge solution and the previous
// coefficients: eta = (F(k) + lambda) / (F(k) + lambda + 4*lambda*s).
// s = 0 gives exactly all-ones (full replacement); larger s shifts weight
// onto the previous coefficients.
SpectralPlane compute_eta(const SpectralPlane& kernel_spectrum, double lambda,
                          double s);

// eta .* new_alpha + (1 - eta) .* prev_alpha.
SpectralPlane oct_update(const SpectralPlane& prev_alpha,
                         const SpectralPlane& new_alpha,
                         const SpectralPlane& eta);

// Direct spectral solution of the constrained normal equations:
//   F(alpha_t) = (F(y) + 4*lambda*s*F(alpha_{t-1}))
//              / (F(k) + lambda + 4*lambda*s).
// Algebraically identical to blending the plain ridge solution with
// compute_eta + oct_update; kept explicit so tests can check the identity.
SpectralPlane solve_oct_alpha(const SpectralPlane& kernel_spectrum,
                              const SpectralPlane& label_spectrum,
                              const SpectralPlane& prev_alpha, double lambda,
                              double s);

// Running mean and population variance of response peaks, each new value
// weighted 1/(count+1); equals the batch statistics of everything seen.
// warmup is the number of samples the gate waits for before it may fire.
struct ResponseStats {
  double mean = 0.0;
  double variance = 0.0;
  long long count = 0;
  long long warmup = 7;
};

ResponseStats stats_update(ResponseStats stats, double value);

// z-score of a peak against the running statistics. The floor keeps the
// score defined while the variance is still degenerate.
double drift_zscore(const ResponseStats& stats, double value,
                    double sigma_floor = 1e-6);

// Drift iff |value - mean| / max(sqrt(variance), floor) >= threshold.
// Always false while fewer than warmup samples have been absorbed.
bool is_drifting(const ResponseStats& stats, double value, double threshold,
                 double sigma_floor = 1e-6);

struct OctConfig {
  double s = 1000.0;
  double lambda = 1e-4;
  double t_g = 1.6;

  // Appearance blend weight for 1-based frame t: the running-mean schedule.
  double rho(long long frame) const { return 1.0 / static_cast<double>(frame); }
};

}  // namespace octrack::oct
