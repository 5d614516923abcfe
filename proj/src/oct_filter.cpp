#include "octrack/oct_filter.hpp"

#include <cmath>
#include <stdexcept>

namespace octrack::oct {

using spectral::cdiv_value;

namespace {
void check_params(double lambda, double s) {
  if (lambda <= 0.0)
    throw std::invalid_argument("oct: lambda must be positive");
  if (s < 0.0) throw std::invalid_argument("oct: s must be nonnegative");
}
}  // namespace

SpectralPlane compute_eta(const SpectralPlane& kernel_spectrum, double lambda,
                          double s) {
  check_params(lambda, s);
  const double shift = 4.0 * lambda * s;
  SpectralPlane eta(kernel_spectrum.width, kernel_spectrum.height);
  for (std::size_t i = 0; i < eta.data.size(); ++i) {
    const std::complex<double> k = kernel_spectrum.data[i];
    const std::complex<double> num{k.real() + lambda, k.imag()};
    const std::complex<double> den{k.real() + lambda + shift, k.imag()};
    eta.data[i] = cdiv_value(num, den);
  }
  return eta;
}

SpectralPlane oct_update(const SpectralPlane& prev_alpha,
                         const SpectralPlane& new_alpha,
                         const SpectralPlane& eta) {
  if (prev_alpha.width != new_alpha.width ||
      prev_alpha.height != new_alpha.height ||
      prev_alpha.width != eta.width || prev_alpha.height != eta.height)
    throw std::invalid_argument("oct_update: dimension mismatch");
  SpectralPlane out(eta.width, eta.height);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const std::complex<double> e = eta.data[i];
    out.data[i] = e * new_alpha.data[i] +
                  (std::complex<double>{1.0, 0.0} - e) * prev_alpha.data[i];
  }
  return out;
}

SpectralPlane solve_oct_alpha(const SpectralPlane& kernel_spectrum,
                              const SpectralPlane& label_spectrum,
                              const SpectralPlane& prev_alpha, double lambda,
                              double s) {
  check_params(lambda, s);
  if (kernel_spectrum.width != label_spectrum.width ||
      kernel_spectrum.height != label_spectrum.height ||
      kernel_spectrum.width != prev_alpha.width ||
      kernel_spectrum.height != prev_alpha.height)
    throw std::invalid_argument("solve_oct_alpha: dimension mismatch");
  const double shift = 4.0 * lambda * s;
  SpectralPlane out(kernel_spectrum.width, kernel_spectrum.height);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const std::complex<double> k = kernel_spectrum.data[i];
    const std::complex<double> num =
        label_spectrum.data[i] + shift * prev_alpha.data[i];
    const std::complex<double> den{k.real() + lambda + shift, k.imag()};
    out.data[i] = cdiv_value(num, den);
  }
  return out;
}

ResponseStats stats_update(ResponseStats stats, double value) {
  const long long n = stats.count + 1;
  const double rho = 1.0 / static_cast<double>(n);
  const double old_mean = stats.mean;
  const double new_mean = (1.0 - rho) * old_mean + rho * value;
  stats.variance = (1.0 - rho) * stats.variance +
                   rho * (value - new_mean) * (value - old_mean);
  stats.mean = new_mean;
  stats.count = n;
  return stats;
}

double drift_zscore(const ResponseStats& stats, double value,
                    double sigma_floor) {
  const double sigma = std::max(std::sqrt(std::max(stats.variance, 0.0)),
                                sigma_floor);
  return std::abs(value - stats.mean) / sigma;
}

bool is_drifting(const ResponseStats& stats, double value, double threshold,
                 double sigma_floor) {
  if (stats.count < stats.warmup) return false;
  return drift_zscore(stats, value, sigma_floor) >= threshold;
}

}  // namespace octrack::oct
