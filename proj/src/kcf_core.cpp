#include "octrack/kcf_core.hpp"

#include <cmath>
#include <stdexcept>

namespace octrack::kcf {

using spectral::add_real;
using spectral::cdiv;
using spectral::cmul;
using spectral::fft2;
using spectral::fft2_inplace;
using spectral::ifft2;

std::vector<SpectralPlane> fft2_channels(const FeaturePatch& x) {
  const int w = x.width, h = x.height;
  std::vector<SpectralPlane> out(x.channels);
  const int pairs = x.channels / 2;
#pragma omp parallel for schedule(static)
  for (int p = 0; p < pairs; ++p) {
    const double* a = x.channel(2 * p);
    const double* b = x.channel(2 * p + 1);
    SpectralPlane z(w, h);
    for (std::size_t i = 0; i < z.data.size(); ++i) z.data[i] = {a[i], b[i]};
    fft2_inplace(z);
    SpectralPlane sa(w, h), sb(w, h);
    for (int r = 0; r < h; ++r) {
      const int rr = r == 0 ? 0 : h - r;
      for (int c = 0; c < w; ++c) {
        const int cc = c == 0 ? 0 : w - c;
        const std::complex<double> u = z.at(r, c);
        const std::complex<double> v = std::conj(z.at(rr, cc));
        sa.at(r, c) = 0.5 * (u + v);
        const std::complex<double> d = u - v;
        sb.at(r, c) = {0.5 * d.imag(), -0.5 * d.real()};
      }
    }
    out[2 * p] = std::move(sa);
    out[2 * p + 1] = std::move(sb);
  }
  if (x.channels % 2 == 1) {
    const int c = x.channels - 1;
    Plane last(w, h);
    const double* src = x.channel(c);
    for (std::size_t i = 0; i < last.data.size(); ++i) last.data[i] = src[i];
    out[c] = fft2(last);
  }
  return out;
}

double sum_squares(const FeaturePatch& x) {
  double s = 0.0;
  for (double v : x.data) s += v * v;
  return s;
}

Plane gaussian_correlation_spectra(const std::vector<SpectralPlane>& x_spec,
                                   double x_sq,
                                   const std::vector<SpectralPlane>& xp_spec,
                                   double xp_sq, double sigma) {
  if (sigma <= 0.0)
    throw std::invalid_argument("gaussian_correlation: sigma must be positive");
  if (x_spec.empty() || x_spec.size() != xp_spec.size())
    throw std::invalid_argument("gaussian_correlation: channel count mismatch");
  const int w = x_spec[0].width, h = x_spec[0].height;
  const int channels = static_cast<int>(x_spec.size());
  for (int c = 0; c < channels; ++c)
    if (x_spec[c].width != w || x_spec[c].height != h ||
        xp_spec[c].width != w || xp_spec[c].height != h)
      throw std::invalid_argument("gaussian_correlation: dimension mismatch");

  SpectralPlane cross(w, h);
  const std::size_t bins = cross.data.size();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(bins); ++i) {
    std::complex<double> acc{0.0, 0.0};
    for (int c = 0; c < channels; ++c)
      acc += x_spec[c].data[i] * std::conj(xp_spec[c].data[i]);
    cross.data[i] = acc;
  }
  const Plane cr = ifft2(cross);
  const double numel = static_cast<double>(w) * h * channels;
  const double inv = 1.0 / (sigma * sigma * numel);
  Plane out(w, h);
  for (std::size_t i = 0; i < bins; ++i) {
    double u = x_sq + xp_sq - 2.0 * cr.data[i];
    if (u < 0.0) u = 0.0;
    out.data[i] = std::exp(-u * inv);
  }
  return out;
}

Plane gaussian_correlation(const FeaturePatch& x, const FeaturePatch& xp,
                           double sigma) {
  if (x.width != xp.width || x.height != xp.height ||
      x.channels != xp.channels)
    throw std::invalid_argument("gaussian_correlation: shape mismatch");
  const auto xs = fft2_channels(x);
  const double xsq = sum_squares(x);
  if (&x == &xp) return gaussian_correlation_spectra(xs, xsq, xs, xsq, sigma);
  return gaussian_correlation_spectra(xs, xsq, fft2_channels(xp),
                                      sum_squares(xp), sigma);
}

SpectralPlane kernel_autocorrelation_spectrum(
    const std::vector<SpectralPlane>& x_spec, double x_sq, double sigma) {
  return fft2(gaussian_correlation_spectra(x_spec, x_sq, x_spec, x_sq, sigma));
}

SpectralPlane train_from_kernel(const SpectralPlane& kernel_spectrum,
                                const SpectralPlane& label_spectrum,
                                double lambda) {
  if (lambda <= 0.0)
    throw std::invalid_argument("train: lambda must be positive");
  if (kernel_spectrum.width != label_spectrum.width ||
      kernel_spectrum.height != label_spectrum.height)
    throw std::invalid_argument("train: label dimension mismatch");
  return cdiv(label_spectrum, add_real(kernel_spectrum, lambda));
}

SpectralPlane train_spectra(const std::vector<SpectralPlane>& x_spec,
                            double x_sq, const SpectralPlane& label_spectrum,
                            double lambda, double sigma) {
  return train_from_kernel(
      kernel_autocorrelation_spectrum(x_spec, x_sq, sigma), label_spectrum,
      lambda);
}

SpectralPlane train(const FeaturePatch& x, const SpectralPlane& label_spectrum,
                    double lambda, double sigma) {
  return train_spectra(fft2_channels(x), sum_squares(x), label_spectrum,
                       lambda, sigma);
}

void refresh_appearance_cache(FilterModel& m) {
  m.appearance_spectra = fft2_channels(m.appearance);
  m.appearance_sq_norm = sum_squares(m.appearance);
}

FilterModel make_model(const FeaturePatch& x,
                       const SpectralPlane& label_spectrum, double lambda,
                       double kernel_sigma) {
  FilterModel m;
  m.appearance = x;
  m.label_spectrum = label_spectrum;
  m.lambda = lambda;
  m.kernel_sigma = kernel_sigma;
  refresh_appearance_cache(m);
  m.alpha_hat = train_spectra(m.appearance_spectra, m.appearance_sq_norm,
                              label_spectrum, lambda, kernel_sigma);
  return m;
}

Detection detect(const FilterModel& model, const FeaturePatch& z) {
  if (z.width != model.appearance.width ||
      z.height != model.appearance.height ||
      z.channels != model.appearance.channels)
    throw std::invalid_argument("detect: sample shape mismatch");
  const Plane k = gaussian_correlation_spectra(
      fft2_channels(z), sum_squares(z), model.appearance_spectra,
      model.appearance_sq_norm, model.kernel_sigma);
  Plane resp = ifft2(cmul(fft2(k), model.alpha_hat));
  int best = 0;
  double best_v = resp.data[0];
  for (std::size_t i = 1; i < resp.data.size(); ++i) {
    if (resp.data[i] > best_v) {
      best_v = resp.data[i];
      best = static_cast<int>(i);
    }
  }
  const int row = best / resp.width;
  const int col = best % resp.width;
  Detection d;
  d.peak_value = best_v;
  d.offset_x = col > resp.width / 2 ? col - resp.width : col;
  d.offset_y = row > resp.height / 2 ? row - resp.height : row;
  d.response = std::move(resp);
  return d;
}

void blend_appearance(FilterModel& m, const FeaturePatch& new_x,
                      const std::vector<SpectralPlane>& new_x_spec,
                      double rate) {
  if (rate < 0.0 || rate > 1.0)
    throw std::invalid_argument("blend_appearance: rate must be in [0,1]");
  if (new_x.width != m.appearance.width ||
      new_x.height != m.appearance.height ||
      new_x.channels != m.appearance.channels)
    throw std::invalid_argument("blend_appearance: sample shape mismatch");
  const double keep = 1.0 - rate;
  for (std::size_t i = 0; i < m.appearance.data.size(); ++i)
    m.appearance.data[i] = keep * m.appearance.data[i] + rate * new_x.data[i];
  for (int c = 0; c < new_x.channels; ++c)
    for (std::size_t i = 0; i < m.appearance_spectra[c].data.size(); ++i)
      m.appearance_spectra[c].data[i] =
          keep * m.appearance_spectra[c].data[i] + rate * new_x_spec[c].data[i];
  m.appearance_sq_norm = sum_squares(m.appearance);
}

FilterModel kcf_update_spectra(const FilterModel& model,
                               const SpectralPlane& new_alpha,
                               const FeaturePatch& new_x,
                               const std::vector<SpectralPlane>& new_x_spec,
                               double rate) {
  FilterModel out = model;
  blend_appearance(out, new_x, new_x_spec, rate);
  const double keep = 1.0 - rate;
  for (std::size_t i = 0; i < out.alpha_hat.data.size(); ++i)
    out.alpha_hat.data[i] =
        keep * model.alpha_hat.data[i] + rate * new_alpha.data[i];
  return out;
}

FilterModel kcf_update(const FilterModel& model, const SpectralPlane& new_alpha,
                       const FeaturePatch& new_x, double rate) {
  return kcf_update_spectra(model, new_alpha, new_x, fft2_channels(new_x),
                            rate);
}

}  // namespace octrack::kcf
