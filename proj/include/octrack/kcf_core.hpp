#pragma once

#include <vector>

#include "octrack/plane.hpp"
#include "octrack/spectral.hpp"

namespace octrack::kcf {

// Per-channel forward transforms. Real channels are packed in pairs into
// single complex transforms and unpacked by conjugate symmetry.
std::vector<SpectralPlane> fft2_channels(const FeaturePatch& x);

// Sum of squared entries, accumulated in storage order.
double sum_squares(const FeaturePatch& x);

// Gaussian kernel correlation of two same-shape patches through the
// circulant cross-correlation identity:
//   k = exp(-max(|x|^2 + |xp|^2 - 2*ifft2(sum_c F(x_c) .* conj(F(xp_c))), 0)
//           / (sigma^2 * W*H*C)).
// Bin d holds the kernel value between xp and x cyclically shifted by d;
// values lie in (0, 1].
Plane gaussian_correlation(const FeaturePatch& x, const FeaturePatch& xp,
                           double sigma);

// Same, with both operands given as precomputed spectra and squared norms.
Plane gaussian_correlation_spectra(const std::vector<SpectralPlane>& x_spec,
                                   double x_sq,
                                   const std::vector<SpectralPlane>& xp_spec,
                                   double xp_sq, double sigma);

// F(k^{xx}) for a sample given by its spectra and squared norm.
SpectralPlane kernel_autocorrelation_spectrum(
    const std::vector<SpectralPlane>& x_spec, double x_sq, double sigma);

// Ridge solution in the Fourier domain: F(alpha) = F(y) / (F(k^{xx}) + lambda).
SpectralPlane train(const FeaturePatch& x, const SpectralPlane& label_spectrum,
                    double lambda, double sigma);
SpectralPlane train_spectra(const std::vector<SpectralPlane>& x_spec,
                            double x_sq, const SpectralPlane& label_spectrum,
                            double lambda, double sigma);
SpectralPlane train_from_kernel(const SpectralPlane& kernel_spectrum,
                                const SpectralPlane& label_spectrum,
                                double lambda);

// Learned filter: dual coefficients in the Fourier domain plus the appearance
// template they correlate against. appearance_spectra/appearance_sq_norm are
// caches kept in sync with appearance by the update functions.
struct FilterModel {
  SpectralPlane alpha_hat;
  FeaturePatch appearance;
  SpectralPlane label_spectrum;
  double lambda = 1e-4;
  double kernel_sigma = 0.5;
  std::vector<SpectralPlane> appearance_spectra;
  double appearance_sq_norm = 0.0;
};

void refresh_appearance_cache(FilterModel& m);

FilterModel make_model(const FeaturePatch& x,
                       const SpectralPlane& label_spectrum, double lambda,
                       double kernel_sigma);

struct Detection {
  double peak_value = 0.0;
  // Cyclic shift of the response maximum; offsets past half the plane size
  // wrap to negative shifts.
  int offset_x = 0;
  int offset_y = 0;
  Plane response;
};

// Correlates a candidate window against the model and locates the response
// peak (first maximum in row-major order on exact ties).
Detection detect(const FilterModel& model, const FeaturePatch& z);

// Appearance half of a model update: template, spectra cache, and squared
// norm, interpolated toward a new sample with weight `rate` in [0,1] on the
// new sample. The spectra cache is blended directly (the transform is
// linear), not recomputed.
void blend_appearance(FilterModel& m, const FeaturePatch& new_x,
                      const std::vector<SpectralPlane>& new_x_spec,
                      double rate);

// Full linear-interpolation update of appearance and coefficients.
FilterModel kcf_update(const FilterModel& model, const SpectralPlane& new_alpha,
                       const FeaturePatch& new_x, double rate);
FilterModel kcf_update_spectra(const FilterModel& model,
                               const SpectralPlane& new_alpha,
                               const FeaturePatch& new_x,
                               const std::vector<SpectralPlane>& new_x_spec,
                               double rate);

}  // namespace octrack::kcf
