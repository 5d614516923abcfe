#pragma once

#include <complex>
#include <vector>

#include "octrack/plane.hpp"

namespace octrack::spectral {

// Complex quotient by the textbook formula. Unlike the scaled algorithm in
// std::complex, this gives exactly (1,0) for z/z, which the constrained
// filter update relies on when the constraint weight is zero.
inline std::complex<double> cdiv_value(std::complex<double> a,
                                       std::complex<double> b,
                                       double epsilon = 0.0) {
  const double br = b.real(), bi = b.imag();
  double den = br * br + bi * bi;
  if (den == 0.0) den = epsilon;
  return {(a.real() * br + a.imag() * bi) / den,
          (a.imag() * br - a.real() * bi) / den};
}

// Precomputed 1-D DFT plan for a fixed length. Power-of-two lengths run
// iterative radix-2, short non-power-of-two lengths a precomputed-twiddle
// direct transform, long ones the Bluestein chirp-z transform on a padded
// power-of-two convolution. Plans are immutable and safe to share across
// threads.
class Dft1D {
 public:
  explicit Dft1D(int n);

  int length() const { return n_; }
  void forward(std::complex<double>* x) const;
  // Unnormalized inverse (conjugate-forward-conjugate); callers scale.
  void inverse(std::complex<double>* x) const;

 private:
  enum class Strategy { pow2, direct, bluestein };

  void transform_direct(std::complex<double>* x) const;
  void transform_bluestein(std::complex<double>* x) const;

  int n_ = 1;
  Strategy strategy_ = Strategy::pow2;
  std::vector<std::complex<double>> tw_;     // exp(-2*pi*i*k/n)
  // Bluestein state:
  int m_ = 0;                                // convolution length, power of two
  std::vector<std::complex<double>> mtw_;    // twiddles for length m
  std::vector<std::complex<double>> chirp_;  // exp(-i*pi*k^2/n), k < n
  std::vector<std::complex<double>> bspec_;  // forward FFT of the chirp filter
};

// Forward 2-D DFT of a real plane (unnormalized: DC bin = sum of samples).
SpectralPlane fft2(const Plane& p);

// In-place forward 2-D DFT of complex data.
void fft2_inplace(SpectralPlane& s);

// Inverse 2-D DFT with the 1/(W*H) factor; returns the real part.
Plane ifft2(const SpectralPlane& s);

// Elementwise product a.*b.
SpectralPlane cmul(const SpectralPlane& a, const SpectralPlane& b);

// Elementwise conjugate-product a.*conj(b).
SpectralPlane cmul_conj(const SpectralPlane& a, const SpectralPlane& b);

// Elementwise quotient a./b; where b is exactly zero the squared modulus in
// the denominator is floored at epsilon, so those bins come out zero instead
// of NaN (a guard, not a regularizer: ridge terms belong in b).
SpectralPlane cdiv(const SpectralPlane& a, const SpectralPlane& b,
                   double epsilon = 1e-300);

// Elementwise b + c for real c.
SpectralPlane add_real(const SpectralPlane& b, double c);

}  // namespace octrack::spectral
