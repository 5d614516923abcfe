#include "octrack/spectral.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace octrack::spectral {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
  int m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Iterative radix-2 Cooley-Tukey, in place. tw[k] = exp(-2*pi*i*k/n), k < n/2.
void fft_pow2(std::complex<double>* a, int n,
              const std::complex<double>* tw, bool invert) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < half; ++k) {
        std::complex<double> w = tw[k * step];
        if (invert) w = std::conj(w);
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

std::vector<std::complex<double>> make_twiddles(int n, int count) {
  std::vector<std::complex<double>> tw(std::max(count, 1));
  for (int k = 0; k < count; ++k) {
    const double ang = -2.0 * std::numbers::pi * k / n;
    tw[k] = {std::cos(ang), std::sin(ang)};
  }
  return tw;
}

// Below this, a precomputed-twiddle O(n^2) transform beats the Bluestein
// detour through three padded power-of-two passes.
constexpr int kDirectMax = 90;

}  // namespace

Dft1D::Dft1D(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("Dft1D: length must be positive");
  if (is_pow2(n)) {
    strategy_ = Strategy::pow2;
    tw_ = make_twiddles(n_, n_ / 2);
    return;
  }
  if (n <= kDirectMax) {
    strategy_ = Strategy::direct;
    tw_ = make_twiddles(n_, n_);
    return;
  }
  strategy_ = Strategy::bluestein;
  m_ = next_pow2(2 * n_ - 1);
  mtw_ = make_twiddles(m_, m_ / 2);
  chirp_.resize(n_);
  for (int k = 0; k < n_; ++k) {
    // k^2 mod 2n keeps the phase argument small before the division.
    const long long k2 = (static_cast<long long>(k) * k) % (2LL * n_);
    const double ang = -std::numbers::pi * static_cast<double>(k2) / n_;
    chirp_[k] = {std::cos(ang), std::sin(ang)};
  }
  std::vector<std::complex<double>> b(m_, {0.0, 0.0});
  b[0] = std::conj(chirp_[0]);
  for (int k = 1; k < n_; ++k) {
    b[k] = std::conj(chirp_[k]);
    b[m_ - k] = b[k];
  }
  fft_pow2(b.data(), m_, mtw_.data(), false);
  bspec_ = std::move(b);
}

void Dft1D::transform_direct(std::complex<double>* x) const {
  std::vector<std::complex<double>> out(n_);
  for (int k = 0; k < n_; ++k) {
    std::complex<double> acc{0.0, 0.0};
    int idx = 0;
    for (int j = 0; j < n_; ++j) {
      acc += x[j] * tw_[idx];
      idx += k;
      if (idx >= n_) idx -= n_;
    }
    out[k] = acc;
  }
  for (int k = 0; k < n_; ++k) x[k] = out[k];
}

void Dft1D::transform_bluestein(std::complex<double>* x) const {
  std::vector<std::complex<double>> a(m_, {0.0, 0.0});
  for (int k = 0; k < n_; ++k) a[k] = x[k] * chirp_[k];
  fft_pow2(a.data(), m_, mtw_.data(), false);
  for (int k = 0; k < m_; ++k) a[k] *= bspec_[k];
  fft_pow2(a.data(), m_, mtw_.data(), true);
  const double inv_m = 1.0 / m_;
  for (int k = 0; k < n_; ++k) x[k] = chirp_[k] * (a[k] * inv_m);
}

void Dft1D::forward(std::complex<double>* x) const {
  switch (strategy_) {
    case Strategy::pow2:
      if (n_ > 1) fft_pow2(x, n_, tw_.data(), false);
      break;
    case Strategy::direct:
      transform_direct(x);
      break;
    case Strategy::bluestein:
      transform_bluestein(x);
      break;
  }
}

void Dft1D::inverse(std::complex<double>* x) const {
  if (n_ == 1) return;
  for (int k = 0; k < n_; ++k) x[k] = std::conj(x[k]);
  forward(x);
  for (int k = 0; k < n_; ++k) x[k] = std::conj(x[k]);
}

void fft2_inplace(SpectralPlane& s) {
  const int w = s.width, h = s.height;
  const Dft1D row_plan(w);
  const Dft1D col_plan(h);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r)
    row_plan.forward(s.data.data() + static_cast<std::size_t>(r) * w);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < w; ++c) {
    std::vector<std::complex<double>> col(h);
    for (int r = 0; r < h; ++r) col[r] = s.at(r, c);
    col_plan.forward(col.data());
    for (int r = 0; r < h; ++r) s.at(r, c) = col[r];
  }
}

SpectralPlane fft2(const Plane& p) {
  SpectralPlane out(p.width, p.height);
  for (std::size_t i = 0; i < p.data.size(); ++i) out.data[i] = p.data[i];
  fft2_inplace(out);
  return out;
}

Plane ifft2(const SpectralPlane& s) {
  const int w = s.width, h = s.height;
  SpectralPlane tmp = s;
  const Dft1D row_plan(w);
  const Dft1D col_plan(h);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r)
    row_plan.inverse(tmp.data.data() + static_cast<std::size_t>(r) * w);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < w; ++c) {
    std::vector<std::complex<double>> col(h);
    for (int r = 0; r < h; ++r) col[r] = tmp.at(r, c);
    col_plan.inverse(col.data());
    for (int r = 0; r < h; ++r) tmp.at(r, c) = col[r];
  }
  Plane out(w, h);
  const double scale = 1.0 / (static_cast<double>(w) * h);
  for (std::size_t i = 0; i < tmp.data.size(); ++i)
    out.data[i] = tmp.data[i].real() * scale;
  return out;
}

namespace {
void check_same_dims(const SpectralPlane& a, const SpectralPlane& b,
                     const char* what) {
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}
}  // namespace

SpectralPlane cmul(const SpectralPlane& a, const SpectralPlane& b) {
  check_same_dims(a, b, "cmul");
  SpectralPlane out(a.width, a.height);
  for (std::size_t i = 0; i < a.data.size(); ++i)
    out.data[i] = a.data[i] * b.data[i];
  return out;
}

SpectralPlane cmul_conj(const SpectralPlane& a, const SpectralPlane& b) {
  check_same_dims(a, b, "cmul_conj");
  SpectralPlane out(a.width, a.height);
  for (std::size_t i = 0; i < a.data.size(); ++i)
    out.data[i] = a.data[i] * std::conj(b.data[i]);
  return out;
}

SpectralPlane cdiv(const SpectralPlane& a, const SpectralPlane& b,
                   double epsilon) {
  check_same_dims(a, b, "cdiv");
  SpectralPlane out(a.width, a.height);
  for (std::size_t i = 0; i < a.data.size(); ++i)
    out.data[i] = cdiv_value(a.data[i], b.data[i], epsilon);
  return out;
}

SpectralPlane add_real(const SpectralPlane& b, double c) {
  SpectralPlane out = b;
  for (auto& v : out.data) v += c;
  return out;
}

}  // namespace octrack::spectral
