#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace octrack {

// Real-valued 2-D array, row-major.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Plane() = default;
  Plane(int w, int h) : width(w), height(h), data(checked_size(w, h), 0.0) {}
  Plane(int w, int h, std::vector<double> d)
      : width(w), height(h), data(std::move(d)) {
    if (data.size() != checked_size(w, h))
      throw std::invalid_argument("Plane: data length != width*height");
  }

  double& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  double at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t size() const { return data.size(); }

  static std::size_t checked_size(int w, int h) {
    if (w <= 0 || h <= 0)
      throw std::invalid_argument("Plane: dimensions must be positive");
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  }
};

// Complex-valued 2-D array, row-major. Holds the 2-D DFT of a Plane.
struct SpectralPlane {
  int width = 0;
  int height = 0;
  std::vector<std::complex<double>> data;

  SpectralPlane() = default;
  SpectralPlane(int w, int h)
      : width(w), height(h), data(Plane::checked_size(w, h)) {}
  SpectralPlane(int w, int h, std::vector<std::complex<double>> d)
      : width(w), height(h), data(std::move(d)) {
    if (data.size() != Plane::checked_size(w, h))
      throw std::invalid_argument("SpectralPlane: data length != width*height");
  }

  std::complex<double>& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::complex<double> at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t size() const { return data.size(); }
};

// Multi-channel feature array: `channels` planes of width x height,
// stored channel-major (channel c occupies data[c*width*height ...]).
struct FeaturePatch {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  FeaturePatch() = default;
  FeaturePatch(int w, int h, int c)
      : width(w), height(h), channels(c),
        data(Plane::checked_size(w, h) * checked_channels(c), 0.0) {}

  double& at(int channel, int row, int col) {
    return data[(static_cast<std::size_t>(channel) * height + row) * width + col];
  }
  double at(int channel, int row, int col) const {
    return data[(static_cast<std::size_t>(channel) * height + row) * width + col];
  }
  double* channel(int c) {
    return data.data() + static_cast<std::size_t>(c) * width * height;
  }
  const double* channel(int c) const {
    return data.data() + static_cast<std::size_t>(c) * width * height;
  }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(width) * height;
  }

  static int checked_channels(int c) {
    if (c <= 0)
      throw std::invalid_argument("FeaturePatch: channels must be positive");
    return c;
  }
};

}  // namespace octrack
