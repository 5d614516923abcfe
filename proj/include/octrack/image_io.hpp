#pragma once

#include <string>

#include "octrack/plane.hpp"

namespace octrack::image_io {

// Decodes a JPEG/PNG frame to grayscale intensities in [0,1]
// (0.299 R + 0.587 G + 0.114 B). Throws std::runtime_error on failure.
Plane load_gray_image(const std::string& path);

// Writes intensities in [0,1] as an 8-bit grayscale PNG.
void save_gray_png(const std::string& path, const Plane& image);

}  // namespace octrack::image_io
