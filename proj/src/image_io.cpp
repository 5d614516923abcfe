#include "octrack/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cmath>
#include <stdexcept>

namespace octrack::image_io {

Plane load_gray_image(const std::string& path) {
  cv::Mat m = cv::imread(path, cv::IMREAD_COLOR);
  if (m.empty())
    throw std::runtime_error("could not read image: " + path);
  Plane out(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r) {
    const cv::Vec3b* row = m.ptr<cv::Vec3b>(r);
    for (int c = 0; c < m.cols; ++c) {
      const double b = row[c][0], g = row[c][1], rd = row[c][2];
      out.at(r, c) = (0.299 * rd + 0.587 * g + 0.114 * b) / 255.0;
    }
  }
  return out;
}

void save_gray_png(const std::string& path, const Plane& image) {
  cv::Mat m(image.height, image.width, CV_8UC1);
  for (int r = 0; r < image.height; ++r) {
    uchar* row = m.ptr<uchar>(r);
    for (int c = 0; c < image.width; ++c) {
      double v = image.at(r, c);
      v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
      row[c] = static_cast<uchar>(std::lround(v * 255.0));
    }
  }
  if (!cv::imwrite(path, m))
    throw std::runtime_error("could not write image: " + path);
}

}  // namespace octrack::image_io
