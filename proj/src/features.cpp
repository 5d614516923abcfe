#include "octrack/features.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace octrack::features {

Plane extract_subwindow(const Plane& image, Point2d center, int w, int h) {
  if (w <= 0 || h <= 0)
    throw std::invalid_argument("extract_subwindow: size must be positive");
  const int left = static_cast<int>(std::floor(center.x + 0.5)) - w / 2;
  const int top = static_cast<int>(std::floor(center.y + 0.5)) - h / 2;
  Plane out(w, h);
  for (int r = 0; r < h; ++r) {
    int sr = top + r;
    sr = sr < 0 ? 0 : (sr >= image.height ? image.height - 1 : sr);
    for (int c = 0; c < w; ++c) {
      int sc = left + c;
      sc = sc < 0 ? 0 : (sc >= image.width ? image.width - 1 : sc);
      out.at(r, c) = image.at(sr, sc);
    }
  }
  return out;
}

namespace {
std::vector<double> hann1d(int n) {
  std::vector<double> v(n, 1.0);
  if (n > 1)
    for (int i = 0; i < n; ++i)
      v[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
  return v;
}
}  // namespace

Plane hann2d(int w, int h) {
  const auto wx = hann1d(w);
  const auto wy = hann1d(h);
  Plane out(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) out.at(r, c) = wy[r] * wx[c];
  return out;
}

Plane make_label(int w, int h, double bandwidth) {
  if (bandwidth <= 0.0)
    throw std::invalid_argument("make_label: bandwidth must be positive");
  Plane out(w, h);
  const double inv = 0.5 / (bandwidth * bandwidth);
  for (int r = 0; r < h; ++r) {
    const double dr = (r <= h / 2) ? r : r - h;
    for (int c = 0; c < w; ++c) {
      const double dc = (c <= w / 2) ? c : c - w;
      out.at(r, c) = std::exp(-(dr * dr + dc * dc) * inv);
    }
  }
  return out;
}

double label_bandwidth(double target_w, double target_h, int cell_size) {
  return 0.1 * std::sqrt(target_w * target_h) / cell_size;
}

namespace {

constexpr double kNormEps = 1e-4;
constexpr double kClip = 0.2;
constexpr double kTextureScale = 0.2357;

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

FeaturePatch fhog(const Plane& patch, int cell_size) {
  if (cell_size < 1)
    throw std::invalid_argument("fhog: cell_size must be positive");
  const int W = patch.width, H = patch.height;
  const int ncx = W / cell_size, ncy = H / cell_size;
  if (ncx < 1 || ncy < 1)
    throw std::invalid_argument("fhog: patch smaller than one cell");

  double uu[9], vv[9];
  for (int o = 0; o < 9; ++o) {
    uu[o] = std::cos(std::numbers::pi * o / 9.0);
    vv[o] = std::sin(std::numbers::pi * o / 9.0);
  }

  // Orientation histograms, 18 signed bins per cell. Each cell gathers the
  // bilinear votes of the pixels in its catchment span, so cells are
  // independent and the loop parallelizes without races.
  std::vector<double> hist(static_cast<std::size_t>(ncx) * ncy * 18, 0.0);
#pragma omp parallel for collapse(2) schedule(static)
  for (int cy = 0; cy < ncy; ++cy) {
    for (int cx = 0; cx < ncx; ++cx) {
      double* cell_hist = hist.data() + (static_cast<std::size_t>(cy) * ncx + cx) * 18;
      const int y_lo = std::max(1, static_cast<int>(std::ceil(cell_size * (cy - 0.5) - 0.5)));
      const int y_hi = std::min(H - 2, static_cast<int>(std::ceil(cell_size * (cy + 1.5) - 0.5)) - 1);
      const int x_lo = std::max(1, static_cast<int>(std::ceil(cell_size * (cx - 0.5) - 0.5)));
      const int x_hi = std::min(W - 2, static_cast<int>(std::ceil(cell_size * (cx + 1.5) - 0.5)) - 1);
      for (int y = y_lo; y <= y_hi; ++y) {
        const double yp = (y + 0.5) / cell_size - 0.5;
        const int iyp = static_cast<int>(std::floor(yp));
        const double wy = (iyp == cy) ? 1.0 - (yp - iyp)
                                      : (iyp == cy - 1 ? yp - iyp : 0.0);
        if (wy == 0.0) continue;
        for (int x = x_lo; x <= x_hi; ++x) {
          const double xp = (x + 0.5) / cell_size - 0.5;
          const int ixp = static_cast<int>(std::floor(xp));
          const double wx = (ixp == cx) ? 1.0 - (xp - ixp)
                                        : (ixp == cx - 1 ? xp - ixp : 0.0);
          if (wx == 0.0) continue;
          const double dx = patch.at(y, x + 1) - patch.at(y, x - 1);
          const double dy = patch.at(y + 1, x) - patch.at(y - 1, x);
          double best_dot = 0.0;
          int best_o = 0;
          for (int o = 0; o < 9; ++o) {
            const double dot = uu[o] * dx + vv[o] * dy;
            if (dot > best_dot) {
              best_dot = dot;
              best_o = o;
            } else if (-dot > best_dot) {
              best_dot = -dot;
              best_o = o + 9;
            }
          }
          cell_hist[best_o] += wx * wy * std::sqrt(dx * dx + dy * dy);
        }
      }
    }
  }

  // Per-cell gradient energy over unsigned orientations.
  std::vector<double> norm(static_cast<std::size_t>(ncx) * ncy, 0.0);
  for (int i = 0; i < ncx * ncy; ++i) {
    const double* hcell = hist.data() + static_cast<std::size_t>(i) * 18;
    double e = 0.0;
    for (int o = 0; o < 9; ++o) {
      const double s = hcell[o] + hcell[o + 9];
      e += s * s;
    }
    norm[i] = e;
  }

  FeaturePatch out(ncx, ncy, 31);
#pragma omp parallel for collapse(2) schedule(static)
  for (int cy = 0; cy < ncy; ++cy) {
    for (int cx = 0; cx < ncx; ++cx) {
      const auto ns = [&](int yy, int xx) {
        return norm[static_cast<std::size_t>(clampi(yy, 0, ncy - 1)) * ncx +
                    clampi(xx, 0, ncx - 1)];
      };
      // Block normalizers for the four 2x2 neighborhoods around the cell,
      // with replicated cells past the grid border.
      const double n1 = 1.0 / std::sqrt(ns(cy, cx) + ns(cy, cx + 1) +
                                        ns(cy + 1, cx) + ns(cy + 1, cx + 1) + kNormEps);
      const double n2 = 1.0 / std::sqrt(ns(cy - 1, cx) + ns(cy - 1, cx + 1) +
                                        ns(cy, cx) + ns(cy, cx + 1) + kNormEps);
      const double n3 = 1.0 / std::sqrt(ns(cy, cx - 1) + ns(cy, cx) +
                                        ns(cy + 1, cx - 1) + ns(cy + 1, cx) + kNormEps);
      const double n4 = 1.0 / std::sqrt(ns(cy - 1, cx - 1) + ns(cy - 1, cx) +
                                        ns(cy, cx - 1) + ns(cy, cx) + kNormEps);
      const double* hcell = hist.data() + (static_cast<std::size_t>(cy) * ncx + cx) * 18;
      double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
      for (int o = 0; o < 18; ++o) {
        const double hv = hcell[o];
        const double h1 = std::min(hv * n1, kClip);
        const double h2 = std::min(hv * n2, kClip);
        const double h3 = std::min(hv * n3, kClip);
        const double h4 = std::min(hv * n4, kClip);
        out.at(o, cy, cx) = 0.5 * (h1 + h2 + h3 + h4);
        t1 += h1;
        t2 += h2;
        t3 += h3;
        t4 += h4;
      }
      for (int o = 0; o < 9; ++o) {
        const double hv = hcell[o] + hcell[o + 9];
        out.at(18 + o, cy, cx) =
            0.5 * (std::min(hv * n1, kClip) + std::min(hv * n2, kClip) +
                   std::min(hv * n3, kClip) + std::min(hv * n4, kClip));
      }
      out.at(27, cy, cx) = kTextureScale * t1;
      out.at(28, cy, cx) = kTextureScale * t2;
      out.at(29, cy, cx) = kTextureScale * t3;
      out.at(30, cy, cx) = kTextureScale * t4;
    }
  }
  return out;
}

FeaturePatch gray_features(const Plane& patch) {
  FeaturePatch out(patch.width, patch.height, 1);
  double mean = 0.0;
  for (double v : patch.data) mean += v;
  mean /= static_cast<double>(patch.data.size());
  for (std::size_t i = 0; i < patch.data.size(); ++i)
    out.data[i] = patch.data[i] - mean;
  return out;
}

void apply_window(FeaturePatch& f, const Plane& window) {
  if (f.width != window.width || f.height != window.height)
    throw std::invalid_argument("apply_window: grid size mismatch");
  for (int c = 0; c < f.channels; ++c) {
    double* p = f.channel(c);
    for (std::size_t i = 0; i < f.plane_size(); ++i) p[i] *= window.data[i];
  }
}

WindowGeometry make_geometry(double target_w, double target_h,
                             double search_scale, int cell_size,
                             FeatureMode mode) {
  if (target_w <= 0.0 || target_h <= 0.0)
    throw std::invalid_argument("make_geometry: target size must be positive");
  if (search_scale < 1.0)
    throw std::invalid_argument("make_geometry: search_scale must be >= 1");
  if (cell_size < 1)
    throw std::invalid_argument("make_geometry: cell_size must be positive");
  WindowGeometry g;
  g.mode = mode;
  g.cell_size = (mode == FeatureMode::gray) ? 1 : cell_size;
  g.window_w = g.cell_size *
               std::max(1, static_cast<int>(std::ceil(target_w * search_scale / g.cell_size)));
  g.window_h = g.cell_size *
               std::max(1, static_cast<int>(std::ceil(target_h * search_scale / g.cell_size)));
  g.hann = hann2d(g.cells_w(), g.cells_h());
  return g;
}

FeaturePatch window_features(const Plane& frame, Point2d center,
                             const WindowGeometry& g) {
  const Plane patch = extract_subwindow(frame, center, g.window_w, g.window_h);
  FeaturePatch f = (g.mode == FeatureMode::fhog) ? fhog(patch, g.cell_size)
                                                 : gray_features(patch);
  apply_window(f, g.hann);
  return f;
}

}  // namespace octrack::features
