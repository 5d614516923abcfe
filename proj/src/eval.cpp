#include "octrack/eval.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "octrack/image_io.hpp"

namespace octrack::eval {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Empty and NaN lines are annotation gaps; anything else that is not four
// numbers is an error.
std::optional<BoundingBox> parse_gt_line(const std::string& line, int lineno) {
  std::string s = line;
  for (char& c : s)
    if (c == ',' || c == '\t') c = ' ';
  std::istringstream in(s);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  if (tokens.empty()) return std::nullopt;
  const auto fail = [&]() {
    throw std::runtime_error("groundtruth_rect.txt line " +
                             std::to_string(lineno) + ": cannot parse '" +
                             line + "'");
  };
  if (tokens.size() != 4) fail();
  double v[4];
  bool has_nan = false;
  for (int i = 0; i < 4; ++i) {
    char* end = nullptr;
    v[i] = std::strtod(tokens[i].c_str(), &end);
    if (end != tokens[i].c_str() + tokens[i].size()) fail();
    if (std::isnan(v[i])) has_nan = true;
  }
  if (has_nan || v[2] <= 0.0 || v[3] <= 0.0 || !std::isfinite(v[0]) ||
      !std::isfinite(v[1]))
    return std::nullopt;
  return BoundingBox{v[0], v[1], v[2], v[3]};
}

// Numeric filename order when both stems are plain numbers, lexicographic
// otherwise, so 2.jpg sorts before 10.jpg.
bool frame_path_less(const std::string& a, const std::string& b) {
  const std::string sa = fs::path(a).stem().string();
  const std::string sb = fs::path(b).stem().string();
  const auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
      return std::isdigit(c);
    });
  };
  if (digits(sa) && digits(sb) && sa.size() <= 18 && sb.size() <= 18) {
    const long long na = std::stoll(sa);
    const long long nb = std::stoll(sb);
    if (na != nb) return na < nb;
  }
  return a < b;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<double> precision_thresholds() {
  std::vector<double> t(51);
  for (int i = 0; i <= 50; ++i) t[i] = i;
  return t;
}

std::vector<double> success_thresholds() {
  std::vector<double> t(21);
  for (int i = 0; i <= 20; ++i) t[i] = 0.05 * i;
  return t;
}

}  // namespace

Sequence load_sequence(const std::string& dir) {
  fs::path root(dir);
  if (!fs::is_directory(root))
    throw std::runtime_error("sequence directory not found: " + dir);
  Sequence seq;
  seq.name = root.filename().string();
  if (seq.name.empty()) seq.name = root.parent_path().filename().string();
  const fs::path img = root / "img";
  if (!fs::is_directory(img))
    throw std::runtime_error("missing img/ directory under " + dir);
  for (const auto& e : fs::directory_iterator(img)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = lower(e.path().extension().string());
    if (ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp")
      seq.frame_paths.push_back(e.path().string());
  }
  std::sort(seq.frame_paths.begin(), seq.frame_paths.end(), frame_path_less);
  if (seq.frame_paths.empty())
    throw std::runtime_error("no frames under " + img.string());

  std::ifstream gtf(root / "groundtruth_rect.txt");
  if (!gtf)
    throw std::runtime_error("missing groundtruth_rect.txt under " + dir);
  std::string line;
  int lineno = 0;
  while (std::getline(gtf, line))
    seq.ground_truth.push_back(parse_gt_line(line, ++lineno));
  seq.ground_truth.resize(seq.frame_paths.size());
  if (!seq.ground_truth[0])
    throw std::runtime_error("first frame has no usable annotation in " + dir);
  return seq;
}

double cle(const BoundingBox& a, const BoundingBox& b) {
  const Point2d ca = a.center(), cb = b.center();
  return std::hypot(ca.x - cb.x, ca.y - cb.y);
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  if (a.w <= 0.0 || a.h <= 0.0 || b.w <= 0.0 || b.h <= 0.0) return 0.0;
  const double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.w * a.h + b.w * b.h - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

std::vector<double> precision_curve(const std::vector<double>& cles) {
  std::vector<double> out(51, 0.0);
  if (cles.empty()) return out;
  for (int i = 0; i <= 50; ++i) {
    int hits = 0;
    for (double c : cles)
      if (c <= static_cast<double>(i)) ++hits;
    out[i] = static_cast<double>(hits) / static_cast<double>(cles.size());
  }
  return out;
}

std::vector<double> success_curve(const std::vector<double>& ious) {
  std::vector<double> out(21, 0.0);
  if (ious.empty()) return out;
  for (int i = 0; i <= 20; ++i) {
    const double thr = 0.05 * i;
    int hits = 0;
    for (double v : ious)
      if (v > thr) ++hits;
    out[i] = static_cast<double>(hits) / static_cast<double>(ious.size());
  }
  return out;
}

double auc(const std::vector<double>& curve) {
  if (curve.empty()) return 0.0;
  double s = 0.0;
  for (double v : curve) s += v;
  return s / static_cast<double>(curve.size());
}

RunRecord run_sequence(const Sequence& seq, const tracker::TrackerConfig& cfg,
                       const std::string& config_name) {
  if (seq.frame_paths.empty())
    throw std::runtime_error("run_sequence: empty sequence");
  if (seq.ground_truth.size() != seq.frame_paths.size() || !seq.ground_truth[0])
    throw std::runtime_error("run_sequence: missing first-frame annotation");

  RunRecord rec;
  rec.sequence = seq.name;
  rec.config_name = config_name;

  const Plane first = image_io::load_gray_image(seq.frame_paths[0]);
  tracker::TrackerState st = tracker::init(first, *seq.ground_truth[0], cfg);
  {
    FrameRecord fr;
    fr.frame = 1;
    fr.pred = st.current_box;
    fr.gt = seq.ground_truth[0];
    fr.cle = cle(fr.pred, *fr.gt);
    fr.iou = iou(fr.pred, *fr.gt);
    rec.frames.push_back(fr);
  }

  double seconds = 0.0;
  for (std::size_t i = 1; i < seq.frame_paths.size(); ++i) {
    const Plane frame = image_io::load_gray_image(seq.frame_paths[i]);
    const auto t0 = std::chrono::steady_clock::now();
    tracker::TrackResult res = tracker::track_frame(std::move(st), frame);
    const auto t1 = std::chrono::steady_clock::now();
    seconds += std::chrono::duration<double>(t1 - t0).count();
    st = std::move(res.state);
    FrameRecord fr;
    fr.frame = static_cast<long long>(i) + 1;
    fr.pred = res.box;
    fr.gt = seq.ground_truth[i];
    if (fr.gt) {
      fr.cle = cle(fr.pred, *fr.gt);
      fr.iou = iou(fr.pred, *fr.gt);
    }
    fr.diag = res.diag;
    rec.frames.push_back(fr);
  }

  const std::size_t tracked = rec.frames.size() - 1;
  rec.fps = (tracked > 0 && seconds > 0.0)
                ? static_cast<double>(tracked) / seconds
                : 0.0;

  std::vector<double> cles, ious;
  for (const FrameRecord& fr : rec.frames) {
    if (!fr.gt) continue;
    cles.push_back(fr.cle);
    ious.push_back(fr.iou);
  }
  rec.precision = precision_curve(cles);
  rec.success = success_curve(ious);
  rec.precision_at_20 = rec.precision[20];
  rec.auc = auc(rec.success);
  double sum = 0.0;
  for (double c : cles) sum += c;
  rec.mean_cle = cles.empty() ? 0.0 : sum / static_cast<double>(cles.size());
  return rec;
}

BenchmarkReport run_benchmark(const std::vector<Sequence>& seqs,
                              const std::vector<BenchmarkEntry>& configs,
                              int jobs) {
  if (configs.empty())
    throw std::invalid_argument("run_benchmark: no configurations");
  const int s_count = static_cast<int>(seqs.size());
  const int c_count = static_cast<int>(configs.size());
  BenchmarkReport rep;
  rep.runs.resize(static_cast<std::size_t>(s_count) * c_count);

  int nthreads = jobs;
#ifdef _OPENMP
  if (nthreads <= 0) nthreads = omp_get_max_threads();
#else
  nthreads = 1;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int i = 0; i < s_count * c_count; ++i) {
    const Sequence& seq = seqs[i / c_count];
    const BenchmarkEntry& entry = configs[i % c_count];
    try {
      rep.runs[i] = run_sequence(seq, entry.config, entry.name);
    } catch (const std::exception& e) {
      rep.runs[i].sequence = seq.name;
      rep.runs[i].config_name = entry.name;
      rep.runs[i].failed = true;
      rep.runs[i].error = e.what();
    }
  }

  for (int c = 0; c < c_count; ++c) {
    Aggregate a;
    a.config_name = configs[c].name;
    a.precision.assign(51, 0.0);
    a.success.assign(21, 0.0);
    int n = 0;
    double fps_sum = 0.0;
    for (int s = 0; s < s_count; ++s) {
      const RunRecord& r = rep.runs[static_cast<std::size_t>(s) * c_count + c];
      if (r.failed) continue;
      for (int i = 0; i < 51; ++i) a.precision[i] += r.precision[i];
      for (int i = 0; i < 21; ++i) a.success[i] += r.success[i];
      fps_sum += r.fps;
      ++n;
    }
    if (n > 0) {
      for (double& v : a.precision) v /= n;
      for (double& v : a.success) v /= n;
      a.precision_at_20 = a.precision[20];
      a.auc = auc(a.success);
      a.mean_fps = fps_sum / n;
    }
    rep.aggregates.push_back(std::move(a));
  }
  return rep;
}

void write_frame_csv(const std::string& path, const RunRecord& run) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "frame,pred_x,pred_y,pred_w,pred_h,gt_x,gt_y,gt_w,gt_h,"
         "cle,iou,peak,zscore,gate,redetect\n";
  for (const FrameRecord& fr : run.frames) {
    out << fr.frame << ',' << fmt(fr.pred.x) << ',' << fmt(fr.pred.y) << ','
        << fmt(fr.pred.w) << ',' << fmt(fr.pred.h) << ',';
    if (fr.gt) {
      out << fmt(fr.gt->x) << ',' << fmt(fr.gt->y) << ',' << fmt(fr.gt->w)
          << ',' << fmt(fr.gt->h) << ',' << fmt(fr.cle) << ',' << fmt(fr.iou);
    } else {
      out << "nan,nan,nan,nan,nan,nan";
    }
    out << ',' << fmt(fr.diag.peak) << ',' << fmt(fr.diag.zscore) << ','
        << (fr.diag.gate_fired ? 1 : 0) << ',' << (fr.diag.redetected ? 1 : 0)
        << '\n';
  }
}

void write_summary_csv(const std::string& path, const BenchmarkReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "sequence,config,frames,mean_cle,precision_at_20,auc\n";
  for (const RunRecord& r : report.runs) {
    if (r.failed) {
      out << r.sequence << ',' << r.config_name << ",0,nan,nan,nan\n";
      continue;
    }
    out << r.sequence << ',' << r.config_name << ',' << r.frames.size() << ','
        << fmt(r.mean_cle) << ',' << fmt(r.precision_at_20) << ','
        << fmt(r.auc) << '\n';
  }
  for (const Aggregate& a : report.aggregates)
    out << "ALL," << a.config_name << ",,," << fmt(a.precision_at_20) << ','
        << fmt(a.auc) << '\n';
}

void write_curve_csv(const std::string& path,
                     const std::vector<double>& thresholds,
                     const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "threshold,value\n";
  for (std::size_t i = 0; i < thresholds.size(); ++i)
    out << fmt(thresholds[i]) << ',' << fmt(values[i]) << '\n';
}

void write_curve_svg(const std::string& path, const std::string& title,
                     const std::string& x_label,
                     const std::vector<double>& thresholds,
                     const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const double x0 = 50, x1 = 460, y0 = 310, y1 = 30;
  const double tmin = thresholds.front(), tmax = thresholds.back();
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" "
         "viewBox=\"0 0 480 360\">\n"
      << "<rect width=\"480\" height=\"360\" fill=\"white\"/>\n"
      << "<text x=\"240\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n"
      << "<line x1=\"50\" y1=\"310\" x2=\"460\" y2=\"310\" stroke=\"black\"/>\n"
      << "<line x1=\"50\" y1=\"30\" x2=\"50\" y2=\"310\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fy = y0 - (y0 - y1) * i / 4.0;
    out << "<text x=\"44\" y=\"" << fmt(fy + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << fmt(0.25 * i) << "</text>\n";
    const double fx = x0 + (x1 - x0) * i / 4.0;
    out << "<text x=\"" << fmt(fx)
        << "\" y=\"326\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"10\">" << fmt(tmin + (tmax - tmin) * i / 4.0)
        << "</text>\n";
  }
  out << "<text x=\"255\" y=\"348\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"12\">" << x_label
      << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double px = x0 + (x1 - x0) * (thresholds[i] - tmin) / (tmax - tmin);
    const double py = y0 - (y0 - y1) * values[i];
    out << fmt(px) << ',' << fmt(py) << ' ';
  }
  out << "\"/>\n</svg>\n";
}

void write_report(const std::string& out_dir, const BenchmarkReport& report) {
  fs::create_directories(out_dir);
  for (const RunRecord& r : report.runs) {
    if (r.failed) continue;
    const fs::path d = fs::path(out_dir) / r.sequence;
    fs::create_directories(d);
    write_frame_csv((d / (r.config_name + ".csv")).string(), r);
  }
  write_summary_csv((fs::path(out_dir) / "summary.csv").string(), report);
  const fs::path curves = fs::path(out_dir) / "curves";
  fs::create_directories(curves);
  const auto pt = precision_thresholds();
  const auto st = success_thresholds();
  for (const Aggregate& a : report.aggregates) {
    write_curve_csv((curves / (a.config_name + "_precision.csv")).string(), pt,
                    a.precision);
    write_curve_svg((curves / (a.config_name + "_precision.svg")).string(),
                    a.config_name + " precision", "location error threshold (px)",
                    pt, a.precision);
    write_curve_csv((curves / (a.config_name + "_success.csv")).string(), st,
                    a.success);
    write_curve_svg((curves / (a.config_name + "_success.svg")).string(),
                    a.config_name + " success", "overlap threshold", st,
                    a.success);
  }
}

}  // namespace octrack::eval
