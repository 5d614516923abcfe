#pragma once

#include <optional>
#include <string>
#include <vector>

#include "octrack/geometry.hpp"
#include "octrack/tracker.hpp"

namespace octrack::eval {

struct Sequence {
  std::string name;
  std::vector<std::string> frame_paths;
  // Parallel to frame_paths; frames without a usable annotation are nullopt
  // and are tracked but excluded from metrics.
  std::vector<std::optional<BoundingBox>> ground_truth;
};

// Loads a sequence directory laid out as <dir>/img/0001.jpg ... plus
// <dir>/groundtruth_rect.txt with one x,y,w,h line per frame (comma, tab,
// or space separated). Throws std::runtime_error when the layout is
// unusable.
Sequence load_sequence(const std::string& dir);

// Center location error: Euclidean distance between box centers, pixels.
double cle(const BoundingBox& a, const BoundingBox& b);

// Intersection over union; degenerate boxes score 0.
double iou(const BoundingBox& a, const BoundingBox& b);

// Fraction of frames with CLE <= threshold, thresholds 0..50 px step 1.
std::vector<double> precision_curve(const std::vector<double>& cles);

// Fraction of frames with IoU strictly above threshold, 0..1 step 0.05.
std::vector<double> success_curve(const std::vector<double>& ious);

// Mean of the curve values.
double auc(const std::vector<double>& curve);

struct FrameRecord {
  long long frame = 0;  // 1-based
  BoundingBox pred;
  std::optional<BoundingBox> gt;
  double cle = 0.0;  // meaningless when gt is empty
  double iou = 0.0;
  tracker::FrameDiagnostics diag;
};

struct RunRecord {
  std::string sequence;
  std::string config_name;
  std::vector<FrameRecord> frames;
  std::vector<double> precision;  // 51 thresholds
  std::vector<double> success;    // 21 thresholds
  double mean_cle = 0.0;
  double precision_at_20 = 0.0;
  double auc = 0.0;
  // Wall-clock throughput over track_frame calls only. Reported on stdout;
  // deliberately never written to result files so runs stay byte-identical.
  double fps = 0.0;
  bool failed = false;
  std::string error;
};

// Tracks one sequence with one configuration, loading frames from disk.
RunRecord run_sequence(const Sequence& seq, const tracker::TrackerConfig& cfg,
                       const std::string& config_name);

struct BenchmarkEntry {
  std::string name;
  tracker::TrackerConfig config;
};

struct Aggregate {
  std::string config_name;
  std::vector<double> precision;  // per-sequence curves, equal weight
  std::vector<double> success;
  double precision_at_20 = 0.0;
  double auc = 0.0;
  double mean_fps = 0.0;
};

struct BenchmarkReport {
  std::vector<RunRecord> runs;  // sequence-major, config-minor
  std::vector<Aggregate> aggregates;
};

// Runs every configuration over every sequence. jobs > 0 caps the number of
// parallel sequence runs; 0 uses the OpenMP default. Failures of individual
// runs are recorded, not thrown.
BenchmarkReport run_benchmark(const std::vector<Sequence>& seqs,
                              const std::vector<BenchmarkEntry>& configs,
                              int jobs = 0);

// results/<sequence>/<config>.csv
void write_frame_csv(const std::string& path, const RunRecord& run);
// results/summary.csv: per-run rows then per-config aggregate rows.
void write_summary_csv(const std::string& path, const BenchmarkReport& report);
void write_curve_csv(const std::string& path,
                     const std::vector<double>& thresholds,
                     const std::vector<double>& values);
void write_curve_svg(const std::string& path, const std::string& title,
                     const std::string& x_label,
                     const std::vector<double>& thresholds,
                     const std::vector<double>& values);
// Writes the whole layout (per-frame CSVs, summary, curves) under out_dir.
void write_report(const std::string& out_dir, const BenchmarkReport& report);

}  // namespace octrack::eval
