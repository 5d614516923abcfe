#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "octrack/config.hpp"
#include "octrack/eval.hpp"
#include "octrack/kcf_core.hpp"
#include "octrack/oct_filter.hpp"
#include "octrack/redetect.hpp"
#include "octrack/spectral.hpp"
#include "octrack/tracker.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace octrack;

namespace {

tracker::TrackerConfig load_config(const std::string& config_path,
                                   const std::string& mode_override) {
  tracker::TrackerConfig cfg;
  if (!config_path.empty()) cfg = config::parse_file(config_path);
  if (!mode_override.empty()) {
    cfg.mode = config::parse_mode(mode_override);
    cfg.validate();
  }
  return cfg;
}

std::vector<eval::Sequence> discover_sequences(const std::string& data_dir) {
  if (!fs::is_directory(data_dir))
    throw std::runtime_error("not a directory: " + data_dir);
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(data_dir)) {
    if (!entry.is_directory()) continue;
    if (fs::exists(entry.path() / "img") &&
        fs::exists(entry.path() / "groundtruth_rect.txt"))
      dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty())
    throw std::runtime_error("no sequences under " + data_dir);
  std::vector<eval::Sequence> seqs;
  seqs.reserve(dirs.size());
  for (const fs::path& d : dirs) seqs.push_back(eval::load_sequence(d.string()));
  return seqs;
}

eval::BenchmarkReport run_both_modes(const std::vector<eval::Sequence>& seqs,
                                     const tracker::TrackerConfig& base,
                                     int jobs) {
  std::vector<eval::BenchmarkEntry> entries;
  for (tracker::TrackerMode m :
       {tracker::TrackerMode::kcf, tracker::TrackerMode::oct_kcf}) {
    tracker::TrackerConfig c = base;
    c.mode = m;
    entries.push_back({config::mode_name(m), c});
  }
  return eval::run_benchmark(seqs, entries, jobs);
}

void print_report(const eval::BenchmarkReport& report) {
  for (const eval::RunRecord& run : report.runs) {
    if (run.failed) {
      std::printf("%s %s: FAILED (%s)\n", run.sequence.c_str(),
                  run.config_name.c_str(), run.error.c_str());
    } else {
      std::printf("%s %s: frames=%zu mean_cle=%.3f precision20=%.4f "
                  "auc=%.4f fps=%.2f\n",
                  run.sequence.c_str(), run.config_name.c_str(),
                  run.frames.size(), run.mean_cle, run.precision_at_20,
                  run.auc, run.fps);
    }
  }
  for (const eval::Aggregate& agg : report.aggregates) {
    std::printf("ALL %s: precision20=%.4f auc=%.4f fps=%.2f\n",
                agg.config_name.c_str(), agg.precision_at_20, agg.auc,
                agg.mean_fps);
  }
}

int cmd_track(const std::string& seq_dir, const std::string& config_path,
              const std::string& mode_override, const std::string& out_dir) {
  const tracker::TrackerConfig cfg = load_config(config_path, mode_override);
  const eval::Sequence seq = eval::load_sequence(seq_dir);
  const std::string name = config::mode_name(cfg.mode);
  const eval::RunRecord run = eval::run_sequence(seq, cfg, name);
  if (run.failed) throw std::runtime_error(run.error);
  fs::create_directories(fs::path(out_dir) / seq.name);
  const fs::path csv = fs::path(out_dir) / seq.name / (name + ".csv");
  eval::write_frame_csv(csv.string(), run);
  std::printf("%s %s: frames=%zu mean_cle=%.3f precision20=%.4f auc=%.4f "
              "fps=%.2f\n",
              run.sequence.c_str(), run.config_name.c_str(), run.frames.size(),
              run.mean_cle, run.precision_at_20, run.auc, run.fps);
  std::printf("wrote %s\n", csv.string().c_str());
  return 0;
}

int cmd_bench(const std::string& data_dir, const std::string& config_path,
              const std::string& out_dir, int jobs) {
  const tracker::TrackerConfig base = load_config(config_path, "");
  const std::vector<eval::Sequence> seqs = discover_sequences(data_dir);
  const eval::BenchmarkReport report = run_both_modes(seqs, base, jobs);
  print_report(report);
  eval::write_report(out_dir, report);
  std::printf("wrote %s\n", (fs::path(out_dir) / "summary.csv").string().c_str());
  return 0;
}

int cmd_compare(const std::string& data_dir, const std::string& config_path,
                int jobs) {
  const tracker::TrackerConfig base = load_config(config_path, "");
  const std::vector<eval::Sequence> seqs = discover_sequences(data_dir);
  const eval::BenchmarkReport report = run_both_modes(seqs, base, jobs);
  std::printf("%-12s %-12s %-8s %s\n", "config", "precision20", "auc", "fps");
  for (const eval::Aggregate& agg : report.aggregates)
    std::printf("%-12s %-12.4f %-8.4f %.2f\n", agg.config_name.c_str(),
                agg.precision_at_20, agg.auc, agg.mean_fps);
  return 0;
}

// Compact oracle-equivalence sweep, a smoke test for the installed binary.
int cmd_selftest() {
  std::mt19937 rng(20260819u);
  int failures = 0;
  const auto report = [&](const char* label, double err, double tol) {
    const bool ok = err <= tol;
    std::printf("%s %-46s err=%.3g tol=%.0e\n", ok ? "PASS" : "FAIL", label,
                err, tol);
    if (!ok) ++failures;
  };

  {
    const Plane p = testutil::random_plane(6, 5, rng);
    const SpectralPlane fast = spectral::fft2(p);
    const SpectralPlane slow = oracle::naive_dft2(p);
    const Plane back = spectral::ifft2(fast);
    const double err = std::max(testutil::max_abs_diff(fast.data, slow.data),
                                testutil::max_abs_diff(back.data, p.data));
    report("2-D transform vs quadratic reference", err, 1e-10);
  }
  {
    const FeaturePatch x = testutil::random_patch(4, 4, 2, rng);
    const FeaturePatch xp = testutil::random_patch(4, 4, 2, rng);
    const Plane fast = kcf::gaussian_correlation(x, xp, 0.5);
    const Plane slow = oracle::naive_gaussian_correlation(x, xp, 0.5);
    report("kernel correlation vs shift-and-sum",
           testutil::max_abs_diff(fast.data, slow.data), 1e-8);
  }
  {
    const FeaturePatch x = testutil::random_patch(4, 4, 1, rng);
    const Plane y = testutil::random_plane(4, 4, rng);
    const Plane base = oracle::naive_gaussian_correlation(x, x, 0.5);
    const Plane dense = oracle::dense_ridge_solve(base, y, 1e-4);
    const Plane fast =
        spectral::ifft2(kcf::train(x, spectral::fft2(y), 1e-4, 0.5));
    report("ridge training vs dense linear solve",
           testutil::max_abs_diff(fast.data, dense.data), 1e-8);
  }
  {
    const FeaturePatch x = testutil::random_patch(4, 4, 1, rng);
    const Plane y = testutil::random_plane(4, 4, rng);
    const Plane prev = testutil::random_plane(4, 4, rng);
    const Plane base = oracle::naive_gaussian_correlation(x, x, 0.5);
    const SpectralPlane ks = spectral::fft2(base);
    const SpectralPlane ys = spectral::fft2(y);
    const SpectralPlane ps = spectral::fft2(prev);
    const Plane dense = oracle::dense_oct_solve(base, y, prev, 1e-4, 1000.0);
    const SpectralPlane direct = oct::solve_oct_alpha(ks, ys, ps, 1e-4, 1000.0);
    const SpectralPlane blended =
        oct::oct_update(ps, kcf::train_from_kernel(ks, ys, 1e-4),
                        oct::compute_eta(ks, 1e-4, 1000.0));
    const double err =
        std::max(testutil::max_abs_diff(spectral::ifft2(direct).data, dense.data),
                 testutil::max_abs_diff(direct.data, blended.data));
    report("constrained update vs dense solve and blend path", err, 1e-8);
  }
  {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> samples(200);
    oct::ResponseStats st;
    for (double& v : samples) {
      v = dist(rng);
      st = oct::stats_update(st, v);
    }
    const auto [mean, variance] = oracle::batch_stats(samples);
    const double err = std::max(std::abs(st.mean - mean),
                                std::abs(st.variance - variance));
    report("running statistics vs batch statistics", err, 1e-9);
  }
  {
    const redetect::PolarGrid g =
        redetect::polar_candidates({0.0, 0.0}, 50.0, 5, 16);
    double err = std::abs(static_cast<double>(g.points.size()) - 80.0);
    err = std::max(err, std::abs(g.points[3].x - 0.0));
    err = std::max(err, std::abs(g.points[3].y - 10.0));
    const double half_step = 3.0 * std::numbers::pi / 16.0;
    err = std::max(err, std::abs(g.points[0].x - 10.0 * std::cos(half_step)));
    err = std::max(err, std::abs(g.points[0].y - 10.0 * std::sin(half_step)));
    report("polar lattice worked coordinates", err, 1e-9);
  }

  if (failures == 0)
    std::printf("selftest: all checks passed\n");
  else
    std::printf("selftest: %d check(s) failed\n", failures);
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation-filter object tracking benchmark"};
  app.require_subcommand(1);

  std::string seq_dir, data_dir, config_path, mode_override, out_dir = "out";
  int jobs = 0;

  CLI::App* track = app.add_subcommand("track", "track one sequence");
  track->add_option("--seq", seq_dir, "sequence directory")->required();
  track->add_option("--config", config_path, "key=value config file");
  track->add_option("--mode", mode_override, "kcf or oct-kcf")
      ->check(CLI::IsMember({"kcf", "oct-kcf", "oct_kcf"}));
  track->add_option("--out", out_dir, "output directory");

  CLI::App* bench = app.add_subcommand("bench", "run both modes over a dataset");
  bench->add_option("--data", data_dir, "dataset directory")->required();
  bench->add_option("--config", config_path, "key=value config file");
  bench->add_option("--out", out_dir, "output directory");
  bench->add_option("--jobs", jobs, "parallel sequence runs (0 = default)");

  CLI::App* compare = app.add_subcommand("compare", "print the mode comparison table");
  compare->add_option("--data", data_dir, "dataset directory")->required();
  compare->add_option("--config", config_path, "key=value config file");
  compare->add_option("--jobs", jobs, "parallel sequence runs (0 = default)");

  app.add_subcommand("selftest", "check the fast paths against slow references");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (track->parsed())
      return cmd_track(seq_dir, config_path, mode_override, out_dir);
    if (bench->parsed()) return cmd_bench(data_dir, config_path, out_dir, jobs);
    if (compare->parsed()) return cmd_compare(data_dir, config_path, jobs);
    return cmd_selftest();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "octrack: error: %s\n", e.what());
    return 2;
  }
}
