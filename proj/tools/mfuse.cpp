// Batch multifocus fusion front end: fuse image pairs, generate
// synthetic test data, compute metrics, run the four-method benchmark,
// and self-check transform invariants.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfusion/contourlet.hpp"
#include "mfusion/fusion.hpp"
#include "mfusion/imgcore.hpp"
#include "mfusion/metrics.hpp"
#include "mfusion/synth.hpp"
#include "mfusion/wavelet.hpp"

namespace {

using namespace mfusion;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// All file outputs go through a temp file + rename so a crash never
// leaves a half-written result.
void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw IoError("cannot open '" + tmp + "' for writing");
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!os) throw IoError("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

void save_pnm_atomic(const Image& img, const std::string& path) {
  const std::string tmp = path + ".tmp";
  save_pnm(img, tmp);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

std::pair<int, int> parse_dims(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ConfigError("expected HxW, got '" + text + "'");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw ConfigError("expected HxW, got '" + text + "'");
  }
}

std::pair<int, int> parse_block_dims(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) {
      const int m = std::stoi(text);
      return {m, m};
    }
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw ConfigError("expected M or MxN, got '" + text + "'");
  }
}

std::vector<int> parse_depth_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad DFB depth '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty DFB depth list");
  return out;
}

struct CommonFusionFlags {
  std::string block = "8";
  double threshold = 1.75;
  int wavelet_levels = 1;
  int lp_levels = 1;
  std::string dfb_depths = "3";
  std::string granularity = "block";

  FusionConfig to_config(FusionMethod method) const {
    FusionConfig cfg;
    cfg.method = method;
    std::tie(cfg.block_rows, cfg.block_cols) = parse_block_dims(block);
    cfg.threshold = threshold;
    cfg.wavelet_levels = wavelet_levels;
    cfg.pyr_levels = lp_levels;
    cfg.dfb_depths = parse_depth_list(dfb_depths);
    cfg.granularity = granularity_from_name(granularity);
    cfg.validate();
    return cfg;
  }
};

void add_fusion_flags(CLI::App* cmd, CommonFusionFlags& f) {
  cmd->add_option("-b,--block", f.block, "Block dims M or MxN (default 8)");
  cmd->add_option("-t,--threshold", f.threshold, "Selection threshold TH (default 1.75)");
  cmd->add_option("--wavelet-levels", f.wavelet_levels, "DWT levels (default 1)");
  cmd->add_option("--lp-levels", f.lp_levels, "Laplacian pyramid levels (default 1)");
  cmd->add_option("--dfb-depths", f.dfb_depths, "Comma list of DFB depths, one per LP level");
  cmd->add_option("--granularity", f.granularity, "Selection granularity: block|subband")
      ->check(CLI::IsMember({"block", "subband"}));
}

Image load_source(const std::string& gt_path, const std::string& chart, std::uint32_t seed) {
  if (!gt_path.empty()) return load_pnm(gt_path);
  const auto [h, w] = parse_dims(chart);
  return test_chart(h, w, seed);
}

std::string metrics_csv(const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  std::string csv = "method,rmse1,rmse2,rmse,rmse_gt\n";
  for (const auto& [name, rep] : rows) {
    csv += name + "," + fmt6(rep.rmse1) + "," + fmt6(rep.rmse2) + "," + fmt6(rep.rmse) + "," +
           (rep.rmse_gt ? fmt6(*rep.rmse_gt) : std::string()) + "\n";
  }
  return csv;
}

int run_fuse(const std::string& method, const CommonFusionFlags& flags, const std::string& path_a,
             const std::string& path_b, const std::string& out) {
  const FusionConfig cfg = flags.to_config(fusion_method_from_name(method));
  const Image a = load_pnm(path_a);
  const Image b = load_pnm(path_b);
  const Image fused = fuse(a, b, cfg);
  save_pnm_atomic(fused, out);
  std::cout << "wrote " << out << " (" << fused.height << "x" << fused.width << ", method "
            << fusion_method_name(cfg.method) << ")\n";
  return 0;
}

int run_synth(const std::string& gt_path, const std::string& chart, std::uint32_t seed,
              const std::string& mask_name, double sigma, const std::string& out_a,
              const std::string& out_b) {
  const Image gt = load_source(gt_path, chart, seed);
  const FocusMask mask = FocusMask::from_name(mask_name);
  const auto [a, b] = make_pair(gt, mask, sigma);
  save_pnm_atomic(a, out_a);
  save_pnm_atomic(b, out_b);
  std::cout << "wrote " << out_a << " (" << a.height << "x" << a.width << ")\n";
  std::cout << "wrote " << out_b << " (" << b.height << "x" << b.width << ")\n";
  return 0;
}

int run_metrics(const std::vector<std::string>& inputs, const std::string& fused_path,
                const std::string& gt_path, const std::string& csv_path) {
  const Image a = load_pnm(inputs[0]);
  const Image b = load_pnm(inputs[1]);
  const Image fused = load_pnm(fused_path);
  MetricsReport rep = fusion_rmse(a, b, fused);
  if (!gt_path.empty()) rep.rmse_gt = rmse_pair(load_pnm(gt_path), fused);

  std::cout << "rmse1=" << fmt6(rep.rmse1) << " rmse2=" << fmt6(rep.rmse2)
            << " rmse=" << fmt6(rep.rmse);
  if (rep.rmse_gt) std::cout << " rmse_gt=" << fmt6(*rep.rmse_gt);
  std::cout << "\n";

  if (!csv_path.empty()) {
    write_file_atomic(csv_path, metrics_csv({{"-", rep}}));
    std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

int run_bench(const std::string& gt_path, const std::string& chart, std::uint32_t seed,
              const std::string& mask_name, double sigma, const CommonFusionFlags& flags,
              const std::string& csv_path, const std::string& out_dir) {
  const Image gt = load_source(gt_path, chart, seed);
  const FocusMask mask = FocusMask::from_name(mask_name);
  const auto [a, b] = make_pair(gt, mask, sigma);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    save_pnm_atomic(a, out_dir + "/input_a.pgm");
    save_pnm_atomic(b, out_dir + "/input_b.pgm");
    save_pnm_atomic(gt, out_dir + "/ground_truth.pgm");
  }

  const FusionMethod methods[] = {FusionMethod::WaveletMax, FusionMethod::SpatialSf,
                                  FusionMethod::WaveletSf, FusionMethod::ContourletSf};
  std::vector<std::pair<std::string, MetricsReport>> rows;
  for (FusionMethod m : methods) {
    const FusionConfig cfg = flags.to_config(m);
    const Image fused = fuse(a, b, cfg);
    MetricsReport rep = fusion_rmse(a, b, fused);
    rep.rmse_gt = rmse_pair(gt, fused);
    const std::string name = fusion_method_name(m);
    rows.emplace_back(name, rep);
    if (!out_dir.empty()) save_pnm_atomic(fused, out_dir + "/fused_" + name + ".pgm");
    std::cout << name << ": rmse=" << fmt6(rep.rmse) << " rmse_gt=" << fmt6(*rep.rmse_gt) << "\n";
  }
  write_file_atomic(csv_path, metrics_csv(rows));
  std::cout << "wrote " << csv_path << " (4 methods)\n";
  return 0;
}

Image random_image(int h, int w, std::mt19937& rng) {
  Image img(h, w);
  for (double& v : img.samples) v = static_cast<double>(rng() % 256);
  return img;
}

double max_abs_diff(const Image& x, const Image& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.samples.size(); ++i) {
    m = std::max(m, std::abs(x.samples[i] - y.samples[i]));
  }
  return m;
}

// Direct double-loop evaluation of the SF definition, kept separate from
// the library path on purpose.
double brute_force_sf(const Image& blk) {
  double rf = 0.0, cf = 0.0;
  for (int m = 0; m < blk.height; ++m) {
    for (int n = 1; n < blk.width; ++n) {
      const double d = blk.at(m, n) - blk.at(m, n - 1);
      rf += d * d;
    }
  }
  for (int m = 1; m < blk.height; ++m) {
    for (int n = 0; n < blk.width; ++n) {
      const double d = blk.at(m, n) - blk.at(m - 1, n);
      cf += d * d;
    }
  }
  const double mn = static_cast<double>(blk.height) * blk.width;
  return std::sqrt(rf / mn + cf / mn);
}

int run_selfcheck(const std::string& size, int trials) {
  const auto [h, w] = parse_dims(size);
  std::mt19937 rng(12345);
  bool all_ok = true;
  auto report = [&all_ok](const std::string& name, bool ok, double worst) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name << " (max err " << fmt6(worst) << ")\n";
    all_ok = all_ok && ok;
  };

  for (int levels = 1; levels <= 3; ++levels) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Image x = random_image(h, w, rng);
      worst = std::max(worst, max_abs_diff(idwt2(dwt2(x, levels)), x));
    }
    report("dwt2 roundtrip, haar, levels=" + std::to_string(levels), worst <= 1e-9, worst);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Image x = random_image(h, w, rng);
      worst = std::max(worst, max_abs_diff(lp_synthesis(lp_analysis(x, 2)), x));
    }
    report("laplacian pyramid roundtrip, levels=2", worst <= 1e-12, worst);
  }
  for (int depth = 1; depth <= 3; ++depth) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Image x = random_image(h, w, rng);
      worst = std::max(worst, max_abs_diff(dfb_synthesis(dfb_analysis(x, depth)), x));
    }
    report("dfb roundtrip, depth=" + std::to_string(depth), worst <= 1e-9, worst);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Image x = random_image(h, w, rng);
      worst = std::max(worst, max_abs_diff(ct_inverse(ct_forward(x, 1, {3})), x));
    }
    report("contourlet roundtrip, config (1,[3])", worst <= 1e-9, worst);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Image blk = random_image(8, 8, rng);
      worst = std::max(worst, std::abs(spatial_frequency(blk).sf - brute_force_sf(blk)));
    }
    report("spatial frequency vs brute force, 1000 blocks", worst <= 1e-12, worst);
  }
  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multifocus image fusion toolkit"};
  app.require_subcommand(1);

  // fuse
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse two registered images");
  std::string method;
  CommonFusionFlags fuse_flags;
  std::vector<std::string> fuse_inputs;
  std::string fuse_out;
  fuse_cmd->add_option("-m,--method", method, "wavelet|sf|wavelet-sf|contourlet-sf")
      ->required()
      ->check(CLI::IsMember({"wavelet", "sf", "wavelet-sf", "contourlet-sf"}));
  add_fusion_flags(fuse_cmd, fuse_flags);
  fuse_cmd->add_option("inputs", fuse_inputs, "A.pgm B.pgm")->expected(2)->required();
  fuse_cmd->add_option("-o,--output", fuse_out, "Output PGM path")->required();

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic multifocus pair");
  std::string synth_gt, synth_chart, synth_mask = "vhalf", synth_a, synth_b;
  std::uint32_t synth_seed = 42;
  double synth_sigma = 2.0;
  synth_cmd->add_option("--gt", synth_gt, "Ground-truth PGM");
  synth_cmd->add_option("--chart", synth_chart, "Generate a HxW test chart instead");
  synth_cmd->add_option("--seed", synth_seed, "Chart seed (default 42)");
  synth_cmd->add_option("--mask", synth_mask, "vhalf|hhalf|disk")
      ->check(CLI::IsMember({"vhalf", "hhalf", "disk"}));
  synth_cmd->add_option("--sigma", synth_sigma, "Defocus blur sigma")->required();
  synth_cmd->add_option("--out-a", synth_a, "Output path for image A")->required();
  synth_cmd->add_option("--out-b", synth_b, "Output path for image B")->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Evaluate a fused image");
  std::vector<std::string> metric_inputs;
  std::string metric_fused, metric_gt, metric_csv;
  metrics_cmd->add_option("--inputs", metric_inputs, "A.pgm B.pgm")->expected(2)->required();
  metrics_cmd->add_option("--fused", metric_fused, "Fused PGM")->required();
  metrics_cmd->add_option("--ground-truth", metric_gt, "Optional ground-truth PGM");
  metrics_cmd->add_option("--csv", metric_csv, "Optional CSV output path");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run all four methods on a synthetic pair");
  std::string bench_gt, bench_chart, bench_mask = "vhalf", bench_csv, bench_out_dir;
  std::uint32_t bench_seed = 42;
  double bench_sigma = 2.0;
  CommonFusionFlags bench_flags;
  bench_cmd->add_option("--gt", bench_gt, "Ground-truth PGM");
  bench_cmd->add_option("--chart", bench_chart, "Generate a HxW test chart instead");
  bench_cmd->add_option("--seed", bench_seed, "Chart seed (default 42)");
  bench_cmd->add_option("--mask", bench_mask, "vhalf|hhalf|disk")
      ->check(CLI::IsMember({"vhalf", "hhalf", "disk"}));
  bench_cmd->add_option("--sigma", bench_sigma, "Defocus blur sigma")->required();
  add_fusion_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--csv", bench_csv, "CSV output path")->required();
  bench_cmd->add_option("--out-dir", bench_out_dir, "Also write input/fused PGMs here");

  // selfcheck
  auto* check_cmd = app.add_subcommand("selfcheck", "Transform and metric invariant checks");
  std::string check_size = "128x128";
  int check_trials = 3;
  check_cmd->add_option("--size", check_size, "Test image dims HxW (default 128x128)");
  check_cmd->add_option("--trials", check_trials, "Random images per check (default 3)");

  try {
    app.parse(argc, argv);
    if (fuse_cmd->parsed()) {
      return run_fuse(method, fuse_flags, fuse_inputs[0], fuse_inputs[1], fuse_out);
    }
    if (synth_cmd->parsed()) {
      if (synth_gt.empty() == synth_chart.empty()) {
        throw ConfigError("give exactly one of --gt or --chart");
      }
      return run_synth(synth_gt, synth_chart, synth_seed, synth_mask, synth_sigma, synth_a,
                       synth_b);
    }
    if (metrics_cmd->parsed()) {
      return run_metrics(metric_inputs, metric_fused, metric_gt, metric_csv);
    }
    if (bench_cmd->parsed()) {
      if (bench_gt.empty() == bench_chart.empty()) {
        throw ConfigError("give exactly one of --gt or --chart");
      }
      return run_bench(bench_gt, bench_chart, bench_seed, bench_mask, bench_sigma, bench_flags,
                       bench_csv, bench_out_dir);
    }
    if (check_cmd->parsed()) return run_selfcheck(check_size, check_trials);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
