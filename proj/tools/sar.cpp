#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sar/cube_io.hpp"
#include "sar/image_io.hpp"
#include "sar/pipeline.hpp"
#include "sar/report.hpp"

namespace {

/* Every command that images needs the same ingredients: a scenario for the
 * geometry plus either a fresh simulation or a cube loaded from disk. The
 * loaded cube must match the scenario it claims to come from. */
struct Inputs {
  sar::Scenario sc;
  sar::BeatCube cube;
  sar::Trajectory traj;
  std::uint64_t hash = 0;
};

Inputs gather(const std::string& scenario_path, const std::string& cube_path,
              std::optional<std::uint64_t> seed_override) {
  Inputs in;
  in.sc = sar::load_scenario(scenario_path);
  if (seed_override) in.sc.seed = *seed_override;
  in.hash = sar::scenario_hash(in.sc);
  if (cube_path.empty()) {
    sar::SimulatedCollection col = sar::simulate_scenario(in.sc);
    in.cube = std::move(col.cube);
    in.traj = std::move(col.traj_measured);
  } else {
    sar::LoadedCube lc = sar::load_cube(cube_path);
    if (lc.scenario_hash != in.hash)
      std::fprintf(stderr,
                   "warning: cube %s was simulated from a different scenario "
                   "(hash %llx vs %llx)\n",
                   cube_path.c_str(), (unsigned long long)lc.scenario_hash,
                   (unsigned long long)in.hash);
    if (lc.radar.N_v != in.sc.radar.N_v || lc.radar.N_c != in.sc.radar.N_c ||
        lc.radar.N_s != in.sc.radar.N_s)
      throw sar::ValidationError("cube dimensions do not match the scenario radar");
    in.cube = std::move(lc.cube);
    in.traj = sar::measured_trajectory(in.sc);
  }
  return in;
}

std::string join_out(const std::string& out_dir, const std::string& name) {
  if (out_dir.empty()) return name;
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw sar::FormatError("cannot write " + path);
  out << text;
}

void print_metrics_line(const sar::MetricSet& m) {
  std::printf("image_contrast   %.6g\n", m.ic);
  std::printf("image_entropy    %.6g\n", m.ie);
  if (m.has_ar) std::printf("azimuth_res_m    %.6g\n", m.ar_m);
  if (m.has_cc) std::printf("cross_corr       %.6g\n", m.cc);
  for (const std::string& w : m.warnings) std::printf("warning: %s\n", w.c_str());
}

int dispatch(int argc, char** argv) {
  CLI::App app{"automotive SAR imaging and autofocus toolkit"};
  app.require_subcommand(1);

  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  app.add_option("--out-dir", out_dir, "directory for output files");
  app.add_option("--seed", seed, "noise seed override");
  app.add_option("--threads", threads, "backprojection worker threads")
      ->check(CLI::Range(std::size_t(1), std::size_t(64)));

  std::string scenario_path, cube_in, out_path, csv_path;
  std::string method = "pfa", autofocus = "none";
  std::size_t nkx = 256, nky = 256, channel = 0;
  double range_db = 60.0, ar_exclusion = 0.5;
  std::string reference_path;

  CLI::App* sim = app.add_subcommand("simulate", "simulate a beat cube from a scenario");
  sim->add_option("--scenario", scenario_path, "scenario json")->required();
  sim->add_option("--out", out_path, "output cube file")->required();

  CLI::App* info = app.add_subcommand("cube-info", "print a cube file header");
  info->add_option("--in", cube_in, "cube file")->required();

  CLI::App* img = app.add_subcommand("image", "form an image from a scenario or cube");
  img->add_option("--scenario", scenario_path, "scenario json")->required();
  img->add_option("--in", cube_in, "cube file (simulates when omitted)");
  img->add_option("--method", method, "pfa | bpa_siso | bpa_prebf | bpa_pixelwise");
  img->add_option("--autofocus", autofocus, "none | pga | leca_ic | leca_pga");
  img->add_option("--nkx", nkx, "pfa cross-range spectrum bins");
  img->add_option("--nky", nky, "pfa range spectrum bins");
  img->add_option("--channel", channel, "bpa_siso input channel");
  img->add_option("--out", out_path, "output png")->required();
  img->add_option("--csv", csv_path, "also write the complex image as csv");
  img->add_option("--range-db", range_db, "png dynamic range in dB");

  CLI::App* af = app.add_subcommand("autofocus", "estimate a localization drift");
  af->add_option("--scenario", scenario_path, "scenario json")->required();
  af->add_option("--in", cube_in, "cube file (simulates when omitted)");
  af->add_option("--method", method, "leca_ic | pga | leca_pga")->required();
  af->add_option("--out", out_path, "write the estimate as json");

  CLI::App* met = app.add_subcommand("metrics", "measure a saved image");
  met->add_option("--csv", csv_path, "image csv saved by the image command")->required();
  met->add_option("--reference", reference_path, "reference image csv for correlation");
  met->add_option("--exclusion", ar_exclusion, "peak exclusion radius in m");
  met->add_option("--out", out_path, "write the metrics as json");

  CLI::App* cmp = app.add_subcommand("compare", "run every pipeline and tabulate metrics");
  cmp->add_option("--scenario", scenario_path, "scenario json")->required();
  cmp->add_option("--in", cube_in, "cube file (simulates when omitted)");
  cmp->add_option("--method", method, "bpa flavor for the bpa rows");
  cmp->add_option("--nkx", nkx, "pfa cross-range spectrum bins");
  cmp->add_option("--nky", nky, "pfa range spectrum bins");
  cmp->add_option("--exclusion", ar_exclusion, "peak exclusion radius in m");

  CLI::App* exp = app.add_subcommand("export", "write a template scenario and derived constants");
  exp->add_option("--out", out_path, "template scenario path")->required();

  /* command-line mistakes land on the validation exit code; --help stays 0 */
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (sim->parsed()) {
    Inputs in = gather(scenario_path, "", seed);
    const std::string path = join_out(out_dir, out_path);
    sar::save_cube(path, in.cube, in.sc.radar, in.hash);
    std::printf("wrote %s: %zu channels x %zu chirps x %zu samples, scenario %016llx\n",
                path.c_str(), in.cube.n_channels, in.cube.n_chirps, in.cube.n_samples,
                (unsigned long long)in.hash);
    return 0;
  }

  if (info->parsed()) {
    const sar::LoadedCube lc = sar::load_cube(cube_in);
    std::printf("channels  %zu\nchirps    %zu\nsamples   %zu\n", lc.radar.N_v, lc.radar.N_c,
                lc.radar.N_s);
    std::printf("f_c       %.6g Hz\nB         %.6g Hz\nT_s       %.6g s\nT_c       %.6g s\n",
                lc.radar.f_c, lc.radar.B, lc.radar.T_s, lc.radar.T_c);
    std::printf("d_v       %.6g m\ngamma     %.6g rad/s^2\nr_max     %.6g m\n", lc.radar.d_v,
                lc.radar.gamma, lc.radar.r_max());
    std::printf("scenario  %016llx\n", (unsigned long long)lc.scenario_hash);
    return 0;
  }

  if (img->parsed()) {
    Inputs in = gather(scenario_path, cube_in, seed);
    sar::PipelineConfig cfg;
    cfg.method = method;
    cfg.autofocus = autofocus;
    cfg.nkx = nkx;
    cfg.nky = nky;
    cfg.channel = channel;
    cfg.threads = threads;
    const sar::PipelineResult res =
        sar::run_pipeline(in.cube, in.sc.radar, in.traj, in.sc.srp, sar::scenario_grid(in.sc),
                          cfg, in.hash);
    const std::string png = join_out(out_dir, out_path);
    sar::save_image_png(png, res.image, range_db);
    std::printf("wrote %s (%zux%zu, %s+%s, %.3fs)\n", png.c_str(), res.image.rows,
                res.image.cols, res.image.meta.pipeline.c_str(),
                res.image.meta.autofocus.c_str(), res.image.meta.runtime_s);
    if (res.has_beta) std::printf("beta_hat  %.6e m/chirp\n", res.beta_hat);
    if (!csv_path.empty()) {
      const std::string csv = join_out(out_dir, csv_path);
      sar::save_image_csv(csv, res.image);
      std::printf("wrote %s\n", csv.c_str());
    }
    print_metrics_line(sar::compute_metric_set(res.image, ar_exclusion));
    return 0;
  }

  if (af->parsed()) {
    Inputs in = gather(scenario_path, cube_in, seed);
    if (method != "leca_ic" && method != "pga" && method != "leca_pga")
      throw sar::ValidationError("autofocus: method must be leca_ic, pga, or leca_pga");
    sar::PipelineConfig cfg;
    cfg.method = (method == "pga") ? "pfa" : "bpa_siso";
    cfg.autofocus = method;
    cfg.threads = threads;
    /* the drift estimate needs only the autofocus stage; a small grid keeps
     * the obligatory imaging pass cheap */
    const sar::ImageGrid grid = sar::regular_grid(-0.5, 0.5, 9, in.sc.srp.pos.y - 0.5,
                                                  in.sc.srp.pos.y + 0.5, 9, in.sc.grid_z);
    const sar::PipelineResult res =
        sar::run_pipeline(in.cube, in.sc.radar, in.traj, in.sc.srp, grid, cfg, in.hash);
    nlohmann::json j;
    j["method"] = method;
    j["scenario_hash"] = in.hash;
    if (res.has_beta) j["beta_hat"] = res.beta_hat;
    if (res.has_phase) {
      j["quadratic_coeff"] = res.pga_q2;
      j["fit_rms_residual"] = res.pga_rms_residual;
    }
    j["autofocus_s"] = res.image.meta.stage_s.count("autofocus")
                           ? res.image.meta.stage_s.at("autofocus")
                           : 0.0;
    if (res.has_beta) std::printf("beta_hat  %.6e m/chirp\n", res.beta_hat);
    if (res.has_phase)
      std::printf("phase fit q2 %.6e rad/chirp^2, residual rms %.3g rad\n", res.pga_q2,
                  res.pga_rms_residual);
    if (!out_path.empty()) write_text(join_out(out_dir, out_path), j.dump(2) + "\n");
    return 0;
  }

  if (met->parsed()) {
    const sar::SarImage image = sar::load_image_csv(csv_path);
    sar::SarImage ref;
    const bool has_ref = !reference_path.empty();
    if (has_ref) ref = sar::load_image_csv(reference_path);
    const sar::MetricSet m =
        sar::compute_metric_set(image, ar_exclusion, 5, has_ref ? &ref : nullptr);
    print_metrics_line(m);
    if (!out_path.empty())
      write_text(join_out(out_dir, out_path), sar::metric_set_to_json(m).dump(2) + "\n");
    return 0;
  }

  if (cmp->parsed()) {
    Inputs in = gather(scenario_path, cube_in, seed);
    sar::CompareConfig cfg;
    if (method != "pfa") cfg.base.method = method;
    cfg.base.nkx = nkx;
    cfg.base.nky = nky;
    cfg.base.threads = threads;
    cfg.ar_exclusion_m = ar_exclusion;
    const sar::CompareReport rep =
        sar::run_compare(in.cube, in.sc.radar, in.traj, in.sc.srp, sar::scenario_grid(in.sc),
                         cfg, in.hash);
    const std::string text = sar::format_compare_text(rep);
    std::fputs(text.c_str(), stdout);
    write_text(join_out(out_dir, "compare.txt"), text);
    write_text(join_out(out_dir, "compare.json"), sar::compare_to_json(rep).dump(2) + "\n");
    for (const sar::CompareRow& r : rep.rows)
      if (r.ok)
        sar::save_image_png(join_out(out_dir, r.method + "_" + r.autofocus + ".png"), r.image,
                            range_db);
    return 0;
  }

  if (exp->parsed()) {
    sar::Scenario sc;
    sc.scene.scatterers = {{{0.0, 22.0, 0.0}, {1.0, 0.0}},
                           {{1.0, 21.5, 0.0}, {0.85, 0.0}},
                           {{-0.7, 22.5, 0.0}, {0.9, 0.0}}};
    const std::string path = join_out(out_dir, out_path);
    sar::save_scenario(sc, path);
    std::printf("wrote %s\n", path.c_str());
    std::printf("wavelength      %.6g m\n", sc.radar.wavelength());
    std::printf("chirp rate      %.6g rad/s^2\n", sc.radar.gamma);
    std::printf("r_max           %.6g m\n", sc.radar.r_max());
    std::printf("aperture        %.6g m\n",
                sc.velocity * sc.radar.T_c * double(sc.radar.N_c));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const sar::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const sar::FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const sar::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const sar::GeometryError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const sar::MetricError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const sar::OptimizationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 10;
  }
}
