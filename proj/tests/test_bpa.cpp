#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "sar/bpa.hpp"
#include "sar/simulate.hpp"
#include "support/oracles.hpp"

namespace {

sar::RadarParams table_radar(std::size_t n_v, std::size_t n_c) {
  sar::RadarParams p;
  p.N_v = n_v;
  p.N_c = n_c;
  return sar::make_radar_params(p);
}

sar::Trajectory centered_traj(const sar::RadarParams& radar, double v = 17.5) {
  const double step = v * radar.T_c;
  const double x0 = -0.5 * double(radar.N_c - 1) * step;
  return sar::linear_trajectory({x0, 0.0, 0.0}, v, radar);
}

std::size_t argmax_abs(const std::vector<sar::cdouble>& v) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > mag) {
      mag = std::abs(v[i]);
      best = i;
    }
  return best;
}

const sar::Srp kSrp{{0.0, 22.0, 0.0}};

}  // namespace

TEST_CASE("range_profiles - beat tone lands on the matching range bin") {
  const sar::RadarParams radar = table_radar(1, 2);
  const sar::Trajectory traj = sar::linear_trajectory({-0.5, 0.0, 0.0}, 0.0, radar);
  sar::Scene scene;
  scene.scatterers.push_back({{-0.5, 10.0, 0.0}, {1.0, 0.0}});
  const sar::BeatCube cube = sar::simulate_beat_cube(radar, scene, traj);
  const sar::RangeProfiles prof =
      sar::range_profiles(sar::extract_channel(cube, 0), radar, 4);
  REQUIRE(prof.n_bins == 1024);
  /* r_max = 42.5946 m over 1024 bins */
  CHECK(prof.dr == Catch::Approx(radar.r_max() / 1024.0).epsilon(1e-12));
  CHECK(prof.dr == Catch::Approx(0.0415963).margin(1e-6));
  /* bin 1024 * 10 / 42.5946 = 240.4 */
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t b = 0; b < prof.n_bins; ++b)
    if (std::abs(prof.at(0, b)) > mag) {
      mag = std::abs(prof.at(0, b));
      best = b;
    }
  CHECK(best == 240);
  CHECK(mag > 0.9); /* on-peak envelope loss at a 0.4-bin offset is under 2% */
  CHECK(mag < 1.01);
}

TEST_CASE("range_profiles - input validation") {
  const sar::RadarParams radar = table_radar(1, 2);
  sar::History h = sar::make_history(2, 128); /* wrong width */
  CHECK_THROWS_AS(sar::range_profiles(h, radar, 4), sar::ValidationError);
  sar::History ok = sar::make_history(2, radar.N_s);
  CHECK_THROWS_AS(sar::range_profiles(ok, radar, 0), sar::ValidationError);
  sar::RadarParams raw; /* gamma never derived */
  CHECK_THROWS_AS(sar::range_profiles(ok, raw, 4), sar::DomainError);
}

TEST_CASE("range_profiles - scatterers a third of a meter apart stay resolved") {
  /* range resolution c/(2B) = 0.166 m; 0.4 m separation leaves a dip */
  const sar::RadarParams radar = table_radar(1, 2);
  const sar::Trajectory traj = sar::linear_trajectory({0.0, 0.0, 0.0}, 0.0, radar);
  sar::Scene scene;
  scene.scatterers.push_back({{0.0, 10.0, 0.0}, {1.0, 0.0}});
  scene.scatterers.push_back({{0.0, 10.4, 0.0}, {1.0, 0.0}});
  const sar::BeatCube cube = sar::simulate_beat_cube(radar, scene, traj);
  const sar::RangeProfiles prof =
      sar::range_profiles(sar::extract_channel(cube, 0), radar, 4);
  /* peaks near bins 240 and 250 */
  double peak1 = 0.0, peak2 = 0.0;
  std::size_t i1 = 0, i2 = 0;
  for (std::size_t b = 236; b < 245; ++b)
    if (std::abs(prof.at(0, b)) > peak1) {
      peak1 = std::abs(prof.at(0, b));
      i1 = b;
    }
  for (std::size_t b = 246; b < 255; ++b)
    if (std::abs(prof.at(0, b)) > peak2) {
      peak2 = std::abs(prof.at(0, b));
      i2 = b;
    }
  double dip = 1e9;
  for (std::size_t b = i1; b <= i2; ++b) dip = std::min(dip, std::abs(prof.at(0, b)));
  CHECK(peak1 > 0.8);
  CHECK(peak2 > 0.8);
  CHECK(dip < 0.6 * std::min(peak1, peak2));
}

TEST_CASE("backproject - on-bin scatterer equals the matched filter exactly") {
  const sar::RadarParams radar = table_radar(1, 2);
  const sar::Trajectory traj = sar::linear_trajectory({-0.5, 0.0, 0.0}, 0.0, radar);
  const double r_exact = 240.0 * radar.r_max() / 1024.0; /* integer range bin */
  sar::Scene scene;
  scene.scatterers.push_back({{-0.5, r_exact, 0.0}, {1.0, 0.0}});
  const sar::BeatCube cube = sar::simulate_beat_cube(radar, scene, traj);
  const sar::History h = sar::extract_channel(cube, 0);

  const sar::ImageGrid grid =
      sar::regular_grid(-0.9, -0.1, 9, r_exact - 0.4, r_exact + 0.4, 9);
  const sar::SarImage img = sar::bpa_siso(cube, radar, traj, grid);
  REQUIRE(img.rows == 9);
  REQUIRE(img.cols == 9);

  const sar::cdouble oc =
      oracle::matched_filter_pixel(h, radar, traj, {-0.5, r_exact, 0.0});
  /* two on-bin chirps of a unit scatterer integrate to 2.0 */
  CHECK(std::abs(oc) == Catch::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(img.at(4, 4) - oc) < 1e-9 * std::abs(oc));

  /* off-bin pixels only suffer profile interpolation error */
  for (std::size_t q = 0; q < 9; ++q)
    for (std::size_t p = 0; p < 9; ++p) {
      const sar::cdouble o = oracle::matched_filter_pixel(
          h, radar, traj, {grid.x_axis[p], grid.y_axis[q], 0.0});
      CHECK(std::abs(img.at(q, p) - o) <= 0.12 * std::abs(oc));
    }
}

TEST_CASE("backproject - moving aperture stays close to the matched filter") {
  const sar::RadarParams radar = table_radar(1, 16);
  const sar::Trajectory traj = centered_traj(radar);
  sar::Scene scene;
  scene.scatterers.push_back({{0.3, 21.8, 0.0}, {1.0, 0.0}});
  const sar::BeatCube cube = sar::simulate_beat_cube(radar, scene, traj);
  const sar::History h = sar::extract_channel(cube, 0);
  const sar::ImageGrid grid = sar::regular_grid(-0.7, 1.3, 9, 20.8, 22.8, 9);
  const sar::SarImage img = sar::bpa_siso(cube, radar, traj, grid);

  const std::size_t peak = argmax_abs(img.pixels);
  CHECK(peak / img.cols == 4);
  CHECK(peak % img.cols == 4);
  const sar::cdouble oc_peak = oracle::matched_filter_pixel(h, radar, traj, {0.3, 21.8, 0.0});
  CHECK(std::abs(img.pixels[peak]) / std::abs(oc_peak) > 0.85);
  CHECK(std::abs(img.pixels[peak]) / std::abs(oc_peak) < 1.01);
  for (std::size_t q = 0; q < 9; ++q)
    for (std::size_t p = 0; p < 9; ++p) {
      const sar::cdouble o = oracle::matched_filter_pixel(
          h, radar, traj, {grid.x_axis[p], grid.y_axis[q], 0.0});
      CHECK(std::abs(img.at(q, p) - o) <= 0.15 * std::abs(oc_peak));
    }
}

TEST_CASE("backproject - ranges beyond the unambiguous limit are skipped and counted") {
  const sar::RadarParams radar = table_radar(1, 4);
  const sar::Trajectory traj = centered_traj(radar);
  sar::Scene scene;
  scene.scatterers.push_back({kSrp.pos, {1.0, 0.0}});
  const sar::BeatCube cube = sar::simulate_beat_cube(radar, scene, traj);
  const sar::ImageGrid grid = sar::regular_grid(-1.0, 1.0, 3, 49.0, 51.0, 3);
  const sar::SarImage img = sar::bpa_siso(cube, radar, traj, grid);
  CHECK(img.meta.clipped == 4 * 9);
  REQUIRE(!img.meta.warnings.empty());
  for (const auto& z : img.pixels) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("backproject - input validation") {
  const sar::RadarParams radar = table_radar(1, 2);
  const sar::Trajectory traj = centered_traj(radar);
  sar::Scene scene;
  scene.scatterers.push_back({kSrp.pos, {1.0, 0.0}});
  const sar::BeatCube cube = sar::simulate_beat_cube(radar, scene, traj);
  const sar::RangeProfiles prof =
      sar::range_profiles(sar::extract_channel(cube, 0), radar, 2);
  const sar::ImageGrid grid = sar::regular_grid(-1.0, 1.0, 3, 21.0, 23.0, 3);
  std::vector<sar::Vec3> bad_pos(3); /* wrong count */
  CHECK_THROWS_AS(sar::backproject(prof, radar, bad_pos, grid), sar::ValidationError);
  sar::ImageGrid empty;
  CHECK_THROWS_AS(sar::backproject(prof, radar, traj.pos, empty), sar::ValidationError);
  CHECK_THROWS_AS(sar::regular_grid(1.0, -1.0, 3, 21.0, 23.0, 3), sar::ValidationError);
  CHECK_THROWS_AS(sar::extract_channel(cube, 1), sar::ValidationError);
}

TEST_CASE("bpa - images superpose linearly") {
  const sar::RadarParams radar = table_radar(1, 8);
  const sar::Trajectory traj = centered_traj(radar);
  sar::Scene a, b, both;
  a.scatterers.push_back({{0.2, 21.7, 0.0}, {1.0, 0.0}});
  b.scatterers.push_back({{-0.4, 22.3, 0.0}, {0.0, 0.8}});
  both.scatterers = a.scatterers;
  both.scatterers.push_back(b.scatterers[0]);
  const sar::ImageGrid grid = sar::regular_grid(-1.0, 1.0, 5, 21.0, 23.0, 5);
  const sar::SarImage ia = sar::bpa_siso(sar::simulate_beat_cube(radar, a, traj), radar, traj, grid);
  const sar::SarImage ib = sar::bpa_siso(sar::simulate_beat_cube(radar, b, traj), radar, traj, grid);
  const sar::SarImage iab =
      sar::bpa_siso(sar::simulate_beat_cube(radar, both, traj), radar, traj, grid);
  double peak = 0.0;
  for (const auto& z : iab.pixels) peak = std::max(peak, std::abs(z));
  for (std::size_t j = 0; j < iab.pixels.size(); ++j)
    CHECK(std::abs(ia.pixels[j] + ib.pixels[j] - iab.pixels[j]) < 1e-9 * peak);
}

TEST_CASE("bpa - channel variants coincide for a collapsed array") {
  sar::RadarParams p;
  p.N_v = 3;
  p.N_c = 8;
  p.d_v = 0.0;
  const sar::RadarParams radar = sar::make_radar_params(p);
  const sar::Trajectory traj = centered_traj(radar);
  sar::Scene scene;
  scene.scatterers.push_back({{0.5, 21.6, 0.0}, {0.9, -0.1}});
  const sar::BeatCube cube = sar::simulate_beat_cube(radar, scene, traj);
  const sar::ImageGrid grid = sar::regular_grid(-1.0, 1.0, 5, 21.0, 23.0, 5);
  const sar::SarImage siso = sar::bpa_siso(cube, radar, traj, grid);
  const sar::SarImage pre = sar::bpa_prebf(cube, radar, traj, grid);
  const sar::SarImage pix = sar::bpa_pixelwise(cube, radar, traj, grid);
  double peak = 0.0;
  for (const auto& z : siso.pixels) peak = std::max(peak, std::abs(z));
  for (std::size_t j = 0; j < siso.pixels.size(); ++j) {
    CHECK(std::abs(pre.pixels[j] - siso.pixels[j]) < 1e-12 * peak);
    CHECK(std::abs(pix.pixels[j] - siso.pixels[j]) < 1e-12 * peak);
  }
  CHECK(siso.meta.pipeline == "bpa_siso");
  CHECK(pre.meta.pipeline == "bpa_prebf");
  CHECK(pix.meta.pipeline == "bpa_pixelwise");
}

TEST_CASE("bpa - pixel-wise beamforming sees through the array pattern null") {
  /* half-wavelength spacing with two-way carrier phase nulls a 4-channel
   * average at sin(azimuth) = 1/4; per-pixel steering has no such null */
  const sar::RadarParams radar = table_radar(4, 16);
  const sar::Trajectory traj = centered_traj(radar);
  const double xs = 5.5;
  const double ys = std::sqrt(22.0 * 22.0 - xs * xs); /* slant range 22, sin = 0.25 */
  sar::Scene scene;
  scene.scatterers.push_back({{xs, ys, 0.0}, {1.0, 0.0}});
  const sar::BeatCube cube = sar::simulate_beat_cube(radar, scene, traj);
  const sar::ImageGrid grid = sar::regular_grid(xs - 0.2, xs + 0.2, 3, ys - 0.2, ys + 0.2, 3);
  const sar::SarImage pre = sar::bpa_prebf(cube, radar, traj, grid);
  const sar::SarImage pix = sar::bpa_pixelwise(cube, radar, traj, grid);
  const double at_pre = std::abs(pre.at(1, 1));
  const double at_pix = std::abs(pix.at(1, 1));
  CHECK(at_pix > 5.0 * at_pre);
  CHECK(at_pix > 0.5 * double(radar.N_c)); /* coherent focus of a unit scatterer */
}
