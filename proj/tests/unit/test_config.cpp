#include "deconv/config.hpp"
#include "deconv/csv.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace deconv;

namespace {

std::vector<ConfigSection> parse(const std::string& text)
{
  std::istringstream in(text);
  return parse_config(in);
}

} // namespace

TEST_CASE("config sections")
{
  const auto s = parse("; comment\n"
                       "[basic]\n"
                       "densities = gauss, uniform\n"
                       "noises = laplace\n"
                       "n = 100, 250\n"
                       "s2n = 2,4\n"
                       "reps = 20\n"
                       "seed = 7\n"
                       "[dep]\n"
                       "mode = dependent\n"
                       "densities = k\n"
                       "a = 0.5\n"
                       "M = 9\n"
                       "delta = 0.2\n"
                       "ise = e2\n"
                       "old_penalty = true\n");
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "basic");
  CHECK(s[0].config.densities == std::vector<DensityId>{ DensityId::gauss, DensityId::uniform });
  CHECK(s[0].config.noises == std::vector<NoiseKind>{ NoiseKind::laplace });
  CHECK(s[0].config.n_values == std::vector<std::size_t>{ 100, 250 });
  CHECK(s[0].config.s2n_values == std::vector<double>{ 2, 4 });
  CHECK(s[0].config.reps == 20);
  CHECK(s[0].config.seed == 7);
  CHECK(s[1].config.mode == Mode::dependent);
  CHECK(s[1].config.dependence_a == 0.5);
  CHECK(s[1].config.M == 9);
  CHECK(s[1].config.delta_grid == 0.2);
  CHECK(s[1].config.ise_method == IseMethod::e2);
  CHECK(s[1].config.old_penalty);
  CHECK(s[1].config.noises.size() == 2);
}

TEST_CASE("config errors")
{
  CHECK_THROWS_AS(parse("[a]\ndensities = gauss\nbandwidth = 3\n"), config_error);
  CHECK_THROWS_AS(parse("densities = gauss\n"), config_error);
  CHECK_THROWS_AS(parse("[a]\ndensities = gauss\n[a]\ndensities = uniform\n"), config_error);
  CHECK_THROWS_AS(parse("[a]\ndensities = gauss\ndensities = uniform\n"), config_error);
  CHECK_THROWS_AS(parse("[a]\ndensities = gauss\nreps = ten\n"), config_error);
  CHECK_THROWS_AS(parse("[a]\ndensities = nothing\n"), config_error);
  CHECK_THROWS_AS(parse("[a]\ndensities = gauss\nmode = dependent\n"), config_error);
  CHECK_THROWS_AS(parse(""), config_error);
  CHECK_THROWS_AS(parse("[a\n"), config_error);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/deconv.ini"), config_error);
  try {
    parse("[a]\ndensities = gauss\nfoo = 1\n");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
  }
}

TEST_CASE("number formatting is locale independent and round trips")
{
  CHECK(csv::format_double(0.5) == "0.5");
  CHECK(csv::format_double(1e-20) == "1e-20");
  CHECK(csv::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(csv::format_double(std::numeric_limits<double>::infinity()) == "inf");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(csv::format_double(x)) == x);
}

TEST_CASE("table writers")
{
  MiseTable t;
  t.cells.push_back({ { DensityId::gauss, NoiseKind::laplace, 100, 2.0 }, { 0.25, 0.125, 0.5, 3 } });
  std::ostringstream out;
  csv::write_mise_table(out, t);
  CHECK(out.str() == "density,noise,n,s2n,mean,median,sd,reps\ngauss,laplace,100,2,0.25,0.125,0.5,3\n");

  RatioTable r;
  r.cells.push_back({ { DensityId::cauchy, NoiseKind::gaussian, 250, 10.0 },
                      2.0,
                      { 0.5, 0.5, 0.0, 4 },
                      { 0.25, 0.25, 0.0, 4 } });
  std::ostringstream ro;
  csv::write_ratio_table(ro, r);
  CHECK(ro.str() == "density,noise,n,s2n,ratio,mean_num,mean_den,reps\ncauchy,gauss,250,10,2,0.5,0.25,4\n");
}

TEST_CASE("manifest")
{
  const auto dir = std::filesystem::temp_directory_path() / "deconv_manifest_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  RunManifest m;
  m.command = "simulate";
  m.config_path = "x.ini";
  m.config_text = "[a]\ndensities = gauss\n";
  m.seed = 99;
  m.output_dir = dir.string();
  m.arguments = { "simulate", "--config", "x.ini" };
  write_manifest(dir, m);
  std::ifstream in(dir / "manifest.json");
  REQUIRE(in);
  const auto j = nlohmann::json::parse(in);
  CHECK(j.at("command") == "simulate");
  CHECK(j.at("seed") == 99);
  CHECK(j.at("config") == m.config_text);
  CHECK(j.contains("version"));
  CHECK(j.contains("timestamp"));
  std::filesystem::remove_all(dir);
}
