// deconv: command-line front end for the penalized sinc deconvolution estimator.
//
//   deconv estimate --input z.txt --noise laplace --s2n 10 [--out DIR]
//   deconv simulate --config runs.ini --out DIR [--threads T]
//   deconv rates    --density mixgamma --noise laplace [--out DIR]
//   deconv penalty  --family new-laplace --n 100 --sigma 0 [--out DIR]

#include "deconv/config.hpp"
#include "deconv/csv.hpp"
#include "deconv/estimator.hpp"
#include "deconv/experiments.hpp"
#include "deconv/rates.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace deconv;

namespace {

std::vector<double> read_sample(const fs::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read sample file " + path.string());
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos)
      continue;
    const auto e = line.find_last_not_of(" \t\r");
    const char* first = line.data() + b;
    const char* last = line.data() + e + 1;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
      throw std::runtime_error("line " + std::to_string(lineno) + ": not a number: '" +
                               std::string(first, last) + "'");
    values.push_back(v);
  }
  if (values.size() < 2)
    throw std::runtime_error("need at least 2 observations");
  return values;
}

std::ofstream open_output(const fs::path& dir, const std::string& file)
{
  fs::create_directories(dir);
  std::ofstream out(dir / file, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + (dir / file).string());
  return out;
}

std::string slurp(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct NoiseArgs
{
  std::string noise = "laplace";
  double sigma = -1.0;
  double s2n = -1.0;

  void add_to(CLI::App* cmd)
  {
    cmd->add_option("--noise", noise, "Noise law: laplace, gauss or none")->capture_default_str();
    auto* s = cmd->add_option("--sigma", sigma, "Noise scale sigma");
    auto* r = cmd->add_option("--s2n", s2n, "Signal-to-noise ratio, sigma = 1/sqrt(s2n)");
    s->excludes(r);
  }
};

struct Common
{
  unsigned M = 8;
  double delta = 0.1;
  std::string out;
  std::vector<std::string> argv;
};

RunManifest manifest_for(const std::string& command, const Common& common, std::uint64_t seed = 0)
{
  RunManifest m;
  m.command = command;
  m.seed = seed;
  m.output_dir = common.out;
  m.arguments = common.argv;
  return m;
}

int cmd_estimate(const fs::path& input,
                 const NoiseArgs& na,
                 const Common& common,
                 double xmin,
                 double xmax,
                 std::size_t points)
{
  const auto z = read_sample(input);
  const NoiseKind kind = parse_noise_kind(na.noise);
  if (kind != NoiseKind::none && na.sigma < 0.0 && na.s2n < 0.0)
    throw std::runtime_error("give --sigma or --s2n for noisy data");

  double sigma = 0.0, s2n = 1.0e4;
  if (kind != NoiseKind::none) {
    if (na.s2n > 0.0) {
      s2n = na.s2n;
      sigma = 1.0 / std::sqrt(s2n);
    } else {
      sigma = na.sigma;
      s2n = sigma > 0.0 ? estimate_s2n(z, sigma) : 1.0e4;
    }
  }
  const auto noise = NoiseModel::make(kind, sigma);

  PenaltySpec ps;
  ps.family = penalty_family_for(kind);
  ps.n = z.size();
  ps.s2n = s2n;
  ps.sigma = noise.effective_sigma();
  ps.delta_grid = common.delta;
  const auto grid = model_grid(ps);
  const auto sel = select_models(z, noise, grid, common.M);

  if (!(xmax > xmin)) {
    const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
    const double pad = 0.1 * (*hi - *lo);
    xmin = *lo - pad;
    xmax = *hi + pad;
  }
  if (points < 2)
    throw std::runtime_error("--points must be at least 2");
  std::vector<double> xs(points);
  for (std::size_t k = 0; k < points; ++k)
    xs[k] = xmin + (xmax - xmin) * static_cast<double>(k) / static_cast<double>(points - 1);
  const auto g = evaluate(sel.estimate, xs);

  std::ostringstream summary;
  summary << "ell=" << csv::format_double(sel.estimate.ell)
          << " contrast=" << csv::format_double(sel.contrasts[sel.chosen])
          << " penalty=" << csv::format_double(sel.penalties[sel.chosen]) << " n=" << z.size()
          << " sigma=" << csv::format_double(sigma) << " s2n=" << csv::format_double(s2n)
          << " noise=" << to_string(kind) << '\n';

  auto write_curve = [&](std::ostream& os) {
    csv::write_row(os, { "x", "g_hat" });
    for (std::size_t k = 0; k < points; ++k)
      csv::write_row(os, { csv::format_double(xs[k]), csv::format_double(g[k]) });
  };
  if (common.out.empty()) {
    std::cerr << summary.str();
    write_curve(std::cout);
  } else {
    auto os = open_output(common.out, "estimate.csv");
    write_curve(os);
    auto ss = open_output(common.out, "summary.txt");
    ss << summary.str();
    auto m = manifest_for("estimate", common);
    m.config_path = input.string();
    write_manifest(common.out, m);
    std::cout << summary.str();
  }
  return 0;
}

int cmd_simulate(const fs::path& config_path,
                 const Common& common,
                 std::size_t threads,
                 std::optional<std::uint64_t> seed,
                 std::optional<std::size_t> reps)
{
  if (common.out.empty())
    throw std::runtime_error("simulate needs --out DIR");
  auto sections = parse_config_file(config_path);
  fs::create_directories(common.out);
  std::uint64_t first_seed = 0;
  for (auto& [name, cfg] : sections) {
    cfg.threads = threads;
    if (seed)
      cfg.seed = *seed;
    if (reps)
      cfg.reps = *reps;
    if (first_seed == 0)
      first_seed = cfg.seed;
    auto os = open_output(common.out, name + ".csv");
    if (cfg.mode == Mode::basic)
      csv::write_mise_table(os, run_basic(cfg));
    else
      csv::write_ratio_table(os, run_ratio(cfg));
    std::cout << "wrote " << (fs::path(common.out) / (name + ".csv")).string() << '\n';
  }
  auto m = manifest_for("simulate", common, first_seed);
  m.config_path = config_path.string();
  m.config_text = slurp(config_path);
  write_manifest(common.out, m);
  return 0;
}

int cmd_rates(const std::string& density_key,
              const NoiseArgs& na,
              const std::vector<double>& n_values,
              const std::vector<double>& offsets,
              const Common& common)
{
  const auto& d = parse_density(density_key);
  const NoiseKind kind = parse_noise_kind(na.noise);
  double sigma = 1.0 / std::sqrt(abacus_default_s2n);
  if (na.sigma >= 0.0)
    sigma = na.sigma;
  else if (na.s2n > 0.0)
    sigma = 1.0 / std::sqrt(na.s2n);
  const auto spec = rate_spec(d.id, kind, sigma);
  const auto curve = abacus(spec, n_values, offsets);

  auto write = [&](std::ostream& os) {
    csv::write_row(os, { "density", "noise", "sigma", "offset", "n", "log_n", "log_rate" });
    for (const auto& p : curve)
      csv::write_row(os, { d.name, to_string(kind), csv::format_double(kind == NoiseKind::none ? 0.0 : sigma),
                           csv::format_double(p.offset), csv::format_double(p.n),
                           csv::format_double(p.log_n), csv::format_double(p.log_rate) });
  };
  if (common.out.empty()) {
    write(std::cout);
  } else {
    auto os = open_output(common.out, "rates.csv");
    write(os);
    write_manifest(common.out, manifest_for("rates", common));
  }
  return 0;
}

int cmd_penalty(const std::string& family,
                const NoiseArgs& na,
                std::size_t n,
                double ell_max,
                bool unsmoothed,
                const Common& common)
{
  PenaltySpec ps;
  ps.family = parse_penalty_family(family);
  ps.n = n;
  ps.sigma = 0.0;
  ps.s2n = 1.0e4;
  if (na.s2n > 0.0) {
    ps.s2n = na.s2n;
    ps.sigma = 1.0 / std::sqrt(na.s2n);
  } else if (na.sigma > 0.0) {
    ps.sigma = na.sigma;
    ps.s2n = 1.0 / (na.sigma * na.sigma);
  }
  ps.smooth_zeta = !unsmoothed;
  if (!(common.delta > 0.0) || !(ell_max >= common.delta))
    throw config_error("need 0 < delta <= ell_max");

  auto write = [&](std::ostream& os) {
    csv::write_row(os, { "ell", "pen" });
    for (std::size_t m = 1;; ++m) {
      const double ell = static_cast<double>(m) * common.delta;
      if (ell > ell_max + 1e-9 * common.delta)
        break;
      csv::write_row(os, { csv::format_double(ell), csv::format_double(penalty(ps, ell)) });
    }
  };
  if (common.out.empty()) {
    write(std::cout);
  } else {
    auto os = open_output(common.out, "penalty.csv");
    write(os);
    write_manifest(common.out, manifest_for("penalty", common));
  }
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Adaptive density deconvolution by penalized projection on sinc spaces" };
  app.set_version_flag("--version", DECONV_VERSION);
  app.require_subcommand(1);

  Common common;
  common.argv.assign(argv, argv + argc);

  auto add_common = [&common](CLI::App* cmd, bool grid) {
    cmd->add_option("--out", common.out, "Output directory");
    if (grid) {
      cmd->add_option("--M", common.M, "FFT exponent, N = 2^M")
        ->check(CLI::Range(8u, 11u))
        ->capture_default_str();
      cmd->add_option("--delta", common.delta, "Step of the cutoff grid")->capture_default_str();
    }
  };

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate a density from a sample file");
  std::string input;
  NoiseArgs est_noise;
  double xmin = 0.0, xmax = 0.0;
  std::size_t points = 512;
  est->add_option("--input,-i", input, "One observation per line")->required();
  est_noise.add_to(est);
  add_common(est, true);
  est->add_option("--xmin", xmin, "Left end of the output grid (default: data range)");
  est->add_option("--xmax", xmax, "Right end of the output grid");
  est->add_option("--points", points, "Output grid size")->capture_default_str();

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run the Monte-Carlo programs of a config file");
  std::string config;
  std::size_t threads = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  sim->add_option("--config,-c", config, "INI config, one [section] per table")->required();
  sim->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();
  sim->add_option("--seed", seed, "Override the master seed of every section");
  sim->add_option("--reps", reps, "Override the replication count of every section");
  add_common(sim, false);

  // rates
  auto* rat = app.add_subcommand("rates", "Theoretical rate abacus curves");
  std::string density_key;
  NoiseArgs rate_noise;
  std::vector<double> n_values{ 100, 250, 500, 1000, 2500 };
  std::vector<double> offsets{ 0.0 };
  rat->add_option("--density", density_key, "Test density key")->required();
  rate_noise.add_to(rat);
  rat->add_option("--n", n_values, "Sample sizes")->delimiter(',')->capture_default_str();
  rat->add_option("--offsets", offsets, "Additive log offsets")->delimiter(',')->capture_default_str();
  add_common(rat, false);

  // penalty
  auto* pen = app.add_subcommand("penalty", "Penalty curve over the cutoff grid");
  std::string family = "new-laplace";
  NoiseArgs pen_noise;
  std::size_t pen_n = 100;
  double ell_max = 10.0 * pi;
  bool unsmoothed = false;
  pen->add_option("--family", family, "new-laplace, new-gauss, old-laplace or old-gauss")
    ->capture_default_str();
  pen_noise.add_to(pen);
  pen->add_option("--n", pen_n, "Sample size")->capture_default_str();
  pen->add_option("--ell-max", ell_max, "Largest cutoff")->capture_default_str();
  pen->add_flag("--unsmoothed", unsmoothed, "Use max(ell, pi) in the log term");
  add_common(pen, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*est)
      return cmd_estimate(input, est_noise, common, xmin, xmax, points);
    if (*sim)
      return cmd_simulate(config, common, threads, seed, reps);
    if (*rat)
      return cmd_rates(density_key, rate_noise, n_values, offsets, common);
    if (*pen)
      return cmd_penalty(family, pen_noise, pen_n, ell_max, unsmoothed, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
