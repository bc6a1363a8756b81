// Command-line front end: confidence intervals from data files, model
// simulation, Monte Carlo coverage experiments, block-size advice and
// block-statistic ECDF export.
//
// Exit codes: 0 success, 2 input/configuration error, 3 degenerate
// statistic (zero self-normalizer).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snbs/snbs.hpp"

namespace {

using namespace snbs;

struct ModelOptions {
  std::string model;
  double d = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double ma_coef = 0.5;
  double t_df = 1.5;
  std::size_t burn_in = 1000;
  std::size_t cutoff = 0;
};

void add_model_options(CLI::App* sub, ModelOptions& mo) {
  sub->add_option("--model", mo.model,
                  "model: a, b, c, a*, b*, c* (aliases astar/bstar/cstar), "
                  "tar, lmsd, ma1stable")
      ->required();
  sub->add_option("--d", mo.d, "memory parameter d < 1/2 (models a/b/c/lmsd)");
  sub->add_option("--rho", mo.rho, "TAR autoregression coefficient in [0,1)");
  sub->add_option("--alpha-stable", mo.alpha,
                  "stable/Pareto tail index in (1,2) (lmsd, ma1stable)");
  sub->add_option("--ma-coef", mo.ma_coef, "MA(1) coefficient a >= 0");
  sub->add_option("--df", mo.t_df, "t degrees of freedom for model c");
  sub->add_option("--burn-in", mo.burn_in, "TAR burn-in length");
  sub->add_option("--cutoff", mo.cutoff,
                  "MA truncation horizon (default floor(n^1.5))");
}

double require(double v, const char* flag, const char* model) {
  if (std::isnan(v)) {
    throw std::invalid_argument(std::string(flag) + " is required for model " +
                                model);
  }
  return v;
}

ModelSpec build_model(const ModelOptions& mo) {
  std::string name = mo.model;
  auto starred = [&](const std::string& plain, const std::string& alias) {
    return name == plain + "*" || name == alias;
  };
  if (name == "a" || starred("a", "astar") || name == "b" ||
      starred("b", "bstar") || name == "c" || starred("c", "cstar")) {
    GaussLinearSpec g;
    const char base = name[0];
    g.transform = base == 'a'   ? Transform::Identity
                  : base == 'b' ? Transform::Square
                                : Transform::TInverse;
    g.family = name.size() > 1 ? CoeffFamily::LogWeighted : CoeffFamily::Plain;
    g.d = require(mo.d, "--d", name.c_str());
    g.t_df = mo.t_df;
    return g;
  }
  if (name == "tar") {
    TarSpec t;
    t.rho = require(mo.rho, "--rho", "tar");
    t.burn_in = mo.burn_in;
    return t;
  }
  if (name == "lmsd") {
    LmsdSpec l;
    l.d = require(mo.d, "--d", "lmsd");
    l.alpha = require(mo.alpha, "--alpha-stable", "lmsd");
    return l;
  }
  if (name == "ma1stable") {
    Ma1StableSpec s;
    s.a = mo.ma_coef;
    s.alpha = require(mo.alpha, "--alpha-stable", "ma1stable");
    return s;
  }
  throw std::invalid_argument("unknown model '" + name + "'");
}

// Opens --out when given, otherwise writes to stdout.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw std::invalid_argument("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::size_t block_from_flags(std::size_t n, std::size_t b, double c) {
  if (b == 0 && std::isnan(c)) {
    throw std::invalid_argument("one of --b or --c is required");
  }
  if (b != 0 && !std::isnan(c)) {
    throw std::invalid_argument("--b and --c are mutually exclusive");
  }
  if (b == 0) b = floor_index(c * std::sqrt(static_cast<double>(n)));
  return b;
}

std::string side_name(IntervalSide s) {
  switch (s) {
    case IntervalSide::LowerOneSided:
      return "lower";
    case IntervalSide::UpperOneSided:
      return "upper";
    default:
      return "two";
  }
}

int cmd_ci(const std::string& input, std::size_t b_flag, double c_flag,
           double level, const std::string& side_flag) {
  const std::vector<double> data = read_series_csv(input);
  if (data.size() < 2) {
    throw std::invalid_argument("input series too short (n < 2)");
  }
  const std::size_t n = data.size();
  const std::size_t b = block_from_flags(n, b_flag, c_flag);
  if (n < std::max<std::size_t>(4, b + 1)) {
    throw std::invalid_argument("need n >= max(4, b+1); got n = " +
                                std::to_string(n) + ", b = " +
                                std::to_string(b));
  }
  IntervalSide side;
  if (side_flag == "lower") {
    side = IntervalSide::LowerOneSided;
  } else if (side_flag == "upper") {
    side = IntervalSide::UpperOneSided;
  } else if (side_flag == "two") {
    side = IntervalSide::TwoSided;
  } else {
    throw std::invalid_argument("--side must be lower, upper or two");
  }
  const TimeSeries series(data);
  const ConfidenceInterval ci = confidence_interval(series, b, level, side);
  std::cout << "side,level,n,b,lo,hi,q_lo,q_hi\n"
            << side_name(side) << ',' << format_real(level) << ',' << n << ','
            << b << ',' << format_real(ci.lo) << ',' << format_real(ci.hi)
            << ',' << format_real(ci.q_lo) << ',' << format_real(ci.q_hi)
            << '\n';
  return 0;
}

GeneratorConfig make_generator(const ModelOptions& mo, std::size_t n,
                               std::uint64_t seed, std::uint64_t stream) {
  GeneratorConfig cfg;
  cfg.model = build_model(mo);
  cfg.n = n;
  cfg.seed = seed;
  cfg.stream = stream;
  cfg.cutoff = mo.cutoff;
  cfg.validate();
  return cfg;
}

int cmd_simulate(const ModelOptions& mo, std::size_t n, std::uint64_t seed,
                 std::uint64_t stream, const std::string& out_path) {
  const TimeSeries series = generate(make_generator(mo, n, seed, stream));
  OutputSink sink(out_path);
  for (double v : series.values()) sink.stream() << format_real(v) << '\n';
  return 0;
}

int cmd_ecdf(const ModelOptions& mo, std::size_t n, std::size_t b_flag,
             double c_flag, std::uint64_t seed, std::uint64_t stream,
             bool standardize, const std::string& out_path) {
  const std::size_t b = block_from_flags(n, b_flag, c_flag);
  const TimeSeries series = generate(make_generator(mo, n, seed, stream));
  const BlockStatistics stats =
      block_statistics(series, b, Centering::sample_mean());
  std::vector<double> values = stats.defined();
  if (values.empty()) {
    throw AllBlocksDegenerate("ecdf: every block normalizer is zero");
  }
  if (standardize) {
    CompensatedSum s1;
    for (double v : values) s1.add(v);
    const double mean = s1.value() / static_cast<double>(values.size());
    CompensatedSum s2;
    for (double v : values) s2.add((v - mean) * (v - mean));
    const double sd =
        std::sqrt(s2.value() / static_cast<double>(values.size()));
    if (sd > 0.0) {
      for (double& v : values) v = (v - mean) / sd;
    }
  }
  const EmpiricalCdf cdf(std::move(values));
  OutputSink sink(out_path);
  auto& out = sink.stream();
  out << "x,F\n";
  const auto& sorted = cdf.sorted_values();
  const double m = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out << format_real(sorted[i]) << ','
        << format_real(static_cast<double>(i + 1) / m) << '\n';
  }
  return 0;
}

void write_coverage_csv(std::ostream& out, const CoverageTable& table) {
  out << "model,d,n,c,level,reps,lower,upper,stderr,excluded\n";
  for (const auto& row : table) {
    out << row.model << ',' << format_real(row.d) << ',' << row.n << ','
        << format_real(row.c) << ',' << format_real(row.level) << ','
        << row.reps << ',' << format_real(row.lower) << ','
        << format_real(row.upper) << ',' << format_real(row.mc_stderr) << ','
        << row.excluded << '\n';
  }
}

ExperimentConfig experiment_from_kv(
    const std::vector<std::pair<std::string, std::string>>& kv) {
  ModelOptions mo;
  std::size_t n = 0;
  ExperimentConfig exp;
  auto parse_u64 = [](const std::string& v) {
    return static_cast<std::uint64_t>(std::stoull(v));
  };
  for (const auto& [key, value] : kv) {
    if (key == "model") {
      mo.model = value;
    } else if (key == "d") {
      mo.d = std::stod(value);
    } else if (key == "rho") {
      mo.rho = std::stod(value);
    } else if (key == "alpha") {
      mo.alpha = std::stod(value);
    } else if (key == "ma_coef") {
      mo.ma_coef = std::stod(value);
    } else if (key == "df") {
      mo.t_df = std::stod(value);
    } else if (key == "burn_in") {
      mo.burn_in = parse_u64(value);
    } else if (key == "cutoff") {
      mo.cutoff = parse_u64(value);
    } else if (key == "n") {
      n = parse_u64(value);
    } else if (key == "c") {
      exp.c = std::stod(value);
    } else if (key == "level") {
      exp.level = std::stod(value);
    } else if (key == "reps") {
      exp.reps = parse_u64(value);
    } else if (key == "master_seed" || key == "seed") {
      exp.master_seed = parse_u64(value);
    } else if (key == "true_mean_mode") {
      if (value == "analytic") {
        exp.true_mean_mode = TrueMeanMode::Analytic;
      } else if (value == "mc") {
        exp.true_mean_mode = TrueMeanMode::MonteCarlo;
      } else {
        throw std::invalid_argument("true_mean_mode must be analytic or mc");
      }
    } else if (key == "true_mean_reps") {
      exp.true_mean_reps = parse_u64(value);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (mo.model.empty() || n == 0) {
    throw std::invalid_argument("config must set at least model and n");
  }
  exp.generator = make_generator(mo, n, exp.master_seed, 0);
  return exp;
}

int cmd_mc(const ExperimentConfig& exp, unsigned workers,
           const std::string& out_path) {
  const CoverageTable table = run_experiment({exp}, workers);
  OutputSink sink(out_path);
  write_coverage_csv(sink.stream(), table);
  return 0;
}

int cmd_advise(const std::string& acf_path, const std::string& family_flag,
               double d, std::size_t cutoff, std::size_t maxlag, std::size_t n,
               std::size_t b, std::size_t l, double c,
               const std::string& regime_flag, double hurst, double beta,
               double nu, const std::string& out_path) {
  std::unique_ptr<AutocovarianceSequence> acf;
  if (!acf_path.empty()) {
    acf = std::make_unique<AutocovarianceSequence>(read_acf_csv(acf_path));
  } else if (!family_flag.empty()) {
    if (std::isnan(d)) throw std::invalid_argument("--d required with --family");
    const CoeffFamily family = family_flag == "plain" ? CoeffFamily::Plain
                               : family_flag == "log"
                                   ? CoeffFamily::LogWeighted
                                   : throw std::invalid_argument(
                                         "--family must be plain or log");
    if (cutoff == 0) {
      cutoff = floor_index(std::pow(static_cast<double>(n), 1.5));
    }
    if (maxlag == 0) maxlag = std::min<std::size_t>(n, cutoff - 1);
    acf = std::make_unique<AutocovarianceSequence>(
        acf_from_coefficients(coefficients(family, d, cutoff), maxlag));
  } else {
    throw std::invalid_argument("one of --acf or --family is required");
  }

  BlockRegime regime = SrdSummable{};
  if (regime_flag == "lrd") {
    regime = LrdPower{hurst};
  } else if (regime_flag == "anti") {
    regime = AntiPersistent{};
  } else if (regime_flag == "zero") {
    regime = ZeroSpectrum{beta, nu};
  } else if (regime_flag != "srd") {
    throw std::invalid_argument("--regime must be srd, lrd, anti or zero");
  }
  const std::size_t recommended = recommend_block(regime, n, c);

  std::cout << "recommended_b=" << recommended << '\n';
  const std::size_t span = b != 0 ? b : recommended;
  if (b != 0) {
    std::cout << "a3_diagnostic=" << format_real(a3_diagnostic(*acf, n, b, l))
              << '\n';
  }

  if (!out_path.empty()) {
    OutputSink sink(out_path);
    auto& out = sink.stream();
    out << "k,m,bound\n";
    // Geometric grid of lags from the block span up to n.
    std::vector<std::size_t> ks;
    double k = static_cast<double>(span);
    while (k <= static_cast<double>(n)) {
      const auto ki = static_cast<std::size_t>(k);
      if (ks.empty() || ki != ks.back()) ks.push_back(ki);
      k = std::max(k * 1.25, k + 1.0);
    }
    for (std::size_t ki : ks) {
      const CanonicalBoundReport rep = rho_bound(*acf, ki, span);
      out << ki << ',' << span << ',' << format_real(rep.bound) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "snbs: self-normalized block sampling inference for the mean of a "
      "stationary time series"};
  app.require_subcommand(1);

  // ci
  auto* ci = app.add_subcommand(
      "ci", "confidence interval for the mean of a series file");
  std::string ci_input;
  std::size_t ci_b = 0;
  double ci_c = std::numeric_limits<double>::quiet_NaN();
  double ci_level = 0.9;
  std::string ci_side = "lower";
  ci->add_option("--input", ci_input, "CSV file, one value per line")
      ->required();
  ci->add_option("--b", ci_b, "block size");
  ci->add_option("--c", ci_c, "block multiplier, b = floor(c*sqrt(n))");
  ci->add_option("--level", ci_level, "confidence level in (0,1)");
  ci->add_option("--side", ci_side, "lower, upper or two");

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw one series from a model");
  ModelOptions sim_mo;
  std::size_t sim_n = 0;
  std::uint64_t sim_seed = 0, sim_stream = 0;
  std::string sim_out;
  add_model_options(sim, sim_mo);
  sim->add_option("--n", sim_n, "series length")->required();
  sim->add_option("--seed", sim_seed, "master seed");
  sim->add_option("--stream", sim_stream, "substream index");
  sim->add_option("--out", sim_out, "output file (default stdout)");

  // mc
  auto* mc = app.add_subcommand(
      "mc", "Monte Carlo coverage experiment for one configuration");
  ModelOptions mc_mo;
  std::size_t mc_n = 0;
  double mc_c = 1.0, mc_level = 0.9;
  std::size_t mc_reps = 5000, mc_tm_reps = 1000;
  std::uint64_t mc_seed = 0;
  unsigned mc_workers = 0;
  std::string mc_out, mc_config, mc_tm_mode = "analytic";
  add_model_options(mc, mc_mo);
  mc->get_option("--model")->required(false);
  mc->add_option("--n", mc_n, "series length");
  mc->add_option("--c", mc_c, "block multiplier, b = floor(c*sqrt(n))");
  mc->add_option("--level", mc_level, "confidence level");
  mc->add_option("--reps", mc_reps, "number of replications");
  mc->add_option("--seed", mc_seed, "master seed");
  mc->add_option("--workers", mc_workers,
                 "worker threads (default: hardware parallelism)");
  mc->add_option("--true-mean", mc_tm_mode, "analytic or mc");
  mc->add_option("--true-mean-reps", mc_tm_reps,
                 "realizations for the Monte Carlo true mean");
  mc->add_option("--config", mc_config, "key=value config file");
  mc->add_option("--out", mc_out, "output CSV (default stdout)");

  // advise
  auto* adv = app.add_subcommand(
      "advise", "block-size recommendation and correlation-bound diagnostics");
  std::string adv_acf, adv_family, adv_regime = "srd", adv_out;
  double adv_d = std::numeric_limits<double>::quiet_NaN();
  std::size_t adv_cutoff = 0, adv_maxlag = 0, adv_n = 0, adv_b = 0, adv_l = 0;
  double adv_c = 1.0, adv_h = 0.75, adv_beta = 1.0, adv_nu = 1.0;
  adv->add_option("--acf", adv_acf, "ACF CSV file (lag,value per line)");
  adv->add_option("--family", adv_family, "coefficient family: plain or log");
  adv->add_option("--d", adv_d, "memory parameter for --family");
  adv->add_option("--cutoff", adv_cutoff, "coefficient count for --family");
  adv->add_option("--maxlag", adv_maxlag, "ACF length for --family");
  adv->add_option("--n", adv_n, "sample size")->required();
  adv->add_option("--b", adv_b, "block size to diagnose");
  adv->add_option("--l", adv_l, "transform memory length l");
  adv->add_option("--c", adv_c, "block multiplier for the recommendation");
  adv->add_option("--regime", adv_regime, "srd, lrd, anti or zero");
  adv->add_option("--H", adv_h, "Hurst index for --regime lrd");
  adv->add_option("--beta", adv_beta, "M_gamma decay rate for --regime zero");
  adv->add_option("--nu", adv_nu, "spectral zero order for --regime zero");
  adv->add_option("--out", adv_out, "write a (k,m,bound) CSV here");

  // ecdf
  auto* ec = app.add_subcommand(
      "ecdf", "export the block-statistic ECDF of one simulated series");
  ModelOptions ec_mo;
  std::size_t ec_n = 0, ec_b = 0;
  double ec_c = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t ec_seed = 0, ec_stream = 0;
  bool ec_std = false;
  std::string ec_out;
  add_model_options(ec, ec_mo);
  ec->add_option("--n", ec_n, "series length")->required();
  ec->add_option("--b", ec_b, "block size");
  ec->add_option("--c", ec_c, "block multiplier, b = floor(c*sqrt(n))");
  ec->add_option("--seed", ec_seed, "master seed");
  ec->add_option("--stream", ec_stream, "substream index");
  ec->add_flag("--standardize", ec_std,
               "center and scale the statistics before export");
  ec->add_option("--out", ec_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ci->parsed()) {
      return cmd_ci(ci_input, ci_b, ci_c, ci_level, ci_side);
    }
    if (sim->parsed()) {
      return cmd_simulate(sim_mo, sim_n, sim_seed, sim_stream, sim_out);
    }
    if (mc->parsed()) {
      ExperimentConfig exp;
      if (!mc_config.empty()) {
        std::ifstream in(mc_config);
        if (!in) {
          throw std::invalid_argument("cannot open config file: " + mc_config);
        }
        exp = experiment_from_kv(read_kv_config(in));
      } else {
        if (mc_mo.model.empty() || mc_n == 0) {
          throw std::invalid_argument(
              "mc needs --model and --n (or --config FILE)");
        }
        exp.generator = make_generator(mc_mo, mc_n, mc_seed, 0);
        exp.c = mc_c;
        exp.level = mc_level;
        exp.reps = mc_reps;
        exp.master_seed = mc_seed;
        if (mc_tm_mode == "analytic") {
          exp.true_mean_mode = TrueMeanMode::Analytic;
        } else if (mc_tm_mode == "mc") {
          exp.true_mean_mode = TrueMeanMode::MonteCarlo;
        } else {
          throw std::invalid_argument("--true-mean must be analytic or mc");
        }
        exp.true_mean_reps = mc_tm_reps;
      }
      exp.validate();
      return cmd_mc(exp, mc_workers, mc_out);
    }
    if (adv->parsed()) {
      return cmd_advise(adv_acf, adv_family, adv_d, adv_cutoff, adv_maxlag,
                        adv_n, adv_b, adv_l, adv_c, adv_regime, adv_h,
                        adv_beta, adv_nu, adv_out);
    }
    if (ec->parsed()) {
      return cmd_ecdf(ec_mo, ec_n, ec_b, ec_c, ec_seed, ec_stream, ec_std,
                      ec_out);
    }
  } catch (const DegenerateNormalizer& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const AllBlocksDegenerate& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
