#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "snbs/confidence.hpp"
#include "snbs/generators.hpp"
#include "snbs/math_util.hpp"

namespace snbs {

enum class TrueMeanMode { Analytic, MonteCarlo };

// One coverage experiment cell: replicated series from one generator,
// both one-sided intervals per replication, hit counting against the
// true mean.
struct ExperimentConfig {
  GeneratorConfig generator;  // n, cutoff and model; seed/stream overridden
  double c = 1.0;             // block multiplier, b = floor(c * n^0.5)
  double level = 0.9;
  std::size_t reps = 5000;
  std::uint64_t master_seed = 0;
  TrueMeanMode true_mean_mode = TrueMeanMode::Analytic;
  std::size_t true_mean_reps = 1000;

  std::size_t block_size() const {
    return floor_index(c * std::sqrt(static_cast<double>(generator.n)));
  }

  void validate() const {
    generator.validate();
    if (reps < 1) throw std::invalid_argument("experiment: need reps >= 1");
    if (!(level > 0.0 && level < 1.0)) {
      throw std::invalid_argument("experiment: level must lie in (0,1)");
    }
    const std::size_t b = block_size();
    if (b < 2 || b > generator.n) {
      throw std::invalid_argument(
          "experiment: block size floor(c*sqrt(n)) = " + std::to_string(b) +
          " is outside [2, n]");
    }
  }
};

struct CoverageRow {
  std::string model;
  double d = std::numeric_limits<double>::quiet_NaN();
  std::size_t n = 0;
  double c = 0.0;
  double level = 0.0;
  std::size_t reps = 0;
  double lower = 0.0;
  double upper = 0.0;
  double mc_stderr = 0.0;
  std::size_t excluded = 0;
};

using CoverageTable = std::vector<CoverageRow>;

namespace detail {

// True-mean Monte Carlo draws live on their own substream range so they
// can never collide with replication streams.
constexpr std::uint64_t kTrueMeanStreamBase = 0x8000000000000000ull;

inline double model_d(const ModelSpec& model) {
  if (const auto* g = std::get_if<GaussLinearSpec>(&model)) return g->d;
  if (const auto* l = std::get_if<LmsdSpec>(&model)) return l->d;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

inline bool analytic_mean_available(const ModelSpec& model) {
  return !std::holds_alternative<TarSpec>(model);
}

// Closed-form mean of the generated (truncated) process where one exists:
// the identity and t-marginal models are centered, the squared model has
// mean sum_j a_j^2, the LMSD mean is E[xi] E[exp(Z)], and the symmetric
// stable MA(1) is centered.
inline double analytic_mean(const GeneratorConfig& config) {
  if (const auto* g = std::get_if<GaussLinearSpec>(&config.model)) {
    if (g->transform == Transform::Square) {
      return coefficients(g->family, g->d, config.effective_cutoff()).sum_sq;
    }
    return 0.0;
  }
  if (const auto* l = std::get_if<LmsdSpec>(&config.model)) {
    const double ss =
        coefficients(l->family, l->d, config.effective_cutoff()).sum_sq;
    return l->alpha / (l->alpha - 1.0) * std::exp(0.5 * ss);
  }
  if (std::holds_alternative<Ma1StableSpec>(config.model)) return 0.0;
  throw std::invalid_argument("analytic_mean: no closed form for this model");
}

inline double true_mean(const GeneratorConfig& config,
                        TrueMeanMode mode = TrueMeanMode::Analytic,
                        std::size_t mc_reps = 1000) {
  if (mode == TrueMeanMode::Analytic && analytic_mean_available(config.model)) {
    return analytic_mean(config);
  }
  PreparedGenerator gen(config);
  CompensatedSum acc;
  for (std::size_t i = 0; i < mc_reps; ++i) {
    const TimeSeries series = gen.generate(detail::kTrueMeanStreamBase + i);
    acc.add(prefix_sums(series).mean());
  }
  return acc.value() / static_cast<double>(mc_reps);
}

struct ReplicationResult {
  bool lower_hit = false;
  bool upper_hit = false;
  bool excluded = false;
};

// Scores one realized series: do the two one-sided intervals at the given
// level contain mu? A degenerate normalizer marks the replication as
// excluded instead of failing.
inline ReplicationResult evaluate_replication(const TimeSeries& series,
                                              std::size_t b, double level,
                                              double mu) {
  ReplicationResult res;
  try {
    const std::size_t n = series.size();
    const BlockStatistics stats =
        block_statistics(series, b, Centering::sample_mean());
    std::vector<double> values = stats.defined();
    if (values.empty()) {
      throw AllBlocksDegenerate("replicate: no defined block statistics");
    }
    const EmpiricalCdf cdf(std::move(values));
    const PrefixSums ps = prefix_sums(series);
    const double dn = block_normalizer_sliding(ps, 1, n);
    if (dn == 0.0) throw DegenerateNormalizer("replicate: D_n = 0");
    const double xbar = ps.mean();
    const double scale = dn / static_cast<double>(n);
    const double alpha = 1.0 - level;
    const double lower_bound = xbar - cdf.quantile(alpha) * scale;
    const double upper_bound = xbar - cdf.quantile(1.0 - alpha) * scale;
    res.lower_hit = mu <= lower_bound;
    res.upper_hit = mu >= upper_bound;
  } catch (const DegenerateNormalizer&) {
    res.excluded = true;
  } catch (const AllBlocksDegenerate&) {
    res.excluded = true;
  }
  return res;
}

namespace detail {

inline ReplicationResult replicate_one(PreparedGenerator& gen, std::size_t b,
                                       double level, double mu,
                                       std::uint64_t rep_index) {
  return evaluate_replication(gen.generate(rep_index), b, level, mu);
}

}  // namespace detail

// One replication, deterministic in (config, rep_index).
inline ReplicationResult run_replication(const ExperimentConfig& config,
                                         std::uint64_t rep_index) {
  config.validate();
  GeneratorConfig gc = config.generator;
  gc.seed = config.master_seed;
  const double mu =
      true_mean(gc, config.true_mean_mode, config.true_mean_reps);
  PreparedGenerator gen(gc);
  return detail::replicate_one(gen, config.block_size(), config.level, mu,
                               rep_index);
}

// Full coverage cell. Replications are striped over worker threads; only
// integer hit counts are merged, so the result does not depend on the
// worker count.
inline CoverageRow run_cell(const ExperimentConfig& config,
                            unsigned workers = 0) {
  config.validate();
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, config.reps));

  GeneratorConfig gc = config.generator;
  gc.seed = config.master_seed;
  const double mu =
      true_mean(gc, config.true_mean_mode, config.true_mean_reps);
  const std::size_t b = config.block_size();

  std::vector<std::size_t> lower_hits(workers, 0), upper_hits(workers, 0),
      excluded(workers, 0);
  auto work = [&](unsigned w) {
    PreparedGenerator gen(gc);
    for (std::uint64_t r = w; r < config.reps; r += workers) {
      const ReplicationResult res =
          detail::replicate_one(gen, b, config.level, mu, r);
      if (res.excluded) {
        ++excluded[w];
      } else {
        if (res.lower_hit) ++lower_hits[w];
        if (res.upper_hit) ++upper_hits[w];
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::size_t lower = 0, upper = 0, excl = 0;
  for (unsigned w = 0; w < workers; ++w) {
    lower += lower_hits[w];
    upper += upper_hits[w];
    excl += excluded[w];
  }
  const std::size_t included = config.reps - excl;

  CoverageRow row;
  row.model = model_label(config.generator.model);
  row.d = detail::model_d(config.generator.model);
  row.n = config.generator.n;
  row.c = config.c;
  row.level = config.level;
  row.reps = config.reps;
  row.excluded = excl;
  if (included > 0) {
    const double denom = static_cast<double>(included);
    row.lower = static_cast<double>(lower) / denom;
    row.upper = static_cast<double>(upper) / denom;
    const double se_l = std::sqrt(row.lower * (1.0 - row.lower) / denom);
    const double se_u = std::sqrt(row.upper * (1.0 - row.upper) / denom);
    row.mc_stderr = std::max(se_l, se_u);
  }
  return row;
}

// Grid runner; per-cell configuration errors become a row with reps = 0
// rather than aborting the rest of the grid.
inline CoverageTable run_experiment(const std::vector<ExperimentConfig>& grid,
                                    unsigned workers = 0) {
  if (grid.empty()) throw std::invalid_argument("run_experiment: empty grid");
  CoverageTable table;
  table.reserve(grid.size());
  for (const auto& cell : grid) {
    try {
      table.push_back(run_cell(cell, workers));
    } catch (const std::exception&) {
      CoverageRow row;
      row.model = model_label(cell.generator.model);
      row.d = detail::model_d(cell.generator.model);
      row.n = cell.generator.n;
      row.c = cell.c;
      row.level = cell.level;
      row.reps = 0;
      table.push_back(row);
    }
  }
  return table;
}

}  // namespace snbs
