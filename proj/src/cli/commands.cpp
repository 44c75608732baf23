#include "lfi/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "lfi/cli/config.hpp"
#include "lfi/cli/csv.hpp"
#include "lfi/cli/output.hpp"
#include "lfi/empirical_likelihood.hpp"
#include "lfi/weighted_sample.hpp"

namespace lfi::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::string> parameter_names(int p, const std::string& stem = "theta") {
  if (p == 1) return {stem};
  std::vector<std::string> names;
  for (int j = 1; j <= p; ++j) names.push_back(stem + "_" + std::to_string(j));
  return names;
}

json summary(const std::string& command, const json& echo, json results, json ess, Clock::time_point start) {
  const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  json out = json::object();
  out["command"] = command;
  out["seed"] = echo.contains("seed") ? echo["seed"] : json();
  out["config"] = echo;
  out["results"] = std::move(results);
  out["diagnostics"] = {{"ess", std::move(ess)}, {"runtime_ms", ms}};
  return out;
}

/// Table of a weighted sample: coordinates, normalized weight, log weight, generation.
Table weighted_sample_table(const WeightedSample& s, const std::vector<std::string>& names) {
  Table t;
  t.header = names;
  t.header.insert(t.header.end(), {"weight", "log_weight", "generation"});
  const Vector w = s.normalized_weights();
  for (Eigen::Index i = 0; i < s.points.rows(); ++i) {
    std::vector<Cell> row;
    for (Eigen::Index j = 0; j < s.points.cols(); ++j) row.emplace_back(s.points(i, j));
    row.emplace_back(w(i));
    row.emplace_back(s.log_weights(i));
    const int gen = s.generations.empty() ? 1 : s.generations[static_cast<std::size_t>(i)];
    row.emplace_back(static_cast<long long>(gen));
    t.add_row(std::move(row));
  }
  return t;
}

json weighted_results(const WeightedSample& s) {
  const Vector w = s.normalized_weights();
  const auto m = weighted_moments(s.points, w);
  json q025 = json::array(), q500 = json::array(), q975 = json::array();
  for (Eigen::Index j = 0; j < s.points.cols(); ++j) {
    const Vector col = s.points.col(j);
    q025.push_back(json_number(weighted_quantile(col, w, 0.025)));
    q500.push_back(json_number(weighted_quantile(col, w, 0.5)));
    q975.push_back(json_number(weighted_quantile(col, w, 0.975)));
  }
  long long positive = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) positive += w(i) > 0.0;
  return {{"posterior_mean", json_vector(m.mean)},
          {"posterior_sd", json_vector(m.covariance.diagonal().cwiseSqrt())},
          {"quantile_025", q025},
          {"median", q500},
          {"quantile_975", q975},
          {"draws", static_cast<long long>(s.size())},
          {"positive_weights", positive}};
}

void add_file(json& results, const std::filesystem::path& p) { results["files"].push_back(p.string()); }

json run_bsl(const json& config, const RunOptions& opt, Clock::time_point start) {
  auto [c, echo] = parse_bsl_config(config);
  const auto model = c.model.build();
  const RngStream rng(c.common.seed, 0);
  const MCMCTrace trace = run_mcmc_bsl(*model, c.s_obs, c.prior, c.sampler, rng);

  const int p = static_cast<int>(trace.states.cols());
  const auto names = parameter_names(p);
  Table t;
  t.header = {"iteration"};
  t.header.insert(t.header.end(), names.begin(), names.end());
  t.header.insert(t.header.end(), {"log_sl", "accepted"});
  for (Eigen::Index i = 0; i < trace.states.rows(); ++i) {
    std::vector<Cell> row{static_cast<long long>(i)};
    for (int j = 0; j < p; ++j) row.emplace_back(trace.states(i, j));
    row.emplace_back(trace.log_sl[static_cast<std::size_t>(i)].log_value());
    const bool acc = i > 0 && trace.accepted[static_cast<std::size_t>(i - 1)];
    row.emplace_back(static_cast<long long>(acc));
    t.add_row(std::move(row));
  }

  const Matrix kept = trace.states.bottomRows(trace.states.rows() - trace.burn_in);
  const Vector mean = kept.colwise().mean();
  const Matrix centered = kept.rowwise() - mean.transpose();
  const Vector sd = (centered.array().square().colwise().sum() / std::max<double>(1.0, kept.rows() - 1.0)).sqrt();

  json results = {{"posterior_mean", json_vector(mean)},
                  {"posterior_sd", json_vector(sd)},
                  {"acceptance_rate", trace.acceptance_rate},
                  {"iterations", trace.iterations()},
                  {"n", trace.n},
                  {"files", json::array()}};
  json ess = json::array();
  const double total_sims = static_cast<double>(trace.iterations()) * trace.n;
  try {
    results["normalized_ess"] = json_vector(normalized_ess(trace, total_sims));
    for (int j = 0; j < p; ++j) ess.push_back(json_number(autocorrelation_ess(kept.col(j))));
  } catch (const Error&) {
    // Too short or constant chains have no autocorrelation ESS.
    results["normalized_ess"] = nullptr;
    ess = nullptr;
  }

  add_file(results, write_table(t, c.common.output, "trace", c.common.format));
  const Vector w = Vector::Constant(kept.rows(), 1.0 / static_cast<double>(kept.rows()));
  add_file(results, write_table(weighted_histogram(kept, w, names, opt.bins), c.common.output, "histogram",
                                c.common.format));
  return summary("bsl", echo, std::move(results), std::move(ess), start);
}

json run_tune_n(const json& config, const RunOptions&, Clock::time_point start) {
  auto [c, echo] = parse_tune_n_config(config);
  const auto model = c.model.build();
  const RngStream rng(c.common.seed, 0);
  const TuneNTable table =
      tune_n_diagnostic(*model, c.s_obs, c.theta_ref, c.candidates, c.replications, rng, c.target_sd);
  Table t{{"n", "mean_log_sl", "sd_log_sl"}, {}};
  for (const auto& r : table.rows) t.add_row({static_cast<long long>(r.n), r.mean_log_sl, r.sd_log_sl});
  json results = {{"recommended_n", table.recommended_n ? json(*table.recommended_n) : json()},
                  {"files", json::array()}};
  add_file(results, write_table(t, c.common.output, "tune_n", c.common.format));
  return summary("tune-n", echo, std::move(results), nullptr, start);
}

json finish_weighted(const std::string& command, const json& echo, const CommonConfig& common,
                     const WeightedSample& s, const std::vector<std::string>& names, const RunOptions& opt,
                     json extra, Clock::time_point start) {
  json results = weighted_results(s);
  for (auto& [k, v] : extra.items()) results[k] = v;
  results["files"] = json::array();
  add_file(results, write_table(weighted_sample_table(s, names), common.output, "samples", common.format));
  add_file(results, write_table(weighted_histogram(s.points, s.normalized_weights(), names, opt.bins),
                                common.output, "histogram", common.format));
  return summary(command, echo, std::move(results), s.ess(), start);
}

json run_bcel_cmd(const json& config, const RunOptions& opt, Clock::time_point start) {
  auto [c, echo] = parse_bcel_config(config);
  const DataMatrix data = c.data.load(RngStream(c.common.seed, kDataStream));
  const RngStream rng(c.common.seed, 0);
  const BcelConfig bc = c.to_bcel();
  const WeightedSample s = run_bcel(data, bc, rng);
  const auto names = parameter_names(s.dimension());
  json extra = json::object();
  if (c.resample) {
    const Matrix r = run_bcel_resampled(data, bc, rng);
    Table t{names, {}};
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      std::vector<Cell> row;
      for (Eigen::Index j = 0; j < r.cols(); ++j) row.emplace_back(r(i, j));
      t.add_row(std::move(row));
    }
    extra["resampled_file"] = write_table(t, c.common.output, "resampled", c.common.format).string();
  }
  return finish_weighted("bcel", echo, c.common, s, names, opt, std::move(extra), start);
}

json run_amis_cmd(const json& config, const RunOptions& opt, Clock::time_point start) {
  auto [c, echo] = parse_amis_config(config);
  const DataMatrix data = c.base.data.load(RngStream(c.base.common.seed, kDataStream));
  const AmisResult r = run_bcel_amis(data, c.to_amis(), RngStream(c.base.common.seed, 0));
  json extra = {{"generations_completed", r.generations_completed}, {"stopped_early", r.stopped_early}};
  return finish_weighted("amis", echo, c.base.common, r.sample, parameter_names(r.sample.dimension()), opt,
                         std::move(extra), start);
}

json run_gk_bf(const json& config, const RunOptions&, Clock::time_point start) {
  auto [c, echo] = parse_gk_bf_config(config);
  const GkBayesFactorStudy study = gk_bayes_factor_study(c.truth, c.alt2, c.alt3, c.sample_sizes, c.replicates,
                                                         c.spec, RngStream(c.common.seed, 0));
  Table t;
  for (const char* alt : {"2", "3"}) {
    for (int n : c.sample_sizes) t.header.push_back(std::string("m1_vs_m") + alt + "_n" + std::to_string(n));
  }
  for (Eigen::Index i = 0; i < study.log_bf.rows(); ++i) {
    std::vector<Cell> row;
    for (Eigen::Index j = 0; j < study.log_bf.cols(); ++j) row.emplace_back(study.log_bf(i, j));
    t.add_row(std::move(row));
  }
  json medians = json::object(), infinite = json::object();
  for (Eigen::Index j = 0; j < study.log_bf.cols(); ++j) {
    const Vector col = study.log_bf.col(j);
    const Vector w = Vector::Constant(col.size(), 1.0 / static_cast<double>(col.size()));
    const auto& name = t.header[static_cast<std::size_t>(j)];
    medians[name] = json_number(weighted_quantile(col, w, 0.5));
    infinite[name] = static_cast<double>((!col.array().isFinite()).count()) / static_cast<double>(col.size());
  }
  json results = {{"median_log_bf", medians},
                  {"fraction_infinite", infinite},
                  {"replicates", c.replicates},
                  {"files", json::array()}};
  add_file(results, write_table(t, c.common.output, "log_bf", c.common.format));
  return summary("gk-bf", echo, std::move(results), nullptr, start);
}

json run_bcop_cmd(const json& config, const RunOptions& opt, Clock::time_point start) {
  auto [c, echo] = parse_bcop_config(config);
  const DataMatrix data = c.data.load(RngStream(c.common.seed, kDataStream));
  if (data.cols() < 2) throw DataError("bcop needs at least two columns");
  const WeightedSample s = run_bcop(data, c.sampler, RngStream(c.common.seed, 0));
  const Vector w = s.normalized_weights();
  json extra = {{"rho_hat", json_number(spearman_rho_multivariate(pseudo_observations(data)))},
                {"posterior_mode", json_number(weighted_histogram_mode(s.points.col(0), w, opt.bins))},
                {"observations", static_cast<long long>(data.rows())},
                {"dimension", static_cast<long long>(data.cols())}};
  return finish_weighted("bcop", echo, c.common, s, {"rho"}, opt, std::move(extra), start);
}

}  // namespace

std::vector<std::string> experiment_commands() { return {"bsl", "tune-n", "bcel", "amis", "gk-bf", "bcop"}; }

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const PreconditionError*>(&e)) return kExitConfig;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kExitConfig;
  if (dynamic_cast<const DataError*>(&e)) return kExitData;
  if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
  if (dynamic_cast<const SimulationError*>(&e)) return kExitNumerical;
  return kExitInternal;
}

json error_json(const std::exception& e) {
  const int code = exit_code_for(e);
  const char* kind = code == kExitConfig ? "config" : code == kExitData ? "data" : code == kExitNumerical ? "numerical" : "internal";
  return {{"error", {{"kind", kind}, {"message", e.what()}, {"exit_code", code}}}};
}

int run_experiment(const std::string& command, const json& config, const RunOptions& options, std::ostream& out) {
  const auto start = Clock::now();
  try {
    json cfg = config.is_null() ? json::object() : config;
    if (!cfg.is_object()) throw ConfigError("config: expected a JSON object");
    if (options.seed) cfg["seed"] = *options.seed;
    if (options.output) cfg["output"] = options.output->string();
    if (options.bins < 1) throw ConfigError("--bins must be at least 1");
    json result;
    if (command == "bsl") result = run_bsl(cfg, options, start);
    else if (command == "tune-n") result = run_tune_n(cfg, options, start);
    else if (command == "bcel") result = run_bcel_cmd(cfg, options, start);
    else if (command == "amis") result = run_amis_cmd(cfg, options, start);
    else if (command == "gk-bf") result = run_gk_bf(cfg, options, start);
    else if (command == "bcop") result = run_bcop_cmd(cfg, options, start);
    else throw ConfigError("unknown command '" + command + "'");
    out << result.dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    out << error_json(e).dump(2) << '\n';
    return exit_code_for(e);
  }
}

int run_el_test(const ElTestArgs& args, std::ostream& out) {
  const auto start = Clock::now();
  try {
    if (args.theta.empty()) throw ConfigError("--theta is required");
    json echo = {{"data", args.data.string()}, {"constraint", args.constraint}, {"theta", args.theta}};
    ConstraintFunction h = mean_constraint();
    if (args.constraint == "quantile") {
      if (!(args.prob > 0.0 && args.prob < 1.0)) throw ConfigError("--prob must lie in (0, 1)");
      h = quantile_constraint(args.prob);
      echo["prob"] = args.prob;
    } else if (args.constraint != "mean") {
      throw ConfigError("constraint must be mean or quantile");
    }
    const DataMatrix data = read_numeric_csv(args.data);
    const Vector theta = Vector::Map(args.theta.data(), static_cast<Eigen::Index>(args.theta.size()));
    const ElTestResult r = el_test(data, theta, h);
    json results = {{"neg2llr", json_number(r.neg2llr)},
                    {"p_value", json_number(r.p_value)},
                    {"lambda", json_vector(r.lambda)},
                    {"iterations", r.iterations},
                    {"infeasible", r.infeasible}};
    json s = summary("el-test", echo, std::move(results), nullptr, start);
    s["seed"] = nullptr;
    out << s.dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    out << error_json(e).dump(2) << '\n';
    return exit_code_for(e);
  }
}

}  // namespace lfi::cli
