#include "lfi/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "lfi/cli/csv.hpp"

namespace lfi::cli {

namespace {

json matrix_json(const Matrix& m) {
  auto out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(json_vector(m.row(i).transpose()));
  return out;
}

/// Reads keys out of one JSON object, records the value actually used for
/// each key and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& j, std::string where) : where_(std::move(where)) {
    if (j.is_null()) {
      src_ = json::object();
    } else if (!j.is_object()) {
      throw ConfigError(label() + ": expected an object");
    } else {
      src_ = j;
    }
  }

  std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

  bool has(const std::string& key) const { return src_.contains(key) && !src_.at(key).is_null(); }

  json child(const std::string& key) {
    used_.insert(key);
    return has(key) ? src_.at(key) : json();
  }

  void put(const std::string& key, json value) {
    used_.insert(key);
    echo_[key] = std::move(value);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(path(key) + ": " + what);
  }

  double number(const std::string& key, std::optional<double> fallback) {
    double v;
    if (!has(key)) {
      if (!fallback) fail(key, "required");
      v = *fallback;
    } else {
      const auto& x = src_.at(key);
      if (!x.is_number()) fail(key, "expected a number");
      v = x.get<double>();
    }
    if (!std::isfinite(v)) fail(key, "must be finite");
    put(key, v);
    return v;
  }

  long long integer(const std::string& key, std::optional<long long> fallback, long long min_value) {
    long long v;
    if (!has(key)) {
      if (!fallback) fail(key, "required");
      v = *fallback;
    } else {
      v = as_integer(src_.at(key), key);
    }
    if (v < min_value) fail(key, "must be >= " + std::to_string(min_value));
    put(key, v);
    return v;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    std::uint64_t v = fallback;
    if (has(key)) {
      const auto& x = src_.at(key);
      if (x.is_number_unsigned()) {
        v = x.get<std::uint64_t>();
      } else if (x.is_number_integer() && x.get<long long>() >= 0) {
        v = static_cast<std::uint64_t>(x.get<long long>());
      } else {
        fail(key, "expected a non-negative integer");
      }
    }
    put(key, v);
    return v;
  }

  bool boolean(const std::string& key, bool fallback) {
    bool v = fallback;
    if (has(key)) {
      if (!src_.at(key).is_boolean()) fail(key, "expected true or false");
      v = src_.at(key).get<bool>();
    }
    put(key, v);
    return v;
  }

  std::string choice(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed) {
    std::string v = fallback;
    if (has(key)) {
      if (!src_.at(key).is_string()) fail(key, "expected a string");
      v = src_.at(key).get<std::string>();
    }
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(key, "must be one of " + list);
    }
    put(key, v);
    return v;
  }

  std::string string(const std::string& key, std::optional<std::string> fallback) {
    std::string v;
    if (!has(key)) {
      if (!fallback) fail(key, "required");
      v = *fallback;
    } else {
      if (!src_.at(key).is_string()) fail(key, "expected a string");
      v = src_.at(key).get<std::string>();
    }
    put(key, v);
    return v;
  }

  /// Array of numbers; a bare number is broadcast when `size` is known.
  Vector vector(const std::string& key, std::optional<Vector> fallback, std::optional<int> size) {
    Vector v;
    if (!has(key)) {
      if (!fallback) fail(key, "required");
      v = *fallback;
    } else {
      const auto& x = src_.at(key);
      if (x.is_number()) {
        if (!size) fail(key, "expected an array of numbers");
        v = Vector::Constant(*size, x.get<double>());
      } else if (x.is_array()) {
        v.resize(static_cast<Eigen::Index>(x.size()));
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (!x[i].is_number()) fail(key, "expected an array of numbers");
          v(static_cast<Eigen::Index>(i)) = x[i].get<double>();
        }
      } else {
        fail(key, "expected an array of numbers");
      }
    }
    if (v.size() == 0) fail(key, "must not be empty");
    if (size && v.size() != *size) fail(key, "expected length " + std::to_string(*size));
    if (!v.allFinite()) fail(key, "entries must be finite");
    put(key, json_vector(v));
    return v;
  }

  Matrix matrix(const std::string& key, std::optional<Matrix> fallback) {
    Matrix m;
    if (!has(key)) {
      if (!fallback) fail(key, "required");
      m = *fallback;
    } else {
      const auto& x = src_.at(key);
      if (!x.is_array() || x.empty()) fail(key, "expected a non-empty array of rows");
      const std::size_t cols = x[0].is_array() ? x[0].size() : 0;
      if (cols == 0) fail(key, "expected a non-empty array of rows");
      m.resize(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(cols));
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i].is_array() || x[i].size() != cols) fail(key, "rows must have equal length");
        for (std::size_t j = 0; j < cols; ++j) {
          if (!x[i][j].is_number()) fail(key, "entries must be numbers");
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x[i][j].get<double>();
        }
      }
    }
    if (!m.allFinite()) fail(key, "entries must be finite");
    put(key, matrix_json(m));
    return m;
  }

  std::vector<int> int_list(const std::string& key, std::vector<int> fallback, long long min_value) {
    std::vector<int> v = std::move(fallback);
    if (has(key)) {
      const auto& x = src_.at(key);
      if (!x.is_array()) fail(key, "expected an array of integers");
      v.clear();
      for (const auto& e : x) v.push_back(static_cast<int>(as_integer(e, key)));
    }
    if (v.empty()) fail(key, "must not be empty");
    for (int e : v) {
      if (e < min_value) fail(key, "entries must be >= " + std::to_string(min_value));
    }
    put(key, v);
    return v;
  }

  /// Echo of everything read; throws on keys that were never consumed.
  json finish() {
    for (const auto& [key, value] : src_.items()) {
      if (!used_.count(key)) fail(key, "unknown key");
    }
    return echo_;
  }

 private:
  std::string label() const { return where_.empty() ? "config" : where_; }

  long long as_integer(const json& x, const std::string& key) const {
    if (x.is_number_integer()) return x.get<long long>();
    if (x.is_number_float()) {
      const double d = x.get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    fail(key, "expected an integer");
  }

  std::string where_;
  json src_;
  json echo_ = json::object();
  std::set<std::string> used_;
};

int to_int(long long v) { return static_cast<int>(std::min<long long>(v, 2'000'000'000)); }

CommonConfig parse_common(Fields& f, const std::string& command, const std::string& default_dir) {
  if (f.has("command")) {
    const auto name = f.string("command", std::nullopt);
    if (name != command) f.fail("command", "config is for '" + name + "', not '" + command + "'");
  } else {
    f.put("command", command);
  }
  CommonConfig c;
  c.seed = f.unsigned_integer("seed", 1);
  c.output = f.string("output", default_dir);
  c.format = f.choice("format", "csv", {"csv", "json"}) == "csv" ? OutputFormat::csv : OutputFormat::json;
  return c;
}

Marginal parse_marginal(const json& j, const std::string& where, json& echo) {
  Fields f(j, where);
  const auto type = f.choice("type", "uniform", {"uniform", "normal"});
  Marginal m;
  if (type == "uniform") {
    const double lo = f.number("lower", std::nullopt);
    const double hi = f.number("upper", std::nullopt);
    if (!(lo < hi)) f.fail("upper", "must exceed lower");
    m = UniformMarginal{lo, hi};
  } else {
    const double mean = f.number("mean", std::nullopt);
    const double sd = f.number("sd", std::nullopt);
    if (!(sd > 0.0)) f.fail("sd", "must be positive");
    m = NormalMarginal{mean, sd};
  }
  echo = f.finish();
  return m;
}

/// `dim` fixes the dimension when the caller knows it; bare numbers broadcast.
PriorSpec parse_prior(const json& j, const std::string& where, std::optional<int> dim,
                      const PriorSpec& fallback_shape, json& echo) {
  if (j.is_null()) {
    // Echo the default in the same shape a user would write it.
    auto out = json::object();
    out["type"] = "product";
    out["marginals"] = json::array();
    for (const auto& m : fallback_shape.marginals()) {
      if (const auto* u = std::get_if<UniformMarginal>(&m)) {
        out["marginals"].push_back({{"type", "uniform"}, {"lower", u->lower}, {"upper", u->upper}});
      } else {
        const auto& n = std::get<NormalMarginal>(m);
        out["marginals"].push_back({{"type", "normal"}, {"mean", n.mean}, {"sd", n.sd}});
      }
    }
    echo = out;
    return fallback_shape;
  }
  Fields f(j, where);
  const auto type = f.choice("type", "uniform", {"uniform", "normal", "product"});
  std::optional<PriorSpec> prior;
  if (type == "uniform") {
    const Vector lo = f.vector("lower", std::nullopt, dim);
    const Vector hi = f.vector("upper", std::nullopt, static_cast<int>(lo.size()));
    if (!(lo.array() < hi.array()).all()) f.fail("upper", "must exceed lower in every coordinate");
    prior = PriorSpec::uniform(lo, hi);
  } else if (type == "normal") {
    const Vector mean = f.vector("mean", std::nullopt, dim);
    const Vector sd = f.vector("sd", std::nullopt, static_cast<int>(mean.size()));
    if (!(sd.array() > 0.0).all()) f.fail("sd", "must be positive");
    prior = PriorSpec::normal(mean, sd);
  } else {
    const json list = f.child("marginals");
    if (!list.is_array() || list.empty()) f.fail("marginals", "expected a non-empty array");
    std::vector<Marginal> ms;
    auto list_echo = json::array();
    for (std::size_t i = 0; i < list.size(); ++i) {
      json e;
      ms.push_back(parse_marginal(list[i], f.path("marginals") + "[" + std::to_string(i) + "]", e));
      list_echo.push_back(e);
    }
    f.put("marginals", list_echo);
    prior = PriorSpec::product(std::move(ms));
  }
  if (dim && prior->dimension() != *dim) {
    throw ConfigError(where + ": prior dimension " + std::to_string(prior->dimension()) +
                      " does not match parameter dimension " + std::to_string(*dim));
  }
  echo = f.finish();
  return *prior;
}

GkParams parse_gk(Fields& f, const std::string& key, const GkParams& fallback, double c) {
  Vector v = f.vector(key, fallback.to_vector(), 4);
  GkParams p = GkParams::from_vector(v, c);
  try {
    p.validate();
  } catch (const Error& e) {
    f.fail(key, e.what());
  }
  return p;
}

ModelConfig parse_model(const json& j, const std::string& where, json& echo) {
  Fields f(j, where);
  ModelConfig m;
  m.name = f.choice("name", "mvn_toy", {"mvn_toy"});
  m.covariance = f.matrix("covariance", m.covariance);
  m.degenerate = f.boolean("degenerate", false);
  if (m.covariance.rows() != m.covariance.cols()) f.fail("covariance", "must be square");
  try {
    (void)m.build();
  } catch (const Error& e) {
    f.fail("covariance", e.what());
  }
  echo = f.finish();
  return m;
}

DataConfig parse_data(const json& j, const std::string& where, const std::vector<std::string>& sources,
                      const DataConfig& defaults, json& echo) {
  Fields f(j, where);
  DataConfig d = defaults;
  d.source = f.choice("source", defaults.source, sources);
  if (d.source == "file") {
    d.path = f.string("path", std::nullopt);
    if (f.has("columns")) d.columns = f.int_list("columns", {}, 0);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(d.path, ec)) throw IoError("data file not found: " + d.path.string());
  } else {
    d.n = to_int(f.integer("n", defaults.n, 1));
    if (d.source == "normal") {
      d.mean = f.number("mean", defaults.mean);
      d.sd = f.number("sd", defaults.sd);
      if (!(d.sd > 0.0)) f.fail("sd", "must be positive");
    } else if (d.source == "gk") {
      const double c = f.number("c", defaults.gk.c);
      d.gk = parse_gk(f, "params", defaults.gk, c);
    } else {
      d.dimension = to_int(f.integer("dimension", defaults.dimension, 2));
      d.psi = f.number("psi", defaults.psi);
      const double c = f.number("c", defaults.gk.c);
      d.gk = parse_gk(f, "margins", defaults.gk, c);
      try {
        ClaytonCopula(d.dimension, d.psi);
      } catch (const Error& e) {
        f.fail("psi", e.what());
      }
    }
  }
  echo = f.finish();
  return d;
}

ConstraintConfig parse_constraint(const json& j, const std::string& where, json& echo) {
  Fields f(j, where);
  ConstraintConfig c;
  c.name = f.choice("name", "mean", {"mean", "quantile", "gk_quantiles"});
  if (c.name == "quantile") {
    c.prob = f.number("prob", 0.5);
    if (!(c.prob > 0.0 && c.prob < 1.0)) f.fail("prob", "must lie in (0, 1)");
  } else if (c.name == "gk_quantiles") {
    const Vector probs = f.vector("probabilities", Vector::Map(c.gk.probabilities.data(), 5), std::nullopt);
    c.gk.probabilities.assign(probs.data(), probs.data() + probs.size());
    c.gk.c = f.number("c", c.gk.c);
    try {
      c.gk.validate();
    } catch (const Error& e) {
      f.fail("probabilities", e.what());
    }
  }
  echo = f.finish();
  return c;
}

LikelihoodFlavor parse_flavor(Fields& f) {
  return f.choice("flavor", "el", {"el", "betel"}) == "el" ? LikelihoodFlavor::el : LikelihoodFlavor::betel;
}

int constraint_parameter_dim(const ConstraintConfig& c) { return c.name == "gk_quantiles" ? 4 : 1; }

/// Shared by bcel and amis: everything except the sampler section.
BcelCommandConfig parse_bcel_common(Fields& f, const std::string& command, json& sampler_json) {
  BcelCommandConfig c;
  c.common = parse_common(f, command, "lfi-out/" + command);
  json e;
  c.data = parse_data(f.child("data"), "data", {"file", "normal", "gk"}, DataConfig{}, e);
  f.put("data", e);
  c.constraint = parse_constraint(f.child("constraint"), "constraint", e);
  f.put("constraint", e);
  const int p = constraint_parameter_dim(c.constraint);
  PriorSpec fallback = p == 1 ? c.prior
                              : PriorSpec::uniform(Vector::Constant(p, 0.0), Vector::Constant(p, 10.0));
  c.prior = parse_prior(f.child("prior"), "prior", p, fallback, e);
  f.put("prior", e);
  sampler_json = f.child("sampler");
  return c;
}

}  // namespace

std::unique_ptr<SimulatorModel> ModelConfig::build() const {
  if (name == "mvn_toy") return std::make_unique<MvnToySimulator>(covariance, degenerate);
  throw ConfigError("unknown model '" + name + "'");
}

DataMatrix DataConfig::load(const RngStream& rng) const {
  if (source == "file") {
    DataMatrix all = read_numeric_csv(path);
    if (columns.empty()) return all;
    DataMatrix out(all.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j] >= all.cols()) {
        throw DataError("column " + std::to_string(columns[j]) + " not present in " + path.string());
      }
      out.col(static_cast<Eigen::Index>(j)) = all.col(columns[j]);
    }
    return out;
  }
  RngStream r = rng;
  if (source == "normal") {
    DataMatrix out(n, 1);
    for (int i = 0; i < n; ++i) out(i, 0) = mean + sd * r.normal();
    return out;
  }
  if (source == "gk") return gk_simulate(n, gk, r);
  if (source == "clayton") {
    Matrix u = clayton_sample(n, ClaytonCopula(dimension, psi), rng);
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      for (Eigen::Index j = 0; j < u.cols(); ++j) u(i, j) = gk_quantile(u(i, j), gk);
    }
    return u;
  }
  throw ConfigError("unknown data source '" + source + "'");
}

ConstraintFunction ConstraintConfig::build() const {
  if (name == "mean") return mean_constraint();
  if (name == "quantile") return quantile_constraint(prob);
  if (name == "gk_quantiles") return gk_quantile_constraints(gk);
  throw ConfigError("unknown constraint '" + name + "'");
}

BcelConfig BcelCommandConfig::to_bcel() const {
  BcelConfig b{draws, prior, constraint.build(), flavor, resample};
  return b;
}

AmisConfig AmisCommandConfig::to_amis() const {
  AmisConfig a{base.to_bcel(), generations, jitter_scale, denominator};
  return a;
}

Parsed<BslCommandConfig> parse_bsl_config(const json& j) {
  Fields f(j, "");
  BslCommandConfig c;
  c.common = parse_common(f, "bsl", "lfi-out/bsl");
  json e;
  c.model = parse_model(f.child("model"), "model", e);
  f.put("model", e);
  const int p = static_cast<int>(c.model.covariance.rows());
  c.s_obs = f.vector("s_obs", Vector::Zero(p), p);
  c.prior = parse_prior(f.child("prior"), "prior", p,
                        PriorSpec::uniform(Vector::Constant(p, -10.0), Vector::Constant(p, 10.0)), e);
  f.put("prior", e);

  Fields s(f.child("sampler"), "sampler");
  c.sampler.iterations = to_int(s.integer("iterations", 10000, 1));
  c.sampler.n = to_int(s.integer("n", 50, 2));
  c.sampler.estimator =
      s.choice("estimator", "plugin", {"plugin", "unbiased"}) == "plugin" ? SlEstimator::plugin : SlEstimator::unbiased;
  c.sampler.initial = s.vector("initial", c.s_obs, p);
  if (s.has("proposal_cov")) {
    c.sampler.proposal_cov = s.matrix("proposal_cov", std::nullopt);
    if (c.sampler.proposal_cov.rows() != p || c.sampler.proposal_cov.cols() != p) {
      s.fail("proposal_cov", "must be " + std::to_string(p) + "x" + std::to_string(p));
    }
    Eigen::LLT<Matrix> llt(c.sampler.proposal_cov);
    if (llt.info() != Eigen::Success) s.fail("proposal_cov", "must be positive definite");
  } else {
    const Vector sd = s.vector("proposal_sd", Vector::Constant(p, kDefaultProposalSd), p);
    if (!(sd.array() > 0.0).all()) s.fail("proposal_sd", "must be positive");
    c.sampler.proposal_cov = sd.array().square().matrix().asDiagonal();
  }
  c.sampler.burn_in = to_int(s.integer("burn_in", 0, 0));
  if (c.sampler.burn_in > c.sampler.iterations) s.fail("burn_in", "exceeds iterations");
  if (c.sampler.estimator == SlEstimator::unbiased && c.sampler.n <= p + 3) {
    s.fail("n", "unbiased estimator needs n > d + 3");
  }
  if (!std::isfinite(c.prior.log_density(c.sampler.initial))) s.fail("initial", "outside prior support");
  f.put("sampler", s.finish());

  json echo = f.finish();
  return {std::move(c), std::move(echo)};
}

Parsed<TuneNCommandConfig> parse_tune_n_config(const json& j) {
  Fields f(j, "");
  TuneNCommandConfig c;
  c.common = parse_common(f, "tune-n", "lfi-out/tune-n");
  json e;
  c.model = parse_model(f.child("model"), "model", e);
  f.put("model", e);
  const int p = static_cast<int>(c.model.covariance.rows());
  c.s_obs = f.vector("s_obs", Vector::Zero(p), p);
  c.theta_ref = f.vector("theta_ref", c.s_obs, p);
  c.candidates = f.int_list("candidates", c.candidates, 2);
  c.replications = to_int(f.integer("replications", c.replications, 2));
  c.target_sd = f.number("target_sd", c.target_sd);
  if (!(c.target_sd > 0.0)) f.fail("target_sd", "must be positive");
  json echo = f.finish();
  return {std::move(c), std::move(echo)};
}

Parsed<BcelCommandConfig> parse_bcel_config(const json& j) {
  Fields f(j, "");
  json sampler;
  BcelCommandConfig c = parse_bcel_common(f, "bcel", sampler);
  Fields s(sampler, "sampler");
  c.draws = to_int(s.integer("draws", 5000, 1));
  c.flavor = parse_flavor(s);
  if (s.has("resample")) c.resample = to_int(s.integer("resample", 0, 1));
  else s.put("resample", nullptr);
  f.put("sampler", s.finish());
  json echo = f.finish();
  return {std::move(c), std::move(echo)};
}

Parsed<AmisCommandConfig> parse_amis_config(const json& j) {
  Fields f(j, "");
  json sampler;
  AmisCommandConfig c;
  c.base = parse_bcel_common(f, "amis", sampler);
  Fields s(sampler, "sampler");
  c.base.draws = to_int(s.integer("draws", 1000, 2));
  c.base.flavor = parse_flavor(s);
  c.generations = to_int(s.integer("generations", 5, 2));
  c.jitter_scale = s.number("jitter_scale", 1e-8);
  if (c.jitter_scale < 0.0) s.fail("jitter_scale", "must be non-negative");
  c.denominator = s.choice("denominator", "as_printed", {"as_printed", "full_mixture"}) == "as_printed"
                      ? AmisDenominator::as_printed
                      : AmisDenominator::full_mixture;
  f.put("sampler", s.finish());
  json echo = f.finish();
  return {std::move(c), std::move(echo)};
}

Parsed<GkBfCommandConfig> parse_gk_bf_config(const json& j) {
  Fields f(j, "");
  GkBfCommandConfig c;
  c.common = parse_common(f, "gk-bf", "lfi-out/gk-bf");
  c.spec.c = f.number("c", c.spec.c);
  Fields m(f.child("models"), "models");
  c.truth = parse_gk(m, "truth", c.truth, c.spec.c);
  c.alt2 = parse_gk(m, "alt2", c.alt2, c.spec.c);
  c.alt3 = parse_gk(m, "alt3", c.alt3, c.spec.c);
  f.put("models", m.finish());
  const Vector probs = f.vector("probabilities", Vector::Map(c.spec.probabilities.data(), 5), std::nullopt);
  c.spec.probabilities.assign(probs.data(), probs.data() + probs.size());
  try {
    c.spec.validate();
  } catch (const Error& e) {
    f.fail("probabilities", e.what());
  }
  c.sample_sizes = f.int_list("sample_sizes", c.sample_sizes, 1);
  c.replicates = to_int(f.integer("replicates", c.replicates, 1));
  json echo = f.finish();
  return {std::move(c), std::move(echo)};
}

Parsed<BcopCommandConfig> parse_bcop_config(const json& j) {
  Fields f(j, "");
  BcopCommandConfig c;
  c.common = parse_common(f, "bcop", "lfi-out/bcop");
  DataConfig defaults;
  defaults.source = "clayton";
  defaults.n = 1000;
  defaults.gk = GkParams{0.0, 1.0, 0.5, 0.0};
  json e;
  c.data = parse_data(f.child("data"), "data", {"clayton", "file"}, defaults, e);
  f.put("data", e);
  c.sampler.prior = parse_prior(f.child("prior"), "prior", 1, c.sampler.prior, e);
  f.put("prior", e);
  Fields s(f.child("sampler"), "sampler");
  c.sampler.prior_draws = to_int(s.integer("prior_draws", c.sampler.prior_draws, 1));
  c.sampler.flavor = parse_flavor(s);
  c.sampler.constraint = s.choice("constraint", "per_observation", {"per_observation", "estimator_residual"}) ==
                                 "per_observation"
                             ? BcopConstraint::per_observation
                             : BcopConstraint::estimator_residual;
  f.put("sampler", s.finish());
  json echo = f.finish();
  return {std::move(c), std::move(echo)};
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace lfi::cli
