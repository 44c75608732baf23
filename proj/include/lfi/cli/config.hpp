#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lfi/bcel.hpp"
#include "lfi/cli/output.hpp"
#include "lfi/copula.hpp"
#include "lfi/errors.hpp"
#include "lfi/mcmc.hpp"
#include "lfi/models.hpp"
#include "lfi/prior.hpp"
#include "lfi/rng.hpp"

namespace lfi::cli {

using nlohmann::json;

/// Invalid or inconsistent configuration. The message names the offending key.
class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Fields shared by every experiment command.
struct CommonConfig {
  std::uint64_t seed = 1;
  std::filesystem::path output = "lfi-out";
  OutputFormat format = OutputFormat::csv;
};

struct ModelConfig {
  std::string name = "mvn_toy";
  Matrix covariance = Matrix::Identity(2, 2);
  bool degenerate = false;

  std::unique_ptr<SimulatorModel> build() const;
};

/// Observed data: read from a CSV file or simulated from a named distribution.
struct DataConfig {
  std::string source = "normal";  // file | normal | gk | clayton
  std::filesystem::path path;
  std::vector<int> columns;       // empty = all
  int n = 100;
  double mean = 10.0;
  double sd = 1.0;
  GkParams gk{};
  int dimension = 5;
  double psi = 1.076;

  DataMatrix load(const RngStream& rng) const;
};

struct ConstraintConfig {
  std::string name = "mean";  // mean | quantile | gk_quantiles
  double prob = 0.5;
  QuantileConstraintSpec gk{};

  ConstraintFunction build() const;
};

struct BslCommandConfig {
  CommonConfig common;
  ModelConfig model;
  Vector s_obs;
  PriorSpec prior = PriorSpec::uniform(Vector::Constant(1, 0.0), Vector::Constant(1, 1.0));
  MCMCConfig sampler;
};

struct TuneNCommandConfig {
  CommonConfig common;
  ModelConfig model;
  Vector s_obs;
  Vector theta_ref;
  std::vector<int> candidates{10, 20, 50, 100};
  int replications = 50;
  double target_sd = 2.0;
};

struct BcelCommandConfig {
  CommonConfig common;
  DataConfig data;
  ConstraintConfig constraint;
  PriorSpec prior = PriorSpec::uniform(Vector::Constant(1, -10.0), Vector::Constant(1, 30.0));
  int draws = 5000;
  LikelihoodFlavor flavor = LikelihoodFlavor::el;
  std::optional<int> resample;

  BcelConfig to_bcel() const;
};

struct AmisCommandConfig {
  BcelCommandConfig base;
  int generations = 5;
  double jitter_scale = 1e-8;
  AmisDenominator denominator = AmisDenominator::as_printed;

  AmisConfig to_amis() const;
};

struct GkBfCommandConfig {
  CommonConfig common;
  GkParams truth{0.0, 1.0, 1.0, 0.0};
  GkParams alt2{0.0, 1.0, 0.5, 0.0};
  GkParams alt3{0.0, 1.0, 0.0, 0.0};
  QuantileConstraintSpec spec{};
  std::vector<int> sample_sizes{100, 500};
  int replicates = 100;
};

struct BcopCommandConfig {
  CommonConfig common;
  DataConfig data;
  BcopConfig sampler;
};

/// Each parser validates the whole config (no simulation) and returns the
/// typed config together with the fully resolved JSON echo, defaults included.
template <class T>
struct Parsed {
  T config;
  json echo;
};

Parsed<BslCommandConfig> parse_bsl_config(const json& j);
Parsed<TuneNCommandConfig> parse_tune_n_config(const json& j);
Parsed<BcelCommandConfig> parse_bcel_config(const json& j);
Parsed<AmisCommandConfig> parse_amis_config(const json& j);
Parsed<GkBfCommandConfig> parse_gk_bf_config(const json& j);
Parsed<BcopCommandConfig> parse_bcop_config(const json& j);

/// Reads a JSON file; malformed JSON is a ConfigError, unreadable file an IoError.
json load_json_file(const std::filesystem::path& path);

/// Stream used for simulating observed data; the samplers use stream 0.
inline constexpr std::uint64_t kDataStream = 1;

}  // namespace lfi::cli
