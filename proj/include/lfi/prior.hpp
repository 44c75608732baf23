#pragma once

#include <variant>
#include <vector>

#include "lfi/rng.hpp"
#include "lfi/types.hpp"

namespace lfi {

struct UniformMarginal {
  double lower;
  double upper;
};

struct NormalMarginal {
  double mean;
  double sd;
};

using Marginal = std::variant<UniformMarginal, NormalMarginal>;

/// Product prior over independent coordinates. Log-density is -inf outside support.
class PriorSpec {
 public:
  static PriorSpec uniform(const Vector& lower, const Vector& upper);
  static PriorSpec normal(const Vector& mean, const Vector& sd);
  static PriorSpec product(std::vector<Marginal> marginals);

  int dimension() const noexcept { return static_cast<int>(marginals_.size()); }
  const std::vector<Marginal>& marginals() const noexcept { return marginals_; }

  double log_density(const ParameterVector& theta) const;
  ParameterVector sample(RngStream& rng) const;

 private:
  explicit PriorSpec(std::vector<Marginal> marginals);

  std::vector<Marginal> marginals_;
};

}  // namespace lfi
