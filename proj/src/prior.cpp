#include "lfi/prior.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lfi/errors.hpp"

namespace lfi {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void validate(const Marginal& m) {
  std::visit(Overloaded{
                 [](const UniformMarginal& u) {
                   if (!std::isfinite(u.lower) || !std::isfinite(u.upper) || !(u.lower < u.upper)) {
                     throw DomainError("uniform prior needs finite lower < upper");
                   }
                 },
                 [](const NormalMarginal& n) {
                   if (!std::isfinite(n.mean) || !(n.sd > 0.0) || !std::isfinite(n.sd)) {
                     throw DomainError("normal prior needs a finite mean and sd > 0");
                   }
                 },
             },
             m);
}

}  // namespace

PriorSpec::PriorSpec(std::vector<Marginal> marginals) : marginals_(std::move(marginals)) {
  if (marginals_.empty()) throw PreconditionError("prior needs at least one coordinate");
  for (const auto& m : marginals_) validate(m);
}

PriorSpec PriorSpec::uniform(const Vector& lower, const Vector& upper) {
  if (lower.size() != upper.size()) throw PreconditionError("uniform prior bounds differ in length");
  std::vector<Marginal> ms;
  for (Eigen::Index i = 0; i < lower.size(); ++i) ms.emplace_back(UniformMarginal{lower[i], upper[i]});
  return PriorSpec(std::move(ms));
}

PriorSpec PriorSpec::normal(const Vector& mean, const Vector& sd) {
  if (mean.size() != sd.size()) throw PreconditionError("normal prior mean/sd differ in length");
  std::vector<Marginal> ms;
  for (Eigen::Index i = 0; i < mean.size(); ++i) ms.emplace_back(NormalMarginal{mean[i], sd[i]});
  return PriorSpec(std::move(ms));
}

PriorSpec PriorSpec::product(std::vector<Marginal> marginals) { return PriorSpec(std::move(marginals)); }

double PriorSpec::log_density(const ParameterVector& theta) const {
  if (theta.size() != dimension()) throw PreconditionError("prior: parameter dimension mismatch");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double out = 0.0;
  for (int i = 0; i < dimension(); ++i) {
    const double x = theta[i];
    if (!std::isfinite(x)) return kNegInf;
    out += std::visit(Overloaded{
                          [x](const UniformMarginal& u) {
                            return (x < u.lower || x > u.upper) ? kNegInf : -std::log(u.upper - u.lower);
                          },
                          [x](const NormalMarginal& n) {
                            const double z = (x - n.mean) / n.sd;
                            return -0.5 * z * z - std::log(n.sd) -
                                   0.5 * std::log(2.0 * std::numbers::pi);
                          },
                      },
                      marginals_[i]);
  }
  return out;
}

ParameterVector PriorSpec::sample(RngStream& rng) const {
  ParameterVector theta(dimension());
  for (int i = 0; i < dimension(); ++i) {
    theta[i] = std::visit(Overloaded{
                              [&rng](const UniformMarginal& u) {
                                return u.lower + (u.upper - u.lower) * rng.uniform();
                              },
                              [&rng](const NormalMarginal& n) { return n.mean + n.sd * rng.normal(); },
                          },
                          marginals_[i]);
  }
  return theta;
}

}  // namespace lfi
