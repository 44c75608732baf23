#include "lfi/copula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lfi/errors.hpp"
#include "lfi/kernels.hpp"

namespace lfi {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Average ranks (1-based) of one column.
Vector average_ranks(const Vector& x) {
  const auto n = x.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return x[a] < x[b]; });
  Vector ranks(n);
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start + 1;
    while (end < n && x[order[static_cast<std::size_t>(end)]] == x[order[static_cast<std::size_t>(start)]]) ++end;
    const double avg = 0.5 * static_cast<double>(start + 1 + end);
    for (Eigen::Index k = start; k < end; ++k) ranks[order[static_cast<std::size_t>(k)]] = avg;
    start = end;
  }
  return ranks;
}

double term(const Eigen::Ref<const Eigen::RowVectorXd>& u, double clip, double scale, double norm) {
  double prod = 1.0;
  for (Eigen::Index j = 0; j < u.size(); ++j) prod *= 1.0 - std::min(u[j], clip);
  return norm * (scale * prod - 1.0);
}

// Jackknife pseudo-values n * rho - (n - 1) * rho_{-k} of the rank estimator.
Vector jackknife_pseudo_values(const Matrix& u) {
  const auto n = u.rows();
  const auto d = u.cols();
  if (n < 3) throw PreconditionError("jackknife needs at least 3 observations");
  Matrix ranks(n, d);
  for (Eigen::Index j = 0; j < d; ++j) ranks.col(j) = average_ranks(u.col(j));
  const double full = spearman_rho_multivariate(ranks / static_cast<double>(n));

  const double m = static_cast<double>(n - 1);
  const double clip = 1.0 - 0.5 / m;
  const double scale = std::ldexp(1.0, static_cast<int>(d));
  const double norm = spearman_normalizer(static_cast<int>(d));
  Vector out(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::RowVectorXd row(d);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k) continue;
      for (Eigen::Index j = 0; j < d; ++j) {
        const double shift = u(k, j) < u(i, j) ? 1.0 : (u(k, j) == u(i, j) ? 0.5 : 0.0);
        row[j] = (ranks(i, j) - shift) / m;
      }
      sum += term(row, clip, scale, norm);
    }
    out[k] = static_cast<double>(n) * full - sum;
  }
  return out;
}

}  // namespace

ClaytonCopula::ClaytonCopula(int dimension, double psi, bool independence)
    : dimension_(dimension), psi_(psi), independence_(independence) {}

ClaytonCopula::ClaytonCopula(int dimension, double psi) : ClaytonCopula(dimension, psi, false) {
  if (dimension < 2) throw DomainError("Clayton copula needs dimension >= 2");
  if (!std::isfinite(psi) || psi < -1.0 || psi == 0.0) throw DomainError("Clayton psi must lie in [-1, inf) \\ {0}");
  if (dimension > 2 && psi < 0.0) throw DomainError("Clayton copula with d > 2 needs psi > 0");
}

ClaytonCopula ClaytonCopula::independence(int dimension) {
  if (dimension < 2) throw DomainError("copula needs dimension >= 2");
  return ClaytonCopula(dimension, 0.0, true);
}

double ClaytonCopula::cdf(const Vector& u) const {
  if (u.size() != dimension_) throw PreconditionError("copula cdf: dimension mismatch");
  if (independence_) return u.prod();
  if ((u.array() <= 0.0).any()) return 0.0;
  double s = 0.0;
  for (double v : u) s += std::pow(v, -psi_);
  s -= dimension_ - 1;
  if (s <= 0.0) return 0.0;
  return std::pow(s, -1.0 / psi_);
}

Matrix clayton_sample(int n, const ClaytonCopula& copula, const RngStream& rng) {
  if (n < 1) throw PreconditionError("copula sample size must be positive");
  const int d = copula.dimension();
  const double psi = copula.psi();
  Matrix out(n, d);
  constexpr double kTiny = std::numeric_limits<double>::min();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    RngStream r = rng.split(static_cast<std::uint64_t>(i));
    if (copula.is_independence()) {
      for (int j = 0; j < d; ++j) out(i, j) = r.uniform();
    } else if (psi > 0.0) {
      const double frailty = r.gamma(1.0 / psi);
      for (int j = 0; j < d; ++j) {
        out(i, j) = std::max(kTiny, std::pow(1.0 + r.exponential() / frailty, -1.0 / psi));
      }
    } else {
      const double u1 = r.uniform();
      const double w = r.uniform();
      double u2;
      if (psi == -1.0) {
        u2 = 1.0 - u1;
      } else {
        const double inner = std::pow(u1, -psi) * (std::pow(w, -psi / (1.0 + psi)) - 1.0) + 1.0;
        u2 = std::pow(std::max(inner, 0.0), -1.0 / psi);
      }
      out(i, 0) = u1;
      out(i, 1) = std::clamp(u2, kTiny, 1.0);
    }
  }
  return out;
}

Matrix pseudo_observations(const Matrix& data) {
  if (data.rows() < 2) throw PreconditionError("pseudo-observations need n >= 2");
  if (!data.allFinite()) throw DataError("copula data must be finite");
  Matrix u(data.rows(), data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    u.col(j) = average_ranks(data.col(j)) / static_cast<double>(data.rows());
  }
  return u;
}

double spearman_normalizer(int d) {
  if (d < 2) throw DomainError("Spearman rho needs d >= 2");
  const double p = std::ldexp(1.0, d);
  return (d + 1.0) / (p - (d + 1.0));
}

Vector spearman_terms(const Matrix& u) {
  const auto n = u.rows();
  if (n < 2) throw PreconditionError("Spearman rho needs n >= 2");
  const double clip = 1.0 - 0.5 / static_cast<double>(n);
  const double scale = std::ldexp(1.0, static_cast<int>(u.cols()));
  const double norm = spearman_normalizer(static_cast<int>(u.cols()));
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = term(u.row(i), clip, scale, norm);
  return out;
}

double spearman_rho_multivariate(const Matrix& u) { return spearman_terms(u).mean(); }

WeightedSample run_bcop(const std::vector<Matrix>& uniforms, const BcopConfig& config, const RngStream& rng) {
  if (uniforms.empty()) throw PreconditionError("BCOP needs at least one marginal draw");
  if (config.prior.dimension() != 1) throw PreconditionError("BCOP prior must be one-dimensional");
  if (config.prior_draws < 1) throw PreconditionError("BCOP needs at least one prior draw");
  for (const auto& m : config.prior.marginals()) {
    if (const auto* u = std::get_if<UniformMarginal>(&m); !u || u->lower < -1.0 || u->upper > 1.0) {
      throw PreconditionError("BCOP prior on rho must be uniform within [-1, 1]");
    }
  }
  const auto n = uniforms.front().rows();
  const auto d = uniforms.front().cols();
  for (const auto& u : uniforms) {
    if (u.rows() != n || u.cols() != d) throw PreconditionError("marginal draws must share one shape");
    if (!u.allFinite() || (u.array() < 0.0).any() || (u.array() > 1.0).any()) {
      throw DataError("marginal-transformed data must lie in [0, 1]");
    }
  }

  WeightedSample sample;
  sample.points = kernels::sample_prior(config.prior, config.prior_draws, rng);
  const Vector rho = sample.points.col(0);
  const auto draws = static_cast<Eigen::Index>(uniforms.size());
  Matrix log_w(rho.size(), draws);
  for (Eigen::Index s = 0; s < draws; ++s) {
    const Vector values = config.constraint == BcopConstraint::per_observation
                              ? spearman_terms(uniforms[static_cast<std::size_t>(s)])
                              : jackknife_pseudo_values(uniforms[static_cast<std::size_t>(s)]);
    log_w.col(s) = kernels::scalar_mean_log_weights(values, rho, config.flavor);
  }
  sample.log_weights.resize(rho.size());
  const double log_draws = std::log(static_cast<double>(draws));
  for (Eigen::Index b = 0; b < rho.size(); ++b) {
    if (draws == 1) {
      sample.log_weights[b] = log_w(b, 0);
      continue;
    }
    const double top = log_w.row(b).maxCoeff();
    sample.log_weights[b] =
        top == kNegInf ? kNegInf : top + std::log((log_w.row(b).array() - top).unaryExpr([](double x) { return std::exp(x); }).sum()) - log_draws;
  }
  sample.generations.assign(static_cast<std::size_t>(rho.size()), 1);
  if ((sample.log_weights.array() == kNegInf).all()) {
    throw DegeneratePosteriorError("every prior draw of rho has zero empirical likelihood");
  }
  return sample;
}

WeightedSample run_bcop(const Matrix& data, const BcopConfig& config, const RngStream& rng) {
  return run_bcop(std::vector<Matrix>{pseudo_observations(data)}, config, rng);
}

}  // namespace lfi
