#include <cmath>
#include <limits>

#include "lfi/errors.hpp"
#include "lfi/mcmc.hpp"
#include "lfi/synthetic_likelihood.hpp"

namespace lfi {

ParameterVector max_synthetic_likelihood(const SimulatorModel& model, const SummaryVector& s_obs, int n,
                                         const MaxSlConfig& config, const RngStream& rng) {
  MCMCConfig mc;
  mc.iterations = config.iterations;
  mc.initial = config.initial;
  mc.proposal_cov = config.proposal_cov;
  mc.n = n;
  mc.estimator = config.estimator;
  const MCMCTrace trace = run_mcmc_bsl(model, s_obs, config.search_box, mc, rng);

  Eigen::Index best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.log_sl.size(); ++i) {
    const double v = trace.log_sl[i].log_value();
    if (v > best_value) {
      best_value = v;
      best = static_cast<Eigen::Index>(i);
    }
  }
  if (best < 0) throw NumericalError("no visited state had an estimable synthetic likelihood");
  return trace.states.row(best).transpose();
}

}  // namespace lfi
