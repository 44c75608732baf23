#pragma once

#include <Eigen/Dense>

namespace lfi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point in parameter space.
using ParameterVector = Eigen::VectorXd;
/// A point in summary-statistic space.
using SummaryVector = Eigen::VectorXd;

/// Observations are stored one per row.
using DataMatrix = Eigen::MatrixXd;

}  // namespace lfi
