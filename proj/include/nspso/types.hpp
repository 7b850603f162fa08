#pragma once

#include <Eigen/Core>

#include <stdexcept>

namespace nspso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Invalid run or experiment configuration. Mapped to CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure reading or writing an artifact file. Mapped to CLI exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A swarm cannot be placed because the requested hypersphere does not
/// intersect the feasible box.
struct InfeasibleRegionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nspso
