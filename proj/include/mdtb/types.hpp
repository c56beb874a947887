#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace mdtb {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Stack of derivative levels: element d holds D^d values, one column per point.
using EvalStack = std::vector<Matrix>;

enum class Endpoint { left, right };

/// Execution policy for point-parallel kernels. The serial path is the
/// reference implementation; the parallel path must produce identical results.
enum class Exec { serial, parallel };

/// Record emitted when a linear solve is nearly singular. Warnings are
/// returned as values attached to the constructed object, never global state.
struct Warning {
    std::string context;
    double rcond = 0.0;
};

/// Reciprocal-condition threshold below which a solve raises a warning.
/// Defaults to 1e3 * machine epsilon; overridable via TCHEB_WARN_RCOND.
double warn_rcond_threshold();

} // namespace mdtb
