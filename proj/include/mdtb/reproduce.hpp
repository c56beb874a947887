#pragma once

#include "mdtb/io.hpp"
#include "mdtb/mdtb_space.hpp"
#include "mdtb/root_spec.hpp"

#include <string>
#include <vector>

namespace mdtb {

/// Mixed-space showcase: cubic polynomial, exponential and trigonometric
/// generalized polynomial pieces and a generic root-spec piece on [0, 4],
/// glued with smoothness (2, 3, 3); dimension 10.
MDTSpaceSpec showcase_space();

/// Periodic C^1 description of the unit square with rounded corners of
/// radius 2/(2 + l): trigonometric arcs of parametric length pi/2 alternated
/// with linear pieces of parametric length l.
MDTSpaceSpec rounded_square_space(double l);

/// Control points of the rounded square (one per periodic basis function).
Matrix rounded_square_control_points();

/// Closed-form rounded-square curve point at parameter x.
Eigen::Vector2d rounded_square_point(double l, double x);

/// An ill-conditioned null-space with clustered roots on a short interval
/// far from the origin; degree p >= 6. Useful to exercise the
/// near-singularity warnings.
RootSpec clustered_root_spec(int p);

struct ReproduceResult {
    std::vector<std::string> files; // paths written, in order
    Json summary;
};

/// Rebuilds one of the shipped showcase datasets into out_dir and returns
/// a machine-readable summary. Known ids: basis_A, basis_B, instability_A,
/// instability_B, critical_length_A, critical_length_B, critical_length_C.
ReproduceResult reproduce(const std::string& example_id, const std::string& out_dir);

} // namespace mdtb
