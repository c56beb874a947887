#pragma once

#include "mdtb/local_patch.hpp"
#include "mdtb/types.hpp"

#include <optional>
#include <vector>

namespace mdtb {

/// A multi-degree Tchebycheffian spline space: break points, one local
/// patch per interval and a smoothness vector r of length m + 1 with
/// r_0 = r_m = -1 in the non-periodic case.
struct MDTSpaceSpec {
    std::vector<double> breaks;    // x_0 < ... < x_m
    std::vector<PatchPtr> patches; // patch i on [x_i, x_{i+1}]
    std::vector<int> smoothness;   // r_0 .. r_m

    int interval_count() const { return static_cast<int>(patches.size()); }
    int local_degree(int i) const { return patches[static_cast<size_t>(i)]->degree(); }
    double a() const { return breaks.front(); }
    double b() const { return breaks.back(); }

    /// Offset mu(i) = sum of (p_j + 1) over the first i intervals: start of
    /// interval i's block in the stacked Bernstein vector.
    int block_offset(int i) const;
    int stacked_dimension() const { return block_offset(interval_count()); }

    /// Index of the interval owning x (half-open; b belongs to the last one).
    int owning_interval(double x) const;
};

/// Validates tiling, smoothness bounds and dimension; returns the spec.
/// Throws InvalidSpec on violation.
MDTSpaceSpec validate_space(MDTSpaceSpec spec);

/// Dimension n = sum_i (p_i - r_i) of the MDT-spline space.
int dimension(const MDTSpaceSpec& spec);

/// Periodic variant: r_per >= 0 is counted once at the seam.
int dimension_periodic(const MDTSpaceSpec& spec, int r_per);

/// Left and right support-end sequences of the MDTB-splines:
/// supp(N_k) = [u_k, v_k].
struct KnotVectors {
    std::vector<double> u;
    std::vector<double> v;
};

/// Knot vectors of the non-periodic space (multiplicity p_{i+1} - r_i in u,
/// p_i - r_i in v at break x_i).
KnotVectors knot_vectors(const MDTSpaceSpec& spec);

} // namespace mdtb
