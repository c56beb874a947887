#pragma once

#include "mdtb/errors.hpp"
#include "mdtb/types.hpp"

#include <memory>
#include <span>
#include <vector>

namespace mdtb {

enum class PatchKind { poly, bspline, pexp, ptrig, gexp, gtrig, tcheb, multi };

const char* to_string(PatchKind kind);

/// A concrete local space on [x0, x1] exposing Bernstein-like basis
/// evaluation, differentiation and end-point derivatives. Implementations
/// are immutable after construction and all operations are pure, so patches
/// can be shared across threads and evaluation can be parallelized over
/// points.
class LocalPatch {
public:
    virtual ~LocalPatch() = default;

    double x0() const { return x0_; }
    double x1() const { return x1_; }
    double length() const { return x1_ - x0_; }
    int dimension() const { return dim_; }
    int degree() const { return dim_ - 1; }
    PatchKind kind() const { return kind_; }

    const std::vector<Warning>& warnings() const { return warnings_; }
    bool condition_flag() const { return !warnings_.empty(); }

    /// Basis values and derivatives: level d of the result is a
    /// dimension() x points.size() matrix with entry (j, k) = D^d B_j(points[k]).
    EvalStack eval_all(std::span<const double> points, int max_deriv,
                       Exec exec = Exec::parallel) const;

    /// End-point derivatives: a dimension() x (max_deriv + 1) matrix with
    /// entry (j, d) = D^d B_j at the chosen end point.
    /// Throws DerivOrderTooHigh when max_deriv exceeds degree().
    Matrix diffend_all(Endpoint end, int max_deriv) const;

    /// Like diffend_all but without the order cap: orders beyond degree()
    /// are still mathematically defined (zero for piecewise-polynomial
    /// spaces, recurrence-extended otherwise).
    Matrix diffend_extended(Endpoint end, int max_deriv) const;

    /// Break points of the patch, {x0, x1} unless the patch is itself
    /// piecewise (B-spline local spaces, embedded multi-degree spaces).
    virtual std::vector<double> breaks() const { return {x0_, x1_}; }

protected:
    LocalPatch(PatchKind kind, double x0, double x1, int dim);

    virtual EvalStack eval_impl(std::span<const double> points, int max_deriv,
                                Exec exec) const = 0;
    /// Default: evaluate at the end point (exact for the recurrence-based
    /// implementations). Overridden where a cheaper/stabler path exists.
    virtual Matrix diffend_impl(Endpoint end, int max_deriv) const;

    /// Throws PointOutOfInterval unless all points lie in [x0, x1] (tiny
    /// roundoff slack allowed).
    void check_points(std::span<const double> points) const;

    std::vector<Warning> warnings_;

private:
    PatchKind kind_;
    double x0_;
    double x1_;
    int dim_;
};

using PatchPtr = std::shared_ptr<const LocalPatch>;

/// A function on a patch given by its coefficients in the Bernstein-like basis.
struct BernsteinFunction {
    PatchPtr patch;
    Vector coefficients;

    BernsteinFunction(PatchPtr p, Vector coeffs);

    /// Level d of the result holds D^d f at the points (1 x |points| matrix).
    EvalStack eval(std::span<const double> points, int max_deriv,
                   Exec exec = Exec::parallel) const;
};

/// Basis (or derivative) samples over a uniform grid, with interval-ownership
/// metadata for exporters.
struct BasisSample {
    std::vector<double> points;
    std::vector<int> interval_index; // owning interval per point (half-open)
    EvalStack values;                // one level per derivative order
};

/// Samples the basis of a patch on a uniform grid of grid_size points
/// including both end points; the right end is taken as a left limit.
BasisSample sample_basis(const LocalPatch& patch, int grid_size, int max_deriv = 0,
                         Exec exec = Exec::parallel);

} // namespace mdtb
