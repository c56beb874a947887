#pragma once

#include "mdtb/local_patch.hpp"
#include "mdtb/types.hpp"

#include <span>
#include <vector>

namespace mdtb {

/// Algebraic polynomial space of degree p; classical Bernstein polynomials
/// via the triangular recurrence, derivatives via the difference formula.
/// Never routes through the conversion-matrix construction.
class PolyPatch : public LocalPatch {
public:
    PolyPatch(int p, double x0, double x1);

protected:
    EvalStack eval_impl(std::span<const double> points, int max_deriv,
                        Exec exec) const override;
};

/// Classical polynomial B-spline space on an open knot vector, usable as a
/// single local patch of dimension n. More efficient than gluing separate
/// polynomial pieces of the same degree.
class BSplinePatch : public LocalPatch {
public:
    /// smoothness holds the interior values r_1..r_{m-1}; the end knots get
    /// full multiplicity p + 1.
    BSplinePatch(int p, std::vector<double> breaks, std::vector<int> smoothness);

    int spline_degree() const { return p_; }
    const std::vector<double>& knots() const { return knots_; }
    std::vector<double> breaks() const override { return breaks_; }

protected:
    EvalStack eval_impl(std::span<const double> points, int max_deriv,
                        Exec exec) const override;

private:
    int find_span(double x) const;

    int p_;
    std::vector<double> breaks_;
    std::vector<int> smoothness_;
    std::vector<double> knots_;
};

/// Polynomial-type spaces spanned by 1 and stacked hyperbolic (pexp) or
/// trigonometric (ptrig) harmonics of a shape parameter; evaluated through
/// the stable order-2 step recurrence with precomputed sigma coefficients.
class PTypePatch : public LocalPatch {
public:
    /// kind must be PatchKind::pexp or PatchKind::ptrig; p = 2q even, >= 2.
    PTypePatch(PatchKind kind, double shape, int p, double x0, double x1);

    double shape() const { return shape_; }

protected:
    EvalStack eval_impl(std::span<const double> points, int max_deriv,
                        Exec exec) const override;
    Matrix diffend_impl(Endpoint end, int max_deriv) const override;

private:
    double u(double t) const; // cosh or cos of shape * t
    double v(double t) const; // sinh or sin of shape * t
    Vector values_at(double x) const;

    double shape_;
    Vector sigma_p_; // sigma_{j,p}
    double s02_, s12_, s22_;
    Matrix deriv_op_; // tridiagonal map: D B = deriv_op_ * B
};

struct GenPolyParams {
    int p = 2;                     // >= 2
    double shape = 1.0;            // alpha (gexp) or beta (gtrig)
    double switch_threshold = 5.0; // on |shape| * (x1 - x0)
    int taylor_cap = 40;
};

/// Generalized polynomial space: polynomials of degree p - 2 enriched with
/// two exponential (gexp) or trigonometric (gtrig) functions. Uses the
/// shape-scaled basis away from zero and a truncated-Taylor fallback basis
/// near zero, then routes through the conversion-matrix construction.
class GenPolyPatch : public LocalPatch {
public:
    GenPolyPatch(PatchKind kind, GenPolyParams params, double x0, double x1);
    GenPolyPatch(PatchKind kind, double shape, int p, double x0, double x1);

    const GenPolyParams& params() const { return params_; }
    bool uses_taylor_fallback() const { return taylor_; }
    const Matrix& conversion() const { return conversion_; }

protected:
    EvalStack eval_impl(std::span<const double> points, int max_deriv,
                        Exec exec) const override;
    Matrix diffend_impl(Endpoint end, int max_deriv) const override;

private:
    Vector phi_values(double x) const;
    Matrix wronskian_at(double x, int max_deriv) const;

    GenPolyParams params_;
    bool taylor_;  // Taylor fallback branch active
    Matrix dmap_;  // first-derivative map of the phi basis
    Matrix conversion_;
};

} // namespace mdtb
