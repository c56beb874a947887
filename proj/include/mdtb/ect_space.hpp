#pragma once

#include "mdtb/local_patch.hpp"
#include "mdtb/root_spec.hpp"
#include "mdtb/types.hpp"

#include <span>

namespace mdtb {

/// The fundamental solution system of the null-space identified by a
/// RootSpec: functions grouped per root in spec order, each anchored at x0
/// (all built from powers of (x - x0)) so that results are invariant under
/// translations of the interval. Real roots contribute mu functions,
/// complex roots 2*mu interleaved cos/sin functions.
class FundamentalBasis {
public:
    explicit FundamentalBasis(RootSpec spec);

    const RootSpec& spec() const { return spec_; }
    int dimension() const { return spec_.degree + 1; }

    /// Values and derivatives of all fundamental functions at the points.
    /// Level d, entry (i, k) is D^d phi_i(points[k]). Derivatives come from
    /// the per-root-type recurrences, never symbolic differentiation.
    EvalStack eval_all(std::span<const double> points, int max_deriv,
                       Exec exec = Exec::parallel) const;

    /// Transposed Wronskian at an end point: entry (i, j) = D^j phi_i(x),
    /// columns indexed by derivative order 0..max_deriv.
    Matrix wronskian_at(Endpoint end, int max_deriv) const;

    /// The sparse first-derivative map D with D phi = derivative_map() * phi.
    const Matrix& derivative_map() const { return dmap_; }

private:
    Vector values_at(double x) const;

    RootSpec spec_;
    Matrix dmap_;
};

struct ConversionMatrix {
    Matrix entries;              // row j expresses B_{j,p} in the fundamental basis
    std::vector<Warning> warnings; // raised when a solve is nearly singular
    bool condition_flag = false;
};

/// Builds the conversion matrix C with B = C * phi from the transposed
/// Wronskians at the two end points by solving one Hermite end-point system
/// per Bernstein function (LU with partial pivoting; inverses are never
/// formed). Throws SingularSystem when a solve fails outright.
ConversionMatrix conversion_matrix(const Matrix& left_wronskian,
                                   const Matrix& right_wronskian,
                                   double rcond_warn_threshold = warn_rcond_threshold());

/// Local ECT-space defined by characteristic roots; Bernstein basis obtained
/// through the conversion-matrix construction.
class TchebPatch : public LocalPatch {
public:
    explicit TchebPatch(RootSpec spec);
    TchebPatch(std::vector<Root> roots, double x0, double x1);

    const RootSpec& root_spec() const { return fundamental_.spec(); }
    const FundamentalBasis& fundamental() const { return fundamental_; }
    const Matrix& conversion() const { return conversion_; }

protected:
    EvalStack eval_impl(std::span<const double> points, int max_deriv,
                        Exec exec) const override;
    Matrix diffend_impl(Endpoint end, int max_deriv) const override;

private:
    FundamentalBasis fundamental_;
    Matrix conversion_;
    Matrix wronskian_left_;  // columns 0..p, extended on demand in diffend
    Matrix wronskian_right_;
};

} // namespace mdtb
