#include "mdtb/ect_space.hpp"

#include "mdtb/parallel.hpp"

#include <cmath>

namespace mdtb {

namespace {

// Solves row * A = rhs by LU with partial pivoting on A^T; the inverse is
// never formed. Appends a warning when the solve is nearly singular.
Eigen::RowVectorXd solve_row(const Matrix& a, const Eigen::RowVectorXd& rhs,
                             double rcond_threshold, const char* context,
                             std::vector<Warning>& warnings) {
    Eigen::PartialPivLU<Matrix> lu(a.transpose());
    const double rcond = lu.rcond();
    Eigen::RowVectorXd row = lu.solve(rhs.transpose()).transpose();
    if (!row.allFinite() || rcond == 0.0) {
        throw SingularSystem("Hermite end-point system is singular; the space "
                             "is not ECT on this interval or is numerically degenerate");
    }
    if (rcond < rcond_threshold) {
        warnings.push_back(Warning{context, rcond});
    }
    return row;
}

} // namespace

FundamentalBasis::FundamentalBasis(RootSpec spec) : spec_(std::move(spec)) {
    const int n = dimension();
    dmap_ = Matrix::Zero(n, n);
    int base = 0;
    for (const Root& r : spec_.roots) {
        if (r.beta == 0.0) {
            // D phi_i = phi_{i-1} + alpha phi_i
            for (int i = 0; i < r.mu; ++i) {
                if (i > 0) {
                    dmap_(base + i, base + i - 1) = 1.0;
                }
                if (r.alpha != 0.0) {
                    dmap_(base + i, base + i) = r.alpha;
                }
            }
        } else {
            // D phi_{2i}   = phi_{2i-2} + alpha phi_{2i}   - beta phi_{2i+1}
            // D phi_{2i+1} = phi_{2i-1} + alpha phi_{2i+1} + beta phi_{2i}
            for (int i = 0; i < r.mu; ++i) {
                const int c = base + 2 * i;
                const int s = c + 1;
                if (i > 0) {
                    dmap_(c, c - 2) = 1.0;
                    dmap_(s, s - 2) = 1.0;
                }
                if (r.alpha != 0.0) {
                    dmap_(c, c) = r.alpha;
                    dmap_(s, s) = r.alpha;
                }
                dmap_(c, s) = -r.beta;
                dmap_(s, c) = r.beta;
            }
        }
        base += r.span();
    }
}

Vector FundamentalBasis::values_at(double x) const {
    const int n = dimension();
    Vector phi(n);
    const double t = x - spec_.x0;
    int base = 0;
    for (const Root& r : spec_.roots) {
        const double w = r.alpha == 0.0 ? 1.0 : std::exp(r.alpha * t);
        double monomial = 1.0; // t^i / i!
        if (r.beta == 0.0) {
            for (int i = 0; i < r.mu; ++i) {
                phi[base + i] = monomial * w;
                monomial *= t / (i + 1);
            }
        } else {
            const double c = std::cos(r.beta * t);
            const double s = std::sin(r.beta * t);
            for (int i = 0; i < r.mu; ++i) {
                phi[base + 2 * i] = monomial * w * c;
                phi[base + 2 * i + 1] = monomial * w * s;
                monomial *= t / (i + 1);
            }
        }
        base += r.span();
    }
    return phi;
}

EvalStack FundamentalBasis::eval_all(std::span<const double> points, int max_deriv,
                                     Exec exec) const {
    const int n = dimension();
    const double slack = 1e-12 * std::max(1.0, std::max(std::abs(spec_.x0), std::abs(spec_.x1)));
    for (double x : points) {
        if (x < spec_.x0 - slack || x > spec_.x1 + slack) {
            throw PointOutOfInterval("evaluation point outside the interval");
        }
    }
    const auto npts = static_cast<Eigen::Index>(points.size());
    EvalStack stack(static_cast<size_t>(max_deriv) + 1);
    stack[0].resize(n, npts);
    parallel_for(npts, exec, [&](std::ptrdiff_t k) {
        stack[0].col(k) = values_at(points[static_cast<size_t>(k)]);
    });
    for (int d = 1; d <= max_deriv; ++d) {
        stack[static_cast<size_t>(d)] = dmap_ * stack[static_cast<size_t>(d) - 1];
    }
    return stack;
}

Matrix FundamentalBasis::wronskian_at(Endpoint end, int max_deriv) const {
    const double x = end == Endpoint::left ? spec_.x0 : spec_.x1;
    Matrix m(dimension(), max_deriv + 1);
    m.col(0) = values_at(x);
    for (int d = 1; d <= max_deriv; ++d) {
        m.col(d) = dmap_ * m.col(d - 1);
    }
    return m;
}

ConversionMatrix conversion_matrix(const Matrix& left_wronskian,
                                   const Matrix& right_wronskian,
                                   double rcond_warn_threshold) {
    const Matrix& m0 = left_wronskian;
    const Matrix& m1 = right_wronskian;
    const int dim = static_cast<int>(m0.rows());
    const int p = dim - 1;
    if (m0.cols() < dim || m1.rows() != dim || m1.cols() < dim) {
        throw DimensionMismatch("Wronskian matrices must be (p+1) x (p+1)");
    }

    ConversionMatrix result;
    result.entries = Matrix::Zero(dim, dim);
    Matrix a(dim, dim);
    Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(dim);
    e(0) = 1.0;

    // Last row: B_p interpolates 1 at x1, vanishing derivatives 0..p-1 at x0.
    a.col(0) = m1.col(0);
    a.rightCols(p) = m0.leftCols(p);
    result.entries.row(p) = solve_row(a, e, rcond_warn_threshold, "conversion: last row",
                                      result.warnings);

    Eigen::RowVectorXd s = Eigen::RowVectorXd::Zero(dim);
    for (int i = 2; i <= p; ++i) {
        s += result.entries.row(p - i + 2);
        Eigen::RowVectorXd c = Eigen::RowVectorXd::Zero(dim);
        c(i - 1) = -(s * m1.col(i - 1))(0);
        a.leftCols(i) = m1.leftCols(i);
        a.rightCols(p - i + 1) = m0.leftCols(p - i + 1);
        result.entries.row(p - i + 1) =
            solve_row(a, c, rcond_warn_threshold, "conversion: middle row", result.warnings);
    }

    a.col(0) = m0.col(0);
    a.rightCols(p) = m1.leftCols(p);
    result.entries.row(0) = solve_row(a, e, rcond_warn_threshold, "conversion: first row",
                                      result.warnings);
    result.condition_flag = !result.warnings.empty();
    return result;
}

TchebPatch::TchebPatch(RootSpec spec)
    : LocalPatch(PatchKind::tcheb, spec.x0, spec.x1, spec.degree + 1),
      fundamental_(std::move(spec)) {
    const int p = degree();
    wronskian_left_ = fundamental_.wronskian_at(Endpoint::left, p);
    wronskian_right_ = fundamental_.wronskian_at(Endpoint::right, p);
    ConversionMatrix conv = conversion_matrix(wronskian_left_, wronskian_right_);
    conversion_ = std::move(conv.entries);
    warnings_ = std::move(conv.warnings);
}

TchebPatch::TchebPatch(std::vector<Root> roots, double x0, double x1)
    : TchebPatch(validate_root_spec(std::move(roots), x0, x1)) {}

EvalStack TchebPatch::eval_impl(std::span<const double> points, int max_deriv,
                                Exec exec) const {
    EvalStack stack = fundamental_.eval_all(points, max_deriv, exec);
    for (Matrix& level : stack) {
        level = conversion_ * level;
    }
    return stack;
}

Matrix TchebPatch::diffend_impl(Endpoint end, int max_deriv) const {
    const Matrix& base = end == Endpoint::left ? wronskian_left_ : wronskian_right_;
    Matrix m(dimension(), max_deriv + 1);
    const int cached = static_cast<int>(base.cols());
    m.leftCols(std::min(cached, max_deriv + 1)) = base.leftCols(std::min(cached, max_deriv + 1));
    for (int d = cached; d <= max_deriv; ++d) {
        m.col(d) = fundamental_.derivative_map() * m.col(d - 1);
    }
    return conversion_ * m;
}

} // namespace mdtb
