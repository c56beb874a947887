#include "mdtb/local_patch.hpp"

#include "mdtb/parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace mdtb {

double warn_rcond_threshold() {
    if (const char* env = std::getenv("TCHEB_WARN_RCOND")) {
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end != env && value > 0.0) {
            return value;
        }
    }
    return 1e3 * std::numeric_limits<double>::epsilon();
}

const char* to_string(PatchKind kind) {
    switch (kind) {
    case PatchKind::poly: return "poly";
    case PatchKind::bspline: return "bspline";
    case PatchKind::pexp: return "pexp";
    case PatchKind::ptrig: return "ptrig";
    case PatchKind::gexp: return "gexp";
    case PatchKind::gtrig: return "gtrig";
    case PatchKind::tcheb: return "tcheb";
    case PatchKind::multi: return "multi";
    }
    return "?";
}

LocalPatch::LocalPatch(PatchKind kind, double x0, double x1, int dim)
    : kind_(kind), x0_(x0), x1_(x1), dim_(dim) {
    if (!(x0 < x1)) {
        throw EmptyInterval("patch interval is empty: x1 <= x0");
    }
    if (dim < 1) {
        throw DegreeTooSmall("patch dimension must be positive");
    }
}

void LocalPatch::check_points(std::span<const double> points) const {
    const double slack = 16.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::abs(x0_), std::abs(x1_), length()});
    for (double x : points) {
        if (!(x >= x0_ - slack && x <= x1_ + slack)) {
            throw PointOutOfInterval("evaluation point outside patch interval");
        }
    }
}

EvalStack LocalPatch::eval_all(std::span<const double> points, int max_deriv,
                               Exec exec) const {
    check_points(points);
    if (max_deriv < 0) {
        max_deriv = 0;
    }
    return eval_impl(points, max_deriv, exec);
}

Matrix LocalPatch::diffend_all(Endpoint end, int max_deriv) const {
    if (max_deriv > degree()) {
        throw DerivOrderTooHigh("end-point derivative order exceeds patch degree");
    }
    return diffend_extended(end, max_deriv);
}

Matrix LocalPatch::diffend_extended(Endpoint end, int max_deriv) const {
    return diffend_impl(end, std::max(max_deriv, 0));
}

Matrix LocalPatch::diffend_impl(Endpoint end, int max_deriv) const {
    const double x = end == Endpoint::left ? x0_ : x1_;
    const double pt[1] = {x};
    const EvalStack stack = eval_impl(std::span<const double>(pt, 1), max_deriv, Exec::serial);
    Matrix result(dim_, max_deriv + 1);
    for (int d = 0; d <= max_deriv; ++d) {
        result.col(d) = stack[static_cast<size_t>(d)].col(0);
    }
    return result;
}

BernsteinFunction::BernsteinFunction(PatchPtr p, Vector coeffs)
    : patch(std::move(p)), coefficients(std::move(coeffs)) {
    if (coefficients.size() != patch->dimension()) {
        throw DimensionMismatch("coefficient length must equal patch dimension");
    }
}

EvalStack BernsteinFunction::eval(std::span<const double> points, int max_deriv,
                                  Exec exec) const {
    const EvalStack basis = patch->eval_all(points, max_deriv, exec);
    EvalStack result;
    result.reserve(basis.size());
    for (const Matrix& level : basis) {
        result.push_back(coefficients.transpose() * level);
    }
    return result;
}

BasisSample sample_basis(const LocalPatch& patch, int grid_size, int max_deriv, Exec exec) {
    if (grid_size < 2) {
        throw InvalidSpec("sample grid must have at least 2 points");
    }
    BasisSample sample;
    sample.points.resize(static_cast<size_t>(grid_size));
    const double h = patch.length() / (grid_size - 1);
    for (int k = 0; k < grid_size; ++k) {
        sample.points[static_cast<size_t>(k)] =
            k == grid_size - 1 ? patch.x1() : patch.x0() + k * h;
    }
    sample.values = patch.eval_all(sample.points, max_deriv, exec);

    const std::vector<double> breaks = patch.breaks();
    sample.interval_index.resize(sample.points.size());
    for (size_t k = 0; k < sample.points.size(); ++k) {
        const double x = sample.points[k];
        int idx = 0;
        while (idx + 2 < static_cast<int>(breaks.size()) &&
               x >= breaks[static_cast<size_t>(idx) + 1]) {
            ++idx;
        }
        sample.interval_index[k] = idx;
    }
    return sample;
}

} // namespace mdtb
