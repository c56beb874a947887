#include "mdtb/special_spaces.hpp"

#include "mdtb/ect_space.hpp"
#include "mdtb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mdtb {

namespace {

// Classical Bernstein values of degree q at s in [0, 1].
Vector bernstein_values(int q, double s) {
    Vector b = Vector::Zero(q + 1);
    b[0] = 1.0;
    const double s1 = 1.0 - s;
    for (int k = 1; k <= q; ++k) {
        b[k] = s * b[k - 1];
        for (int j = k - 1; j > 0; --j) {
            b[j] = s1 * b[j] + s * b[j - 1];
        }
        b[0] *= s1;
    }
    return b;
}

} // namespace

PolyPatch::PolyPatch(int p, double x0, double x1)
    : LocalPatch(PatchKind::poly, x0, x1, p + 1) {}

EvalStack PolyPatch::eval_impl(std::span<const double> points, int max_deriv,
                               Exec exec) const {
    const int p = degree();
    const double h = length();
    const auto npts = static_cast<Eigen::Index>(points.size());
    EvalStack stack(static_cast<size_t>(max_deriv) + 1);
    for (int d = 0; d <= max_deriv; ++d) {
        stack[static_cast<size_t>(d)] = Matrix::Zero(p + 1, npts);
    }
    parallel_for(npts, exec, [&](std::ptrdiff_t k) {
        const double s = (points[static_cast<size_t>(k)] - x0()) / h;
        for (int d = 0; d <= std::min(max_deriv, p); ++d) {
            Vector b = bernstein_values(p - d, s);
            double factor = 1.0;
            // d difference steps raise the length from p - d + 1 to p + 1.
            for (int step = 0; step < d; ++step) {
                const int len = static_cast<int>(b.size());
                Vector next(len + 1);
                next[0] = -b[0];
                for (int j = 1; j < len; ++j) {
                    next[j] = b[j - 1] - b[j];
                }
                next[len] = b[len - 1];
                b.swap(next);
                factor *= (p - step) / h;
            }
            stack[static_cast<size_t>(d)].col(k) = factor * b;
        }
    });
    return stack;
}

namespace {

int bspline_dimension(int p, const std::vector<double>& breaks,
                      const std::vector<int>& smoothness) {
    if (breaks.size() < 2) {
        throw InvalidSpec("a B-spline patch needs at least two break points");
    }
    if (smoothness.size() + 2 != breaks.size()) {
        throw InvalidSpec("need one smoothness value per interior break");
    }
    int n = p + 1;
    for (int r : smoothness) {
        if (r < 0 || r > p) {
            throw InvalidSpec("interior smoothness must be in [0, p]");
        }
        n += p - r;
    }
    return n;
}

} // namespace

BSplinePatch::BSplinePatch(int p, std::vector<double> breaks, std::vector<int> smoothness)
    : LocalPatch(PatchKind::bspline, breaks.empty() ? 0.0 : breaks.front(),
                 breaks.empty() ? 1.0 : breaks.back(),
                 bspline_dimension(p, breaks, smoothness)),
      p_(p), breaks_(std::move(breaks)), smoothness_(std::move(smoothness)) {
    for (size_t i = 0; i + 1 < breaks_.size(); ++i) {
        if (!(breaks_[i] < breaks_[i + 1])) {
            throw InvalidSpec("break points must be strictly increasing");
        }
    }
    knots_.assign(static_cast<size_t>(p_) + 1, breaks_.front());
    for (size_t i = 1; i + 1 < breaks_.size(); ++i) {
        knots_.insert(knots_.end(), static_cast<size_t>(p_ - smoothness_[i - 1]), breaks_[i]);
    }
    knots_.insert(knots_.end(), static_cast<size_t>(p_) + 1, breaks_.back());
}

int BSplinePatch::find_span(double x) const {
    const int n = dimension();
    if (x >= knots_[static_cast<size_t>(n)]) {
        return n - 1; // right end is a left limit
    }
    int lo = p_;
    int hi = n;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (x < knots_[static_cast<size_t>(mid)] ? hi : lo) = mid;
    }
    return lo;
}

EvalStack BSplinePatch::eval_impl(std::span<const double> points, int max_deriv,
                                  Exec exec) const {
    const int n = dimension();
    const int nfun0 = static_cast<int>(knots_.size()) - 1; // degree-0 functions
    const auto npts = static_cast<Eigen::Index>(points.size());
    EvalStack stack(static_cast<size_t>(max_deriv) + 1);
    for (int d = 0; d <= max_deriv; ++d) {
        stack[static_cast<size_t>(d)] = Matrix::Zero(n, npts);
    }
    parallel_for(npts, exec, [&](std::ptrdiff_t k) {
        const double x = points[static_cast<size_t>(k)];
        // table[d][q]: d-th derivative of all degree-q functions at x.
        std::vector<std::vector<Vector>> table(static_cast<size_t>(max_deriv) + 1);
        auto& values = table[0];
        values.resize(static_cast<size_t>(p_) + 1);
        values[0] = Vector::Zero(nfun0);
        values[0][find_span(x)] = 1.0;
        for (int q = 1; q <= p_; ++q) {
            const int nfun = nfun0 - q;
            values[static_cast<size_t>(q)] = Vector::Zero(nfun);
            for (int j = 0; j < nfun; ++j) {
                const double d1 = knots_[static_cast<size_t>(j + q)] - knots_[static_cast<size_t>(j)];
                const double d2 =
                    knots_[static_cast<size_t>(j + q + 1)] - knots_[static_cast<size_t>(j + 1)];
                double v = 0.0;
                if (d1 > 0.0) {
                    v += (x - knots_[static_cast<size_t>(j)]) / d1 *
                         values[static_cast<size_t>(q) - 1][j];
                }
                if (d2 > 0.0) {
                    v += (knots_[static_cast<size_t>(j + q + 1)] - x) / d2 *
                         values[static_cast<size_t>(q) - 1][j + 1];
                }
                values[static_cast<size_t>(q)][j] = v;
            }
        }
        for (int d = 1; d <= max_deriv && d <= p_; ++d) {
            auto& level = table[static_cast<size_t>(d)];
            level.resize(static_cast<size_t>(p_) + 1);
            for (int q = d; q <= p_; ++q) {
                const int nfun = nfun0 - q;
                const Vector& lower =
                    table[static_cast<size_t>(d) - 1][static_cast<size_t>(q) - 1];
                Vector& out = level[static_cast<size_t>(q)];
                out = Vector::Zero(nfun);
                for (int j = 0; j < nfun; ++j) {
                    const double d1 =
                        knots_[static_cast<size_t>(j + q)] - knots_[static_cast<size_t>(j)];
                    const double d2 =
                        knots_[static_cast<size_t>(j + q + 1)] - knots_[static_cast<size_t>(j + 1)];
                    double v = 0.0;
                    if (d1 > 0.0) {
                        v += lower[j] / d1;
                    }
                    if (d2 > 0.0) {
                        v -= lower[j + 1] / d2;
                    }
                    out[j] = q * v;
                }
            }
        }
        for (int d = 0; d <= max_deriv; ++d) {
            if (d <= p_) {
                stack[static_cast<size_t>(d)].col(k) = table[static_cast<size_t>(d)][static_cast<size_t>(p_)];
            }
        }
    });
    return stack;
}

PTypePatch::PTypePatch(PatchKind kind, double shape, int p, double x0, double x1)
    : LocalPatch(kind, x0, x1, p + 1), shape_(std::abs(shape)) {
    if (kind != PatchKind::pexp && kind != PatchKind::ptrig) {
        throw InvalidSpec("PTypePatch kind must be pexp or ptrig");
    }
    if (p < 2 || p % 2 != 0) {
        throw OddDegree("p-type spaces require an even degree p >= 2");
    }
    if (!(shape_ > 0.0) || !std::isfinite(shape_)) {
        throw InvalidSpec("p-type shape parameter must be non-zero and finite");
    }
    const double h = length();
    if (kind == PatchKind::pexp && shape_ * h * (p / 2) > 700.0) {
        throw ParameterOverflow("exponential shape parameter overflows on this interval");
    }
    if (kind == PatchKind::ptrig && !(shape_ * h < 2.0 * std::numbers::pi)) {
        throw ParameterOverflow("trigonometric p-type space degenerates when shape * length >= 2 pi");
    }

    const double vh = v(h / 2.0);
    s02_ = 1.0 / (vh * vh);
    s22_ = s02_;
    s12_ = 2.0 * u(h / 2.0) / (vh * vh);

    sigma_p_ = Vector::Zero(3);
    sigma_p_ << s02_, s12_, s22_;
    for (int q = 4; q <= p; q += 2) {
        Vector next = Vector::Zero(q + 1);
        for (int j = 0; j <= q; ++j) {
            double s = 0.0;
            if (j >= 2 && j - 2 <= q - 2) s += s22_ * sigma_p_[j - 2];
            if (j >= 1 && j - 1 <= q - 2) s += s12_ * sigma_p_[j - 1];
            if (j <= q - 2) s += s02_ * sigma_p_[j];
            next[j] = s;
        }
        sigma_p_.swap(next);
    }

    const double tau = shape_ / 2.0 * vh;
    const int q = p / 2;
    deriv_op_ = Matrix::Zero(p + 1, p + 1);
    for (int j = 0; j <= p; ++j) {
        if (j > 0) {
            deriv_op_(j, j - 1) = tau * j * s22_ * sigma_p_[j] / sigma_p_[j - 1];
        }
        deriv_op_(j, j) = -tau * (q - j) * s12_;
        if (j < p) {
            deriv_op_(j, j + 1) = -tau * (p - j) * s02_ * sigma_p_[j] / sigma_p_[j + 1];
        }
    }
}

double PTypePatch::u(double t) const {
    return kind() == PatchKind::pexp ? std::cosh(shape_ * t) : std::cos(shape_ * t);
}

double PTypePatch::v(double t) const {
    return kind() == PatchKind::pexp ? std::sinh(shape_ * t) : std::sin(shape_ * t);
}

Vector PTypePatch::values_at(double x) const {
    const double v0 = v((x1() - x) / 2.0);
    const double v1 = v((x - x0()) / 2.0);
    const double b02 = s02_ * v0 * v0;
    const double b12 = s12_ * v0 * v1;
    const double b22 = s22_ * v1 * v1;
    Vector b(3);
    b << b02, b12, b22;
    for (int q = 4; q <= degree(); q += 2) {
        Vector next = Vector::Zero(q + 1);
        for (int j = 0; j <= q; ++j) {
            double s = 0.0;
            if (j >= 2 && j - 2 <= q - 2) s += b22 * b[j - 2];
            if (j >= 1 && j - 1 <= q - 2) s += b12 * b[j - 1];
            if (j <= q - 2) s += b02 * b[j];
            next[j] = s;
        }
        b.swap(next);
    }
    return b;
}

EvalStack PTypePatch::eval_impl(std::span<const double> points, int max_deriv,
                                Exec exec) const {
    const auto npts = static_cast<Eigen::Index>(points.size());
    EvalStack stack(static_cast<size_t>(max_deriv) + 1);
    stack[0].resize(dimension(), npts);
    parallel_for(npts, exec, [&](std::ptrdiff_t k) {
        stack[0].col(k) = values_at(points[static_cast<size_t>(k)]);
    });
    for (int d = 1; d <= max_deriv; ++d) {
        stack[static_cast<size_t>(d)] = deriv_op_ * stack[static_cast<size_t>(d) - 1];
    }
    return stack;
}

Matrix PTypePatch::diffend_impl(Endpoint end, int max_deriv) const {
    Matrix m = Matrix::Zero(dimension(), max_deriv + 1);
    m(end == Endpoint::left ? 0 : degree(), 0) = 1.0;
    for (int d = 1; d <= max_deriv; ++d) {
        m.col(d) = deriv_op_ * m.col(d - 1);
    }
    return m;
}

GenPolyPatch::GenPolyPatch(PatchKind kind, double shape, int p, double x0, double x1)
    : GenPolyPatch(kind, GenPolyParams{p, shape}, x0, x1) {}

GenPolyPatch::GenPolyPatch(PatchKind kind, GenPolyParams params, double x0, double x1)
    : LocalPatch(kind, x0, x1, params.p + 1), params_(params) {
    if (kind != PatchKind::gexp && kind != PatchKind::gtrig) {
        throw InvalidSpec("GenPolyPatch kind must be gexp or gtrig");
    }
    if (params_.p < 2) {
        throw DegreeTooSmall("generalized polynomial spaces require p >= 2");
    }
    if (!std::isfinite(params_.shape)) {
        throw InvalidSpec("shape parameter must be finite");
    }
    params_.shape = std::abs(params_.shape);
    const double h = length();
    if (kind == PatchKind::gexp && params_.shape * h > 700.0) {
        throw ParameterOverflow("exponential shape parameter overflows on this interval");
    }
    taylor_ = params_.shape * h < params_.switch_threshold;

    const int p = params_.p;
    const double s = params_.shape;
    dmap_ = Matrix::Zero(p + 1, p + 1);
    if (taylor_) {
        // phi_i = t^i / i!; the last two are the even/odd Taylor tails.
        for (int i = 1; i <= p - 2; ++i) {
            dmap_(i, i - 1) = 1.0;
        }
        dmap_(p - 1, p - 2) = 1.0;
        dmap_(p - 1, p) = kind == PatchKind::gexp ? s * s : -s * s;
        dmap_(p, p - 1) = 1.0;
    } else {
        // phi_i = s^i t^i / i!; the last two are cosh/sinh or cos/sin of s t.
        for (int i = 1; i <= p - 2; ++i) {
            dmap_(i, i - 1) = s;
        }
        dmap_(p - 1, p) = kind == PatchKind::gexp ? s : -s;
        dmap_(p, p - 1) = s;
    }

    Matrix m0 = wronskian_at(this->x0(), p);
    Matrix m1 = wronskian_at(this->x1(), p);
    if (!taylor_) {
        // Column rescaling balances the entry magnitudes without changing
        // the conversion matrix.
        double scale = 1.0;
        for (int j = 1; j <= p; ++j) {
            scale /= s;
            m0.col(j) *= scale;
            m1.col(j) *= scale;
        }
    }
    ConversionMatrix conv = conversion_matrix(m0, m1);
    conversion_ = std::move(conv.entries);
    warnings_ = std::move(conv.warnings);
}

Vector GenPolyPatch::phi_values(double x) const {
    const int p = params_.p;
    const double s = params_.shape;
    const double t = x - x0();
    Vector phi(p + 1);
    double monomial = 1.0; // (s t)^i / i! or t^i / i!
    const double step = taylor_ ? t : s * t;
    for (int i = 0; i <= p - 2; ++i) {
        phi[i] = monomial;
        monomial *= step / (i + 1);
    }
    if (taylor_) {
        const double sign = kind() == PatchKind::gexp ? 1.0 : -1.0;
        const double eps = std::numeric_limits<double>::epsilon();
        for (int tail = 0; tail < 2; ++tail) {
            const int start = p - 1 + tail;
            double term = 1.0;
            for (int i = 1; i <= start; ++i) {
                term *= t / i;
            }
            double sum = term;
            for (int j = 1; j <= params_.taylor_cap; ++j) {
                term *= sign * s * s * t * t /
                        ((start + 2.0 * j - 1.0) * (start + 2.0 * j));
                sum += term;
                if (std::abs(term) < eps * std::abs(sum)) {
                    break;
                }
            }
            phi[start] = sum;
        }
    } else if (kind() == PatchKind::gexp) {
        phi[p - 1] = std::cosh(s * t);
        phi[p] = std::sinh(s * t);
    } else {
        phi[p - 1] = std::cos(s * t);
        phi[p] = std::sin(s * t);
    }
    return phi;
}

Matrix GenPolyPatch::wronskian_at(double x, int max_deriv) const {
    Matrix m(dimension(), max_deriv + 1);
    m.col(0) = phi_values(x);
    for (int d = 1; d <= max_deriv; ++d) {
        m.col(d) = dmap_ * m.col(d - 1);
    }
    return m;
}

EvalStack GenPolyPatch::eval_impl(std::span<const double> points, int max_deriv,
                                  Exec exec) const {
    const auto npts = static_cast<Eigen::Index>(points.size());
    EvalStack stack(static_cast<size_t>(max_deriv) + 1);
    stack[0].resize(dimension(), npts);
    parallel_for(npts, exec, [&](std::ptrdiff_t k) {
        stack[0].col(k) = phi_values(points[static_cast<size_t>(k)]);
    });
    for (int d = 1; d <= max_deriv; ++d) {
        stack[static_cast<size_t>(d)] = dmap_ * stack[static_cast<size_t>(d) - 1];
    }
    for (Matrix& level : stack) {
        level = conversion_ * level;
    }
    return stack;
}

Matrix GenPolyPatch::diffend_impl(Endpoint end, int max_deriv) const {
    return conversion_ *
           wronskian_at(end == Endpoint::left ? x0() : x1(), max_deriv);
}

} // namespace mdtb
