#include "mdtb/ect_space.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace mdtb;

namespace {

std::vector<double> grid(double a, double b, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        g[static_cast<size_t>(k)] = a + (b - a) * k / (n - 1);
    }
    return g;
}

} // namespace

TEST_CASE("fundamental Taylor basis at the anchor") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 3}}, 0.0, 1.0));
    const EvalStack stack = fb.eval_all(std::vector<double>{0.0}, 0);
    CHECK(stack[0](0, 0) == doctest::Approx(1.0));
    CHECK(stack[0](1, 0) == doctest::Approx(0.0));
    CHECK(stack[0](2, 0) == doctest::Approx(0.0));
}

TEST_CASE("exponential derivative via the recurrence") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 1}, {2.0, 0.0, 1}}, 0.0, 1.0));
    const EvalStack stack = fb.eval_all(std::vector<double>{1.0}, 1);
    // function index 1 is e^{2x}; D e^{2x} at 1 is 2 e^2
    CHECK(stack[0](1, 0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(stack[1](1, 0) == doctest::Approx(2.0 * std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("trigonometric derivatives at the anchor") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 1}, {0.0, 1.0, 1}}, 0.0, 2.0));
    const EvalStack stack = fb.eval_all(std::vector<double>{0.0}, 1);
    // indices 1, 2 are cos, sin; (D cos, D sin) at the anchor is (0, beta)
    CHECK(stack[1](1, 0) == doctest::Approx(0.0));
    CHECK(stack[1](2, 0) == doctest::Approx(1.0));
}

TEST_CASE("point outside the interval is rejected") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 3}}, 0.0, 1.0));
    CHECK_THROWS_AS(fb.eval_all(std::vector<double>{1.5}, 0), PointOutOfInterval);
}

TEST_CASE("polynomial Wronskian at the left end is the identity") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 3}}, 0.0, 1.0));
    const Matrix m = fb.wronskian_at(Endpoint::left, 2);
    CHECK((m - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("linear Taylor Wronskian at the right end") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 2}}, 0.0, 2.0));
    const Matrix m = fb.wronskian_at(Endpoint::right, 1);
    CHECK(m(0, 0) == doctest::Approx(1.0));
    CHECK(m(0, 1) == doctest::Approx(0.0));
    CHECK(m(1, 0) == doctest::Approx(2.0));
    CHECK(m(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("exponential Wronskian value column") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 1}, {1.0, 0.0, 1}}, 0.0, 1.0));
    const Matrix m = fb.wronskian_at(Endpoint::right, 1);
    CHECK(m(0, 0) == doctest::Approx(1.0));
    CHECK(m(1, 0) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("conversion matrix of linear polynomials") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 2}}, 0.0, 1.0));
    const ConversionMatrix c = conversion_matrix(fb.wronskian_at(Endpoint::left, 1),
                                                 fb.wronskian_at(Endpoint::right, 1));
    Matrix expected(2, 2);
    expected << 1, -1, 0, 1;
    CHECK((c.entries - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_FALSE(c.condition_flag);
}

TEST_CASE("conversion matrix of quadratic polynomials") {
    const FundamentalBasis fb(validate_root_spec({{0.0, 0.0, 3}}, 0.0, 1.0));
    const ConversionMatrix c = conversion_matrix(fb.wronskian_at(Endpoint::left, 2),
                                                 fb.wronskian_at(Endpoint::right, 2));
    // against the Taylor basis (1, x, x^2/2)
    Matrix expected(3, 3);
    expected << 1, -2, 2, 0, 2, -4, 0, 0, 2;
    CHECK((c.entries - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("quadratic Bernstein values through the generic patch") {
    const TchebPatch patch(validate_root_spec({{0.0, 0.0, 3}}, 0.0, 1.0));
    const EvalStack stack = patch.eval_all(std::vector<double>{0.5}, 0);
    CHECK(stack[0](0, 0) == doctest::Approx(0.25));
    CHECK(stack[0](1, 0) == doctest::Approx(0.5));
    CHECK(stack[0](2, 0) == doctest::Approx(0.25));
}

TEST_CASE("end-point interpolation of a mixed degree-6 space") {
    const TchebPatch patch(
        std::vector<Root>{{0.0, 0.0, 3}, {1.0, 0.0, 1}, {-1.0, 0.0, 1}, {0.0, 2.0, 1}}, 3.0,
        4.0);
    const EvalStack left = patch.eval_all(std::vector<double>{3.0}, 0);
    const EvalStack right = patch.eval_all(std::vector<double>{4.0}, 0);
    CHECK(left[0](0, 0) == doctest::Approx(1.0));
    CHECK(left[0].col(0).tail(6).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(right[0](6, 0) == doctest::Approx(1.0));
    CHECK(right[0].col(0).head(6).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("end-point derivative matrices") {
    const TchebPatch patch(validate_root_spec({{0.0, 0.0, 3}}, 0.0, 1.0));
    const Matrix left = patch.diffend_all(Endpoint::left, 1);
    const Matrix right = patch.diffend_all(Endpoint::right, 0);
    CHECK(left(0, 0) == doctest::Approx(1.0));
    CHECK(left(1, 0) == doctest::Approx(0.0));
    CHECK(left(2, 0) == doctest::Approx(0.0));
    CHECK(left(0, 1) == doctest::Approx(-2.0));
    CHECK(left(1, 1) == doctest::Approx(2.0));
    CHECK(left(2, 1) == doctest::Approx(0.0));
    CHECK(right(2, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(patch.diffend_all(Endpoint::left, 3), DerivOrderTooHigh);
    // the extended variant keeps going (polynomial derivatives vanish)
    const Matrix ext = patch.diffend_extended(Endpoint::left, 4);
    CHECK(ext.col(3).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(ext.col(4).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("partition of unity and non-negativity on sample spaces") {
    const std::vector<TchebPatch> patches = {
        TchebPatch(validate_root_spec({{0.0, 0.0, 4}}, 0.0, 1.0)),
        TchebPatch(validate_root_spec({{0.0, 0.0, 2}, {1.5, 0.0, 1}, {-1.5, 0.0, 1}}, 0.0,
                                      1.0)),
        TchebPatch(validate_root_spec({{0.0, 0.0, 3}, {0.0, 1.0, 1}}, 2.0, 3.0)),
    };
    for (const TchebPatch& patch : patches) {
        const std::vector<double> g = grid(patch.x0(), patch.x1(), 501);
        const EvalStack stack = patch.eval_all(g, 0);
        CHECK((stack[0].colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-8);
        CHECK(stack[0].minCoeff() > -1e-8);
    }
}

TEST_CASE("end-point triangularity") {
    const TchebPatch patch(
        validate_root_spec({{0.0, 0.0, 2}, {1.0, 0.0, 1}, {0.0, 1.0, 1}}, 0.0, 1.0));
    const int p = patch.degree();
    const Matrix left = patch.diffend_all(Endpoint::left, p);
    const Matrix right = patch.diffend_all(Endpoint::right, p);
    const double scale = std::max(left.cwiseAbs().maxCoeff(), right.cwiseAbs().maxCoeff());
    for (int j = 0; j <= p; ++j) {
        for (int k = 0; k < j; ++k) {
            CHECK(std::abs(left(j, k)) < 1e-8 * scale);
        }
        for (int k = 0; k < p - j; ++k) {
            CHECK(std::abs(right(j, k)) < 1e-8 * scale);
        }
    }
}

TEST_CASE("conversion matrix is translation invariant") {
    const std::vector<Root> roots = {{0.0, 0.0, 2}, {1.0, 0.0, 1}, {0.0, 2.0, 1}};
    const TchebPatch a(roots, 0.0, 1.5);
    const TchebPatch b(roots, 10.0, 11.5);
    CHECK((a.conversion() - b.conversion()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("analytic derivatives agree with finite differences") {
    const TchebPatch patch(
        validate_root_spec({{0.0, 0.0, 2}, {0.0, 1.5, 1}}, 0.0, 2.0));
    const double h = 1e-5 * patch.length();
    for (double x : {0.3, 0.9, 1.6}) {
        const EvalStack at = patch.eval_all(std::vector<double>{x}, 1);
        const EvalStack lo = patch.eval_all(std::vector<double>{x - h}, 0);
        const EvalStack hi = patch.eval_all(std::vector<double>{x + h}, 0);
        const Matrix fd = (hi[0] - lo[0]) / (2.0 * h);
        CHECK((at[1] - fd).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("serial and parallel evaluation agree exactly") {
    const TchebPatch patch(
        validate_root_spec({{0.0, 0.0, 3}, {2.0, 0.0, 1}, {0.0, 1.0, 1}}, 0.0, 1.0));
    const std::vector<double> g = grid(0.0, 1.0, 257);
    const EvalStack serial = patch.eval_all(g, 2, Exec::serial);
    const EvalStack parallel = patch.eval_all(g, 2, Exec::parallel);
    for (size_t d = 0; d < serial.size(); ++d) {
        CHECK((serial[d] - parallel[d]).cwiseAbs().maxCoeff() == 0.0);
    }
}
