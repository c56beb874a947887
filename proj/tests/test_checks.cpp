#include "mdtb/checks.hpp"

#include "mdtb/ect_space.hpp"
#include "mdtb/extraction.hpp"
#include "mdtb/reproduce.hpp"
#include "mdtb/special_spaces.hpp"

#include <doctest.h>

#include <memory>
#include <vector>

using namespace mdtb;

namespace {

PatchFamily gtrig_family(int p) {
    return [p](double x0, double x1) -> PatchPtr {
        return std::make_shared<GenPolyPatch>(PatchKind::gtrig, 1.0, p, x0, x1);
    };
}

std::vector<double> length_grid(double step, double max) {
    std::vector<double> g;
    for (double l = step; l <= max + 1e-12; l += step) {
        g.push_back(l);
    }
    return g;
}

} // namespace

TEST_CASE("partition-of-unity report for a clean patch") {
    const PolyPatch patch(4, 0.0, 1.0);
    const CheckReport report = check_partition_of_unity(patch);
    CHECK(report.max_pou_deviation < 1e-12);
    CHECK(report.min_basis_value >= 0.0);
    CHECK(report.clean());
}

TEST_CASE("partition-of-unity report flags an ill-conditioned space") {
    const TchebPatch patch(clustered_root_spec(10));
    const CheckReport report = check_partition_of_unity(patch);
    CHECK(report.max_pou_deviation > 1e-4);
    CHECK(report.max_pou_deviation < 1.0);
    CHECK_FALSE(report.clean());
}

TEST_CASE("partition-of-unity report for a multi-degree space") {
    const MDTSpaceSpec spec = showcase_space();
    const ExtractionMatrix h = extraction(spec);
    const CheckReport report = check_partition_of_unity(spec, h);
    CHECK(report.max_pou_deviation < 1e-8);
    CHECK(report.min_basis_value > -1e-8);
    CHECK(report.h_column_sum_deviation < 1e-10);
}

TEST_CASE("critical-length scan of the degree-2 trigonometric space") {
    const CriticalLengthEstimate est =
        critical_length_autoscan(gtrig_family(2), 3.5, 0.1);
    REQUIRE(est.estimate.has_value());
    CHECK(*est.estimate == doctest::Approx(3.141).epsilon(0.01));
    CHECK(est.reliable);
}

TEST_CASE("scan estimate is a member of the scanned grid") {
    const std::vector<double> grid = length_grid(0.25, 3.5);
    const CriticalLengthEstimate est = critical_length_scan(gtrig_family(2), grid);
    REQUIRE(est.estimate.has_value());
    bool member = false;
    for (double l : grid) {
        if (l == *est.estimate) member = true;
    }
    CHECK(member);
}

TEST_CASE("coarsening the grid never raises the estimate") {
    const CriticalLengthEstimate coarse =
        critical_length_scan(gtrig_family(2), length_grid(1.0, 4.0));
    const CriticalLengthEstimate fine =
        critical_length_scan(gtrig_family(2), length_grid(0.25, 4.0));
    REQUIRE(coarse.estimate.has_value());
    REQUIRE(fine.estimate.has_value());
    CHECK(*coarse.estimate <= *fine.estimate + 1e-12);
}

TEST_CASE("no negativity within the scanned range saturates at the last length") {
    const CriticalLengthEstimate est =
        critical_length_scan(gtrig_family(2), length_grid(0.5, 2.0));
    REQUIRE(est.estimate.has_value());
    CHECK(*est.estimate == doctest::Approx(2.0));
}

TEST_CASE("single-interval spline scan reduces to the plain scan") {
    const std::vector<double> grid = length_grid(0.25, 3.5);
    const CriticalLengthEstimate plain = critical_length_scan(gtrig_family(2), grid);
    const CriticalLengthEstimate spline =
        critical_length_scan_mdtb(gtrig_family(2), 1, 0, grid);
    REQUIRE(plain.estimate.has_value());
    REQUIRE(spline.estimate.has_value());
    CHECK(*plain.estimate == *spline.estimate);
}
