// Acceptance gate: one pass/fail line per criterion, non-zero exit on failure.

#include "mdtb/checks.hpp"
#include "mdtb/ect_space.hpp"
#include "mdtb/extraction.hpp"
#include "mdtb/multi_patch.hpp"
#include "mdtb/reproduce.hpp"
#include "mdtb/special_spaces.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mdtb;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  (%s)\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) {
        ++g_failures;
    }
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> uniform_grid(double a, double b, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        g[static_cast<size_t>(k)] = k == n - 1 ? b : a + (b - a) * k / (n - 1);
    }
    return g;
}

double max_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// --- 1: uniform-degree polynomial spaces against the Cox-de Boor recurrence

void criterion_1(std::mt19937& rng) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> pdist(1, 5);
        std::uniform_int_distribution<int> mdist(1, 6);
        std::uniform_real_distribution<double> hdist(0.3, 1.7);
        const int p = pdist(rng);
        const int m = mdist(rng);

        MDTSpaceSpec spec;
        spec.breaks.push_back(0.0);
        for (int i = 0; i < m; ++i) {
            spec.breaks.push_back(spec.breaks.back() + hdist(rng));
        }
        spec.smoothness.assign(static_cast<size_t>(m) + 1, -1);
        std::vector<int> interior;
        for (int i = 1; i < m; ++i) {
            std::uniform_int_distribution<int> rdist(0, p - 1);
            const int r = p == 1 ? 0 : rdist(rng);
            spec.smoothness[static_cast<size_t>(i)] = r;
            interior.push_back(r);
        }
        for (int i = 0; i < m; ++i) {
            spec.patches.push_back(std::make_shared<PolyPatch>(
                p, spec.breaks[static_cast<size_t>(i)],
                spec.breaks[static_cast<size_t>(i) + 1]));
        }
        spec = validate_space(std::move(spec));
        const ExtractionMatrix h = extraction(spec);

        const BSplinePatch oracle(p, spec.breaks, interior);
        std::vector<double> points;
        for (int i = 0; i < m; ++i) {
            const auto local = uniform_grid(spec.breaks[static_cast<size_t>(i)],
                                            spec.breaks[static_cast<size_t>(i) + 1], 101);
            points.insert(points.end(), local.begin(), local.end());
        }
        const EvalStack ours = mdtb_eval_all(spec, h, points, 0);
        const EvalStack theirs = oracle.eval_all(points, 0);
        worst = std::max(worst, max_diff(ours[0], theirs[0]));
    }
    const double dt = seconds_since(t0);
    report(1, worst < 1e-9 && dt < 5.0,
           "max error vs Cox-de Boor " + fmt(worst) + ", " + fmt(dt) + " s");
}

// --- 2: partition of unity and non-negativity of the mixed showcase space

void criterion_2() {
    const auto t0 = Clock::now();
    const MDTSpaceSpec spec = showcase_space();
    const ExtractionMatrix h = extraction(spec);
    const CheckReport rep = check_partition_of_unity(spec, h, 501);
    const double dt = seconds_since(t0);
    const bool pass = rep.max_pou_deviation <= 1e-8 && rep.min_basis_value >= -1e-8 &&
                      rep.h_column_sum_deviation <= 1e-10 && dt < 1.0;
    report(2, pass,
           "pou " + fmt(rep.max_pou_deviation) + ", min " + fmt(rep.min_basis_value) +
               ", colsum " + fmt(rep.h_column_sum_deviation) + ", " + fmt(dt) + " s");
}

// --- 3: known instability magnitudes and the stable specialized path

void criterion_3() {
    const auto t0 = Clock::now();
    const TchebPatch w9(clustered_root_spec(9));
    const TchebPatch w10(clustered_root_spec(10));
    const CheckReport r9 = check_partition_of_unity(w9, 501);
    const CheckReport r10 = check_partition_of_unity(w10, 501);
    const GenPolyPatch gt10(PatchKind::gtrig, 1.0 / 3.0, 10, 0.0, 1.0);
    const CheckReport rg = check_partition_of_unity(gt10, 501);
    const double dt = seconds_since(t0);
    const bool pass = r9.max_pou_deviation >= 1e-6 && r9.max_pou_deviation <= 1e-2 &&
                      r10.max_pou_deviation >= 1e-4 && r10.max_pou_deviation <= 1.0 &&
                      !r10.warnings.empty() && rg.max_pou_deviation <= 5e-10 && dt < 2.0;
    report(3, pass,
           "dev p=9 " + fmt(r9.max_pou_deviation) + ", p=10 " + fmt(r10.max_pou_deviation) +
               " (" + std::to_string(r10.warnings.size()) + " warnings), specialized " +
               fmt(rg.max_pou_deviation) + ", " + fmt(dt) + " s");
}

// --- 4: critical lengths of the generalized trigonometric family

void criterion_4() {
    const auto t0 = Clock::now();
    const double expected[9] = {3.141, 6.283, 6.283, 8.986, 8.986,
                                11.526, 11.526, 13.975, 13.975};
    bool pass = true;
    std::string detail;
    for (int p = 2; p <= 10; ++p) {
        const PatchFamily family = [p](double x0, double x1) -> PatchPtr {
            return std::make_shared<GenPolyPatch>(PatchKind::gtrig, 1.0, p, x0, x1);
        };
        const CriticalLengthEstimate est = critical_length_autoscan(family, 14.5, 0.1);
        const double want = expected[p - 2];
        const bool ok = est.estimate && std::abs(*est.estimate - want) <= 0.01;
        pass = pass && ok;
        if (!ok) {
            detail += " p=" + std::to_string(p) + " got " +
                      (est.estimate ? fmt(*est.estimate) : std::string("none"));
        }
    }
    const PatchFamily mixed = [](double x0, double x1) -> PatchPtr {
        return std::make_shared<TchebPatch>(
            std::vector<Root>{{0.0, 0.0, 1}, {0.0, 1.0, 1}, {0.0, 2.0, 1}, {0.0, 3.0, 1}},
            x0, x1);
    };
    const CriticalLengthEstimate mest = critical_length_autoscan(mixed, 4.0, 0.5);
    const bool mok = mest.estimate && std::abs(*mest.estimate - 3.141) <= 0.01;
    pass = pass && mok;
    const double dt = seconds_since(t0);
    pass = pass && dt < 60.0;
    report(4, pass,
           "trig family ok" + detail + ", mixed " +
               (mest.estimate ? fmt(*mest.estimate) : std::string("none")) + ", " + fmt(dt) +
               " s");
}

// --- 5: rounded-square curve against its closed form

void criterion_5() {
    double worst = 0.0;
    bool dims_ok = true;
    for (double l : {1.0 / 16.0, 0.25, 1.0, 4.0}) {
        const MDTSpaceSpec spec = rounded_square_space(l);
        dims_ok = dims_ok && dimension_periodic(spec, 1) == 4;
        const ExtractionMatrix h = extraction_periodic(spec, 1);
        const std::vector<double> params = uniform_grid(spec.a(), spec.b(), 200);
        const Matrix curve = curve_eval(spec, h, rounded_square_control_points(), params);
        for (size_t k = 0; k < params.size(); ++k) {
            const Eigen::Vector2d want = rounded_square_point(l, params[k]);
            worst = std::max(worst,
                             (curve.row(static_cast<Eigen::Index>(k)).transpose() - want)
                                 .cwiseAbs()
                                 .maxCoeff());
        }
    }
    report(5, worst < 1e-8 && dims_ok, "max curve error " + fmt(worst) + ", dimension 4");
}

// --- 6: periodic closure of the mixed showcase space

void criterion_6() {
    const MDTSpaceSpec spec = showcase_space();
    const ExtractionMatrix h = extraction(spec);
    const ExtractionMatrix hp = extraction_periodic(spec, 2);
    const std::vector<double> g = uniform_grid(spec.a(), spec.b(), 501);
    const EvalStack full = mdtb_eval_all(spec, h, g, 0);
    const EvalStack per = mdtb_eval_all(spec, hp, g, 0);
    // seam-crossing functions come first; the four interior ones keep their slots
    double interior = 0.0;
    for (int k = 3; k <= 6; ++k) {
        interior = std::max(interior, (full[0].row(k) - per[0].row(k)).cwiseAbs().maxCoeff());
    }
    const Matrix da = mdtb_diffend_at_break(spec, hp, 0, Endpoint::right, 2);
    const Matrix db = mdtb_diffend_at_break(spec, hp, spec.interval_count(), Endpoint::left, 2);
    const double seam = max_diff(da, db);
    report(6, interior < 1e-10 && seam < 1e-8,
           "interior functions " + fmt(interior) + ", seam derivatives " + fmt(seam));
}

// --- 7: smoothness and super-smoothness of random mixed spaces

PatchPtr random_mixed_patch(std::mt19937& rng, double x0, double x1) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> shape(0.5, 2.0);
    switch (kind(rng)) {
    case 0: {
        std::uniform_int_distribution<int> pd(1, 6);
        return std::make_shared<PolyPatch>(pd(rng), x0, x1);
    }
    case 1: {
        std::uniform_int_distribution<int> pd(2, 6);
        return std::make_shared<GenPolyPatch>(PatchKind::gexp, shape(rng), pd(rng), x0, x1);
    }
    case 2: {
        std::uniform_int_distribution<int> pd(2, 6);
        return std::make_shared<GenPolyPatch>(PatchKind::gtrig, shape(rng), pd(rng), x0, x1);
    }
    default: {
        std::uniform_int_distribution<int> qd(1, 3);
        return std::make_shared<PTypePatch>(PatchKind::ptrig, shape(rng), 2 * qd(rng), x0,
                                            x1);
    }
    }
}

void criterion_7(std::mt19937& rng) {
    double worst_smooth = 0.0;
    double worst_super = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> mdist(2, 4);
        std::uniform_real_distribution<double> hdist(0.4, 1.2);
        const int m = mdist(rng);
        MDTSpaceSpec spec;
        spec.breaks.push_back(0.0);
        for (int i = 0; i < m; ++i) {
            spec.breaks.push_back(spec.breaks.back() + hdist(rng));
        }
        for (int i = 0; i < m; ++i) {
            spec.patches.push_back(random_mixed_patch(rng, spec.breaks[static_cast<size_t>(i)],
                                                      spec.breaks[static_cast<size_t>(i) + 1]));
        }
        spec.smoothness.assign(static_cast<size_t>(m) + 1, -1);
        for (int i = 1; i < m; ++i) {
            const int cap = std::min(spec.local_degree(i - 1), spec.local_degree(i));
            std::uniform_int_distribution<int> rdist(0, std::max(0, cap - 1));
            spec.smoothness[static_cast<size_t>(i)] = rdist(rng);
        }
        spec = validate_space(std::move(spec));
        const ExtractionMatrix h = extraction(spec);
        const KnotVectors kv = knot_vectors(spec);

        for (int i = 1; i < m; ++i) {
            const int r = spec.smoothness[static_cast<size_t>(i)];
            const double x = spec.breaks[static_cast<size_t>(i)];
            const Matrix left = mdtb_diffend_at_break(spec, h, i, Endpoint::left, r + 1);
            const Matrix right = mdtb_diffend_at_break(spec, h, i, Endpoint::right, r + 1);
            // prescribed smoothness: all functions, all orders up to r
            for (int d = 0; d <= r; ++d) {
                const double scale = std::max(1.0, left.col(d).cwiseAbs().maxCoeff());
                worst_smooth = std::max(
                    worst_smooth, (left.col(d) - right.col(d)).cwiseAbs().maxCoeff() / scale);
            }
            // super-smoothness: only the support window may jump at order r + 1
            int mu_v = 0;
            int mu_u = 0;
            for (double v : kv.v) {
                if (v <= x + 1e-12) ++mu_v;
            }
            for (double u : kv.u) {
                if (u < x - 1e-12) ++mu_u;
            }
            const double scale =
                std::max(1.0, std::max(left.col(r + 1).cwiseAbs().maxCoeff(),
                                       right.col(r + 1).cwiseAbs().maxCoeff()));
            for (int k = 0; k < dimension(spec); ++k) {
                const bool in_window = k >= mu_v - 1 && k <= mu_u;
                if (!in_window) {
                    worst_super = std::max(
                        worst_super,
                        std::abs(left(k, r + 1) - right(k, r + 1)) / scale);
                }
            }
        }
    }
    report(7, worst_smooth < 1e-6 && worst_super < 1e-6,
           "smoothness jump " + fmt(worst_smooth) + ", outside-window jump " +
               fmt(worst_super));
}

// --- 8: specialized implementations against the generic root-spec pathway

void criterion_8() {
    struct Pair {
        PatchPtr special;
        PatchPtr generic;
    };
    std::vector<Pair> pairs;
    pairs.push_back({std::make_shared<PolyPatch>(5, 0.0, 1.0),
                     std::make_shared<TchebPatch>(std::vector<Root>{{0.0, 0.0, 6}}, 0.0,
                                                  1.0)});
    pairs.push_back(
        {std::make_shared<PTypePatch>(PatchKind::pexp, 2.0, 6, 0.0, 1.0),
         std::make_shared<TchebPatch>(
             std::vector<Root>{{0.0, 0.0, 1}, {2.0, 0.0, 1}, {-2.0, 0.0, 1},
                               {4.0, 0.0, 1}, {-4.0, 0.0, 1}, {6.0, 0.0, 1},
                               {-6.0, 0.0, 1}},
             0.0, 1.0)});
    pairs.push_back({std::make_shared<PTypePatch>(PatchKind::ptrig, 1.5, 6, 0.0, 1.0),
                     std::make_shared<TchebPatch>(
                         std::vector<Root>{{0.0, 0.0, 1}, {0.0, 1.5, 1}, {0.0, 3.0, 1},
                                           {0.0, 4.5, 1}},
                         0.0, 1.0)});
    pairs.push_back(
        {std::make_shared<GenPolyPatch>(PatchKind::gexp, 3.0, 8, 0.0, 1.0),
         std::make_shared<TchebPatch>(
             std::vector<Root>{{0.0, 0.0, 7}, {3.0, 0.0, 1}, {-3.0, 0.0, 1}}, 0.0, 1.0)});
    pairs.push_back({std::make_shared<GenPolyPatch>(PatchKind::gtrig, 2.5, 7, 0.0, 1.0),
                     std::make_shared<TchebPatch>(
                         std::vector<Root>{{0.0, 0.0, 6}, {0.0, 2.5, 1}}, 0.0, 1.0)});

    const std::vector<double> g = uniform_grid(0.0, 1.0, 101);
    double worst = 0.0;
    for (const Pair& pair : pairs) {
        const int p = pair.special->degree();
        const EvalStack a = pair.special->eval_all(g, p);
        const EvalStack b = pair.generic->eval_all(g, p);
        for (int d = 0; d <= p; ++d) {
            const double scale =
                std::max(1.0, b[static_cast<size_t>(d)].cwiseAbs().maxCoeff());
            worst = std::max(worst,
                             max_diff(a[static_cast<size_t>(d)], b[static_cast<size_t>(d)]) /
                                 scale);
        }
    }
    report(8, worst < 1e-7, "max relative deviation " + fmt(worst));
}

} // namespace

int main() {
    std::mt19937 rng(20240811u);
    criterion_1(rng);
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(rng);
    criterion_8();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
