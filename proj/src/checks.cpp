#include "mdtb/checks.hpp"

#include <algorithm>
#include <cmath>

namespace mdtb {

namespace {

std::vector<double> uniform_grid(double a, double b, int n) {
    std::vector<double> grid(static_cast<size_t>(n));
    const double h = (b - a) / (n - 1);
    for (int k = 0; k < n; ++k) {
        grid[static_cast<size_t>(k)] = k == n - 1 ? b : a + k * h;
    }
    return grid;
}

void fill_pou_stats(const Matrix& values, CheckReport& report) {
    const Vector sums = values.colwise().sum();
    report.max_pou_deviation = (sums.array() - 1.0).abs().maxCoeff();
    report.min_basis_value = values.minCoeff();
}

} // namespace

CheckReport check_partition_of_unity(const LocalPatch& patch, int grid_size, Exec exec) {
    CheckReport report;
    const std::vector<double> grid = uniform_grid(patch.x0(), patch.x1(), grid_size);
    fill_pou_stats(patch.eval_all(grid, 0, exec)[0], report);
    report.warnings = patch.warnings();
    return report;
}

CheckReport check_partition_of_unity(const MDTSpaceSpec& spec, const ExtractionMatrix& h,
                                     int grid_size, Exec exec) {
    CheckReport report;
    const std::vector<double> grid = uniform_grid(spec.a(), spec.b(), grid_size);
    fill_pou_stats(mdtb_eval_all(spec, h, grid, 0, exec)[0], report);
    report.h_column_sum_deviation = (h.column_sums().array() - 1.0).abs().maxCoeff();
    for (const PatchPtr& patch : spec.patches) {
        const auto& w = patch->warnings();
        report.warnings.insert(report.warnings.end(), w.begin(), w.end());
    }
    return report;
}

CriticalLengthEstimate critical_length_scan(const PatchFamily& family,
                                            std::span<const double> len_grid,
                                            double neg_tol, int grid_points, Exec exec) {
    return critical_length_scan_mdtb(family, 1, 0, len_grid, neg_tol, grid_points, exec);
}

CriticalLengthEstimate critical_length_scan_mdtb(const PatchFamily& family, int m, int r,
                                                 std::span<const double> len_grid,
                                                 double neg_tol, int grid_points, Exec exec) {
    CriticalLengthEstimate est;
    est.neg_tol = neg_tol;
    est.grid.assign(len_grid.begin(), len_grid.end());
    for (double len : len_grid) {
        CheckReport report;
        try {
            if (m <= 1) {
                PatchPtr patch = family(0.0, len);
                report = check_partition_of_unity(*patch, grid_points, exec);
            } else {
                MDTSpaceSpec spec;
                spec.breaks.resize(static_cast<size_t>(m) + 1);
                for (int k = 0; k <= m; ++k) {
                    spec.breaks[static_cast<size_t>(k)] = k * len;
                }
                spec.smoothness.assign(static_cast<size_t>(m) + 1, r);
                spec.smoothness.front() = -1;
                spec.smoothness.back() = -1;
                for (int k = 0; k < m; ++k) {
                    spec.patches.push_back(family(k * len, (k + 1) * len));
                }
                spec = validate_space(std::move(spec));
                report = check_partition_of_unity(spec, extraction(spec), grid_points, exec);
            }
        } catch (const Error&) {
            // Construction failure past the critical length ends the scan.
            break;
        }
        if (!report.warnings.empty()) {
            est.warnings.insert(est.warnings.end(), report.warnings.begin(),
                                report.warnings.end());
        }
        if (report.min_basis_value < neg_tol) {
            break;
        }
        est.estimate = len;
        if (!report.warnings.empty()) {
            est.reliable = false;
        }
    }
    return est;
}

CriticalLengthEstimate critical_length_autoscan(const PatchFamily& family, double len_max,
                                                double coarse_step, double fine_step,
                                                double neg_tol, int grid_points, int m, int r,
                                                Exec exec) {
    std::vector<double> coarse;
    for (double len = coarse_step; len <= len_max + 0.5 * coarse_step; len += coarse_step) {
        coarse.push_back(len);
    }
    CriticalLengthEstimate first =
        critical_length_scan_mdtb(family, m, r, coarse, neg_tol, grid_points, exec);
    if (!first.estimate) {
        return first;
    }
    const double lo = *first.estimate;
    const double hi = std::min(lo + coarse_step, len_max);
    std::vector<double> fine;
    for (double len = lo; len <= hi + 0.5 * fine_step; len += fine_step) {
        fine.push_back(len);
    }
    CriticalLengthEstimate refined =
        critical_length_scan_mdtb(family, m, r, fine, neg_tol, grid_points, exec);
    refined.grid = std::move(fine);
    return refined;
}

} // namespace mdtb
