#pragma once

#include "mdtb/extraction.hpp"
#include "mdtb/local_patch.hpp"
#include "mdtb/mdtb_space.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mdtb {

/// Numerical-validation summary for a basis: partition-of-unity deviation,
/// minimum basis value and (for multi-degree spaces) extraction column sums.
struct CheckReport {
    double max_pou_deviation = 0.0;
    double min_basis_value = 0.0;
    double h_column_sum_deviation = 0.0;
    std::vector<Warning> warnings;

    bool clean() const { return warnings.empty(); }
};

CheckReport check_partition_of_unity(const LocalPatch& patch, int grid_size = 501,
                                     Exec exec = Exec::parallel);

CheckReport check_partition_of_unity(const MDTSpaceSpec& spec, const ExtractionMatrix& h,
                                     int grid_size = 501, Exec exec = Exec::parallel);

/// Builds a local space on a given interval; used to sweep interval lengths.
using PatchFamily = std::function<PatchPtr(double x0, double x1)>;

struct CriticalLengthEstimate {
    std::string family;           // descriptor of the scanned space family
    std::vector<double> grid;     // scanned lengths, increasing
    std::optional<double> estimate; // largest length before negativity
    double neg_tol = -1e-8;
    bool reliable = true;         // false when warnings fired before negativity
    std::vector<Warning> warnings;
};

/// Scans increasing lengths; for each, tabulates all Bernstein functions on
/// a fine grid over [0, len] and reports the last length before the minimum
/// value drops below neg_tol. The result is a numerical upper-bound-style
/// guess only.
CriticalLengthEstimate critical_length_scan(const PatchFamily& family,
                                            std::span<const double> len_grid,
                                            double neg_tol = -1e-8,
                                            int grid_points = 501,
                                            Exec exec = Exec::parallel);

/// Same scan on the MDTB basis of the uniform spline space with m
/// subintervals of length len and uniform interior smoothness r.
CriticalLengthEstimate critical_length_scan_mdtb(const PatchFamily& family, int m, int r,
                                                 std::span<const double> len_grid,
                                                 double neg_tol = -1e-8,
                                                 int grid_points = 501,
                                                 Exec exec = Exec::parallel);

/// Coarse pre-scan (default step 0.1) followed by a 0.001-resolution rescan
/// around the detected threshold.
CriticalLengthEstimate critical_length_autoscan(const PatchFamily& family, double len_max,
                                                double coarse_step = 0.1,
                                                double fine_step = 0.001,
                                                double neg_tol = -1e-8,
                                                int grid_points = 501,
                                                int m = 1, int r = 0,
                                                Exec exec = Exec::parallel);

} // namespace mdtb
