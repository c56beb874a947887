#pragma once

#include "mdtb/mdtb_space.hpp"
#include "mdtb/types.hpp"

#include <span>
#include <vector>

namespace mdtb {

/// Sparse n x mu(m) operator H mapping the stacked local Bernstein bases to
/// the MDTB-spline basis, N = H * B. Rows have contiguous column support.
class ExtractionMatrix {
public:
    ExtractionMatrix() = default;
    static ExtractionMatrix identity(int n);

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

    double operator()(int r, int c) const;
    int row_begin(int r) const { return rows_[static_cast<size_t>(r)].first_col; }
    int row_end(int r) const;

    Matrix dense() const;
    Vector column_sums() const;

    /// Dense product H * K for a (cols() x k) constraint matrix.
    Matrix apply_right(const Matrix& k) const;

    /// Applies a two-banded null-space update: new row j = diag[j] * row j
    /// + off[j] * row (j + 1); shrinks the row count by one.
    void apply_banded_update(std::span<const double> diag, std::span<const double> off);

    /// Rotates row order left by k (row k becomes row 0).
    void rotate_rows(int k);

    struct Triplet {
        int row;
        int col;
        double value;
    };
    std::vector<Triplet> triplets() const;

private:
    struct Row {
        int first_col = 0;
        std::vector<double> values;
    };
    std::vector<Row> rows_;
    int cols_ = 0;
};

/// The two-banded sparse left null-space of a vector l (length q), a
/// (q-1) x q matrix whose rows follow the knot-insertion coefficient chain;
/// columns sum to 1. Throws AllZeroVector when l has no non-zero entry and
/// DegenerateConstraint on a zero pivot inside the chain.
/// Represented by its two diagonals: row j = diag[j] * e_j + off[j] * e_{j+1}.
struct BandedNullspace {
    std::vector<double> diag;
    std::vector<double> off;

    Matrix dense() const;
};

BandedNullspace sparse_nullspace(const Vector& l);

/// Variant with the non-zero window [first, last] (0-based, inclusive)
/// prescribed structurally; entries of l outside the window are treated as
/// exact zeros regardless of floating-point noise.
BandedNullspace sparse_nullspace(const Vector& l, int first, int last);

/// Continuity-constraint matrix K^(i) for interior break i (1..m-1):
/// mu(m) x (r_i + 1), block rows from the left patch's end-point derivatives
/// and the negated right patch's end-point derivatives.
Matrix constraint_matrix(const MDTSpaceSpec& spec, int i);

/// Multi-degree spline extraction operator of the non-periodic space.
ExtractionMatrix extraction(const MDTSpaceSpec& spec);

/// Periodic extraction operator: seam constraints of order 0..r_per are
/// eliminated like an interior break after circularly shifting the rows.
/// Row order: seam-crossing functions first, then the interior functions in
/// their non-periodic order.
ExtractionMatrix extraction_periodic(const MDTSpaceSpec& spec, int r_per);

/// MDTB-spline values/derivatives: level d is an n x |points| matrix. Per
/// point only the owning interval's Bernstein block is evaluated; the right
/// end is evaluated as a left limit.
EvalStack mdtb_eval_all(const MDTSpaceSpec& spec, const ExtractionMatrix& h,
                        std::span<const double> points, int max_deriv,
                        Exec exec = Exec::parallel);

/// Spline curve evaluation: result(k, :) = sum_j control(j, :) N_j(params[k]).
Matrix curve_eval(const MDTSpaceSpec& spec, const ExtractionMatrix& h,
                  const Matrix& control_points, std::span<const double> params,
                  Exec exec = Exec::parallel);

/// One-sided end-point derivatives of the MDTB-splines at a break point,
/// n x (max_deriv + 1); side selects the limit (left uses the patch ending
/// at the break, right the one starting there).
Matrix mdtb_diffend_at_break(const MDTSpaceSpec& spec, const ExtractionMatrix& h,
                             int break_index, Endpoint side, int max_deriv);

} // namespace mdtb
