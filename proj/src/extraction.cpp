#include "mdtb/extraction.hpp"

#include "mdtb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mdtb {

ExtractionMatrix ExtractionMatrix::identity(int n) {
    ExtractionMatrix h;
    h.cols_ = n;
    h.rows_.resize(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        h.rows_[static_cast<size_t>(r)].first_col = r;
        h.rows_[static_cast<size_t>(r)].values = {1.0};
    }
    return h;
}

int ExtractionMatrix::row_end(int r) const {
    const Row& row = rows_[static_cast<size_t>(r)];
    return row.first_col + static_cast<int>(row.values.size());
}

double ExtractionMatrix::operator()(int r, int c) const {
    const Row& row = rows_[static_cast<size_t>(r)];
    const int j = c - row.first_col;
    if (j < 0 || j >= static_cast<int>(row.values.size())) {
        return 0.0;
    }
    return row.values[static_cast<size_t>(j)];
}

Matrix ExtractionMatrix::dense() const {
    Matrix m = Matrix::Zero(rows(), cols());
    for (int r = 0; r < rows(); ++r) {
        const Row& row = rows_[static_cast<size_t>(r)];
        for (size_t j = 0; j < row.values.size(); ++j) {
            m(r, row.first_col + static_cast<int>(j)) = row.values[j];
        }
    }
    return m;
}

Vector ExtractionMatrix::column_sums() const {
    Vector sums = Vector::Zero(cols());
    for (const Row& row : rows_) {
        for (size_t j = 0; j < row.values.size(); ++j) {
            sums[row.first_col + static_cast<int>(j)] += row.values[j];
        }
    }
    return sums;
}

Matrix ExtractionMatrix::apply_right(const Matrix& k) const {
    if (k.rows() != cols()) {
        throw DimensionMismatch("extraction product: inner dimensions differ");
    }
    Matrix out = Matrix::Zero(rows(), k.cols());
    for (int r = 0; r < rows(); ++r) {
        const Row& row = rows_[static_cast<size_t>(r)];
        for (size_t j = 0; j < row.values.size(); ++j) {
            out.row(r) += row.values[j] * k.row(row.first_col + static_cast<int>(j));
        }
    }
    return out;
}

void ExtractionMatrix::apply_banded_update(std::span<const double> diag,
                                           std::span<const double> off) {
    const size_t nout = rows_.size() - 1;
    if (diag.size() != nout || off.size() != nout) {
        throw DimensionMismatch("banded update must shrink the row count by one");
    }
    std::vector<Row> out(nout);
    for (size_t r = 0; r < nout; ++r) {
        const Row& a = rows_[r];
        const Row& b = rows_[r + 1];
        const bool use_a = diag[r] != 0.0;
        const bool use_b = off[r] != 0.0;
        Row& dst = out[r];
        if (use_a && use_b) {
            dst.first_col = std::min(a.first_col, b.first_col);
            const int last = std::max(a.first_col + static_cast<int>(a.values.size()),
                                      b.first_col + static_cast<int>(b.values.size()));
            dst.values.assign(static_cast<size_t>(last - dst.first_col), 0.0);
            for (size_t j = 0; j < a.values.size(); ++j) {
                dst.values[static_cast<size_t>(a.first_col - dst.first_col) + j] +=
                    diag[r] * a.values[j];
            }
            for (size_t j = 0; j < b.values.size(); ++j) {
                dst.values[static_cast<size_t>(b.first_col - dst.first_col) + j] +=
                    off[r] * b.values[j];
            }
        } else if (use_a) {
            dst.first_col = a.first_col;
            dst.values = a.values;
            for (double& v : dst.values) v *= diag[r];
        } else if (use_b) {
            dst.first_col = b.first_col;
            dst.values = b.values;
            for (double& v : dst.values) v *= off[r];
        } else {
            dst.first_col = a.first_col;
            dst.values = {0.0};
        }
    }
    rows_ = std::move(out);
}

void ExtractionMatrix::rotate_rows(int k) {
    const int n = rows();
    if (n == 0) {
        return;
    }
    k = ((k % n) + n) % n;
    std::rotate(rows_.begin(), rows_.begin() + k, rows_.end());
}

std::vector<ExtractionMatrix::Triplet> ExtractionMatrix::triplets() const {
    std::vector<Triplet> out;
    for (int r = 0; r < rows(); ++r) {
        const Row& row = rows_[static_cast<size_t>(r)];
        for (size_t j = 0; j < row.values.size(); ++j) {
            if (row.values[j] != 0.0) {
                out.push_back(Triplet{r, row.first_col + static_cast<int>(j), row.values[j]});
            }
        }
    }
    return out;
}

Matrix BandedNullspace::dense() const {
    const int n = static_cast<int>(diag.size());
    Matrix m = Matrix::Zero(n, n + 1);
    for (int j = 0; j < n; ++j) {
        m(j, j) = diag[static_cast<size_t>(j)];
        m(j, j + 1) = off[static_cast<size_t>(j)];
    }
    return m;
}

BandedNullspace sparse_nullspace(const Vector& l) {
    int first = -1;
    int last = -1;
    for (int k = 0; k < l.size(); ++k) {
        if (l[k] != 0.0) {
            if (first < 0) first = k;
            last = k;
        }
    }
    if (first < 0) {
        throw AllZeroVector("null-space of the zero vector is not two-banded");
    }
    return sparse_nullspace(l, first, last);
}

BandedNullspace sparse_nullspace(const Vector& l, int first, int last) {
    const int q = static_cast<int>(l.size());
    if (q < 2) {
        throw DegenerateConstraint("constraint vector must have at least two entries");
    }
    if (first < 0 || last >= q || first > last) {
        throw DegenerateConstraint("invalid non-zero window for the constraint vector");
    }
    BandedNullspace h;
    h.diag.assign(static_cast<size_t>(q) - 1, 0.0);
    h.off.assign(static_cast<size_t>(q) - 1, 0.0);
    if (first == last) {
        // Single-entry constraint: the null-space simply skips e_first.
        for (int r = 0; r < first; ++r) {
            h.diag[static_cast<size_t>(r)] = 1.0;
        }
        for (int r = first; r <= q - 2; ++r) {
            h.off[static_cast<size_t>(r)] = 1.0;
        }
        return h;
    }
    for (int r = 0; r <= std::min(first, q - 2); ++r) {
        h.diag[static_cast<size_t>(r)] = 1.0;
    }
    for (int r = first; r <= last - 2; ++r) {
        if (l[r + 1] == 0.0) {
            throw DegenerateConstraint("zero pivot inside the constraint window");
        }
        h.off[static_cast<size_t>(r)] = -(l[r] / l[r + 1]) * h.diag[static_cast<size_t>(r)];
        h.diag[static_cast<size_t>(r) + 1] = 1.0 - h.off[static_cast<size_t>(r)];
    }
    for (int r = std::max(last - 1, 0); r <= q - 2; ++r) {
        h.off[static_cast<size_t>(r)] = 1.0;
    }
    return h;
}

Matrix constraint_matrix(const MDTSpaceSpec& spec, int i) {
    const int m = spec.interval_count();
    if (i < 1 || i > m - 1) {
        throw InvalidSpec("constraint matrices exist at interior break points only");
    }
    const int r = spec.smoothness[static_cast<size_t>(i)];
    const LocalPatch& left = *spec.patches[static_cast<size_t>(i) - 1];
    const LocalPatch& right = *spec.patches[static_cast<size_t>(i)];
    const int mu = spec.stacked_dimension();
    if (r < 0) {
        return Matrix::Zero(mu, 0);
    }
    Matrix k = Matrix::Zero(mu, r + 1);
    const Matrix dl = left.diffend_extended(Endpoint::right, r);
    const Matrix dr = right.diffend_extended(Endpoint::left, r);
    const int off_l = spec.block_offset(i - 1);
    const int off_r = spec.block_offset(i);
    // Order-j column: only the last / first j + 1 Bernstein functions of the
    // adjoining patches have a non-zero j-th derivative at the break.
    for (int j = 0; j <= r; ++j) {
        for (int t = 0; t <= j; ++t) {
            k(off_l + left.degree() - t, j) = dl(left.degree() - t, j);
            k(off_r + t, j) = -dr(t, j);
        }
    }
    return k;
}

namespace {

// 1-based row window [first + 1, last + 1] of the order-j seam constraint at
// interior break i, derived from the support-end counts of the intermediate
// space in which breaks < i carry full smoothness, break i carries order
// j - 1 and later breaks none.
std::pair<int, int> interior_window(const MDTSpaceSpec& spec, int i, int j) {
    int mu_v = 0; // functions whose support ends at or before x_i
    for (int k = 1; k <= i; ++k) {
        const int r = k == i ? j - 1 : spec.smoothness[static_cast<size_t>(k)];
        mu_v += spec.local_degree(k - 1) - r;
    }
    int mu_u = 0; // functions whose support starts before x_i
    for (int k = 0; k < i; ++k) {
        const int r = k == 0 ? -1 : spec.smoothness[static_cast<size_t>(k)];
        mu_u += spec.local_degree(k) - r;
    }
    return {mu_v - 1, mu_u}; // 0-based inclusive
}

void eliminate(ExtractionMatrix& h, Matrix& l, int column, int first, int last) {
    const BandedNullspace ns = sparse_nullspace(l.col(column), first, last);
    h.apply_banded_update(ns.diag, ns.off);
    Matrix next(l.rows() - 1, l.cols());
    for (Eigen::Index r = 0; r < next.rows(); ++r) {
        next.row(r) = ns.diag[static_cast<size_t>(r)] * l.row(r) +
                      ns.off[static_cast<size_t>(r)] * l.row(r + 1);
    }
    l = std::move(next);
}

} // namespace

ExtractionMatrix extraction(const MDTSpaceSpec& spec) {
    ExtractionMatrix h = ExtractionMatrix::identity(spec.stacked_dimension());
    for (int i = 1; i <= spec.interval_count() - 1; ++i) {
        if (spec.smoothness[static_cast<size_t>(i)] < 0) {
            continue;
        }
        Matrix l = h.apply_right(constraint_matrix(spec, i));
        for (int j = 0; j <= spec.smoothness[static_cast<size_t>(i)]; ++j) {
            const auto [first, last] = interior_window(spec, i, j);
            eliminate(h, l, j, first, last);
        }
    }
    return h;
}

ExtractionMatrix extraction_periodic(const MDTSpaceSpec& spec, int r_per) {
    const int m = spec.interval_count();
    const int cap = std::min(spec.local_degree(0), spec.local_degree(m - 1));
    if (r_per < 0 || r_per > cap) {
        throw PeriodicSmoothnessTooHigh(
            "periodic smoothness must satisfy 0 <= r_per <= min(p_1, p_m)");
    }
    ExtractionMatrix h = extraction(spec);
    const int n0 = h.rows();
    const int s = r_per + 1;
    if (dimension_periodic(spec, r_per) < 1) {
        throw InvalidSpec("periodic space dimension must be positive");
    }

    // Seam constraints: derivatives at b from the last patch match those at
    // a from the first patch.
    const LocalPatch& left = *spec.patches[static_cast<size_t>(m) - 1];
    const LocalPatch& right = *spec.patches[0];
    Matrix k = Matrix::Zero(spec.stacked_dimension(), r_per + 1);
    const Matrix dl = left.diffend_extended(Endpoint::right, r_per);
    const Matrix dr = right.diffend_extended(Endpoint::left, r_per);
    const int off_l = spec.block_offset(m - 1);
    for (int j = 0; j <= r_per; ++j) {
        for (int t = 0; t <= j; ++t) {
            k(off_l + left.degree() - t, j) = dl(left.degree() - t, j);
            k(t, j) = -dr(t, j);
        }
    }

    // Bring the boundary functions together at the bottom, then eliminate the
    // seam constraints like an interior break.
    h.rotate_rows(s);
    Matrix l = h.apply_right(k);
    for (int j = 0; j <= r_per; ++j) {
        const int first = n0 - s - j - 1;
        const int last = n0 - s;
        eliminate(h, l, j, first, last);
    }

    // Seam-crossing functions first, to match the usual periodic ordering.
    h.rotate_rows(h.rows() - s);
    return h;
}

EvalStack mdtb_eval_all(const MDTSpaceSpec& spec, const ExtractionMatrix& h,
                        std::span<const double> points, int max_deriv, Exec exec) {
    if (h.cols() != spec.stacked_dimension()) {
        throw DimensionMismatch("extraction matrix does not match the space");
    }
    const auto npts = static_cast<Eigen::Index>(points.size());
    EvalStack out(static_cast<size_t>(max_deriv) + 1);

    // Group points by owning interval so each patch is evaluated once.
    std::vector<std::vector<double>> grouped(static_cast<size_t>(spec.interval_count()));
    std::vector<std::vector<Eigen::Index>> indices(grouped.size());
    for (Eigen::Index k = 0; k < npts; ++k) {
        const double x = points[static_cast<size_t>(k)];
        if (x < spec.a() || x > spec.b()) {
            throw PointOutOfInterval("evaluation point outside the spline domain");
        }
        const auto i = static_cast<size_t>(spec.owning_interval(x));
        grouped[i].push_back(x);
        indices[i].push_back(k);
    }

    std::vector<EvalStack> local(grouped.size());
    for (size_t i = 0; i < grouped.size(); ++i) {
        if (!grouped[i].empty()) {
            local[i] = spec.patches[i]->eval_all(grouped[i], max_deriv, exec);
        }
    }
    for (int d = 0; d <= max_deriv; ++d) {
        // Assemble the full stacked level, then extract.
        Matrix level = Matrix::Zero(spec.stacked_dimension(), npts);
        for (size_t i = 0; i < grouped.size(); ++i) {
            if (grouped[i].empty()) {
                continue;
            }
            const int off = spec.block_offset(static_cast<int>(i));
            const Matrix& block = local[i][static_cast<size_t>(d)];
            for (size_t kk = 0; kk < indices[i].size(); ++kk) {
                level.block(off, indices[i][kk], block.rows(), 1) =
                    block.col(static_cast<Eigen::Index>(kk));
            }
        }
        out[static_cast<size_t>(d)] = h.apply_right(level);
    }
    return out;
}

Matrix curve_eval(const MDTSpaceSpec& spec, const ExtractionMatrix& h,
                  const Matrix& control_points, std::span<const double> params, Exec exec) {
    if (control_points.rows() != h.rows()) {
        throw DimensionMismatch("one control point per basis function is required");
    }
    const EvalStack basis = mdtb_eval_all(spec, h, params, 0, exec);
    return basis[0].transpose() * control_points;
}

Matrix mdtb_diffend_at_break(const MDTSpaceSpec& spec, const ExtractionMatrix& h,
                             int break_index, Endpoint side, int max_deriv) {
    const int m = spec.interval_count();
    if (break_index < 0 || break_index > m) {
        throw InvalidSpec("break index out of range");
    }
    if ((side == Endpoint::left && break_index == 0) ||
        (side == Endpoint::right && break_index == m)) {
        throw InvalidSpec("one-sided limit points outside the domain");
    }
    const int patch_index = side == Endpoint::left ? break_index - 1 : break_index;
    const LocalPatch& patch = *spec.patches[static_cast<size_t>(patch_index)];
    const Matrix local = patch.diffend_extended(
        side == Endpoint::left ? Endpoint::right : Endpoint::left, max_deriv);
    Matrix stacked = Matrix::Zero(spec.stacked_dimension(), max_deriv + 1);
    stacked.block(spec.block_offset(patch_index), 0, local.rows(), local.cols()) = local;
    return h.apply_right(stacked);
}

} // namespace mdtb
