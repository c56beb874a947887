#include "mdtb/mdtb_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mdtb {

int MDTSpaceSpec::block_offset(int i) const {
    int mu = 0;
    for (int j = 0; j < i; ++j) {
        mu += local_degree(j) + 1;
    }
    return mu;
}

int MDTSpaceSpec::owning_interval(double x) const {
    const int m = interval_count();
    if (x >= breaks.back()) {
        return m - 1;
    }
    const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    const int i = static_cast<int>(it - breaks.begin()) - 1;
    return std::clamp(i, 0, m - 1);
}

MDTSpaceSpec validate_space(MDTSpaceSpec spec) {
    const size_t m = spec.patches.size();
    if (m == 0) {
        throw InvalidSpec("a space needs at least one interval");
    }
    if (spec.breaks.size() != m + 1) {
        throw InvalidSpec("break count must be interval count + 1");
    }
    if (spec.smoothness.size() != m + 1) {
        throw InvalidSpec("smoothness vector must have one value per break point");
    }
    if (spec.smoothness.front() != -1 || spec.smoothness.back() != -1) {
        throw InvalidSpec("end smoothness values must be -1");
    }
    for (size_t i = 0; i + 1 < spec.breaks.size(); ++i) {
        if (!(spec.breaks[i] < spec.breaks[i + 1])) {
            throw InvalidSpec("break points must be strictly increasing");
        }
    }
    const double tol = 1e-12 * std::max(std::abs(spec.a()), std::abs(spec.b()));
    for (size_t i = 0; i < m; ++i) {
        const LocalPatch& patch = *spec.patches[i];
        if (std::abs(patch.x0() - spec.breaks[i]) >
                tol + std::numeric_limits<double>::epsilon() ||
            std::abs(patch.x1() - spec.breaks[i + 1]) >
                tol + std::numeric_limits<double>::epsilon()) {
            throw InvalidSpec("patch intervals must tile the break sequence");
        }
    }
    for (size_t i = 1; i < m; ++i) {
        const int r = spec.smoothness[i];
        const int cap = std::min(spec.patches[i - 1]->degree(), spec.patches[i]->degree());
        if (r < -1 || r > cap) {
            throw InvalidSpec(
                "interior smoothness must satisfy -1 <= r_i <= min(p_i, p_{i+1})");
        }
    }
    if (dimension(spec) < 1) {
        throw InvalidSpec("space dimension must be positive");
    }
    return spec;
}

int dimension(const MDTSpaceSpec& spec) {
    int n = 0;
    for (int i = 0; i < spec.interval_count(); ++i) {
        n += spec.local_degree(i) - spec.smoothness[static_cast<size_t>(i)];
    }
    return n;
}

int dimension_periodic(const MDTSpaceSpec& spec, int r_per) {
    return dimension(spec) - (r_per + 1);
}

KnotVectors knot_vectors(const MDTSpaceSpec& spec) {
    KnotVectors kv;
    const int m = spec.interval_count();
    // u: multiplicity p_{i+1} - r_i at x_i (left support ends).
    for (int i = 0; i < m; ++i) {
        const int mult = spec.local_degree(i) - spec.smoothness[static_cast<size_t>(i)];
        kv.u.insert(kv.u.end(), static_cast<size_t>(mult), spec.breaks[static_cast<size_t>(i)]);
    }
    // v: multiplicity p_i - r_i at x_i (right support ends).
    for (int i = 1; i <= m; ++i) {
        const int mult = spec.local_degree(i - 1) - spec.smoothness[static_cast<size_t>(i)];
        kv.v.insert(kv.v.end(), static_cast<size_t>(mult), spec.breaks[static_cast<size_t>(i)]);
    }
    return kv;
}

} // namespace mdtb
