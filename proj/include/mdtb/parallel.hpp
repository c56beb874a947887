#pragma once

#include "mdtb/types.hpp"

#include <cstddef>

namespace mdtb {

/// Runs f(i) for i in [0, n). With Exec::parallel the loop is distributed
/// over OpenMP threads; iterations must be independent.
template <class F>
void parallel_for(std::ptrdiff_t n, Exec exec, F&& f) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            f(i);
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            f(i);
        }
    }
}

} // namespace mdtb
