#include "mdtb/extraction.hpp"
#include "mdtb/reproduce.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

double run_once(const mdtb::MDTSpaceSpec& spec, const mdtb::ExtractionMatrix& h,
                const std::vector<double>& points, int max_deriv, mdtb::Exec exec) {
    const auto start = Clock::now();
    const mdtb::EvalStack stack = mdtb::mdtb_eval_all(spec, h, points, max_deriv, exec);
    const auto stop = Clock::now();
    // keep the result alive so the work is not optimized away
    volatile double sink = stack[0](0, 0);
    (void)sink;
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

double best_of(int reps, auto&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        best = std::min(best, f());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int npoints = argc > 1 ? std::atoi(argv[1]) : 200000;
    int max_deriv = argc > 2 ? std::atoi(argv[2]) : 2;
    int reps = argc > 3 ? std::atoi(argv[3]) : 5;

    const mdtb::MDTSpaceSpec spec = mdtb::showcase_space();
    const mdtb::ExtractionMatrix h = mdtb::extraction(spec);
    std::vector<double> points(static_cast<size_t>(npoints));
    const double a = spec.a();
    const double b = spec.b();
    for (int k = 0; k < npoints; ++k) {
        points[static_cast<size_t>(k)] = a + (b - a) * k / (npoints - 1);
    }

    const double serial = best_of(reps, [&] {
        return run_once(spec, h, points, max_deriv, mdtb::Exec::serial);
    });
    const double parallel = best_of(reps, [&] {
        return run_once(spec, h, points, max_deriv, mdtb::Exec::parallel);
    });

    std::cout << "points: " << npoints << ", max_deriv: " << max_deriv
              << ", best of " << reps << " runs\n";
    std::cout << "serial:   " << serial << " ms\n";
    std::cout << "parallel: " << parallel << " ms\n";
    std::cout << "speedup:  " << serial / parallel << "x\n";
    return 0;
}
