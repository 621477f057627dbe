// Serial reference vs OpenMP kernel timings.
//
//   nhilb_bench [repeats]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>

#include "nhilb/lattice.hpp"
#include "nhilb/localization.hpp"
#include "nhilb/sections.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double best_ms(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, int repeats, const std::function<bool()>& serial, const std::function<bool()>& parallel) {
    bool same = true;
    const double s = best_ms(repeats, [&] { same = serial() && same; });
    const double p = best_ms(repeats, [&] { same = parallel() && same; });
    std::cout << std::left << std::setw(42) << name << std::right << std::fixed << std::setprecision(2)
              << std::setw(12) << s << std::setw(12) << p << std::setw(9) << (p > 0 ? s / p : 0.0) << "x"
              << (same ? "" : "  (results differ!)") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "threads: " << threads << ", best of " << repeats << '\n';
    std::cout << std::left << std::setw(42) << "kernel" << std::right << std::setw(12) << "serial ms" << std::setw(12)
              << "omp ms" << std::setw(10) << "speedup" << '\n';

    using namespace nhilb;
    row("enumerate_P n=4 m=2 k=1 D=24", repeats,
        [] { return !enumerate_P_serial(4, 2, 1, 24).empty(); },
        [] { return !enumerate_P(4, 2, 1, 24).empty(); });
    row("chi_series n=5 m=1 k=1 D=12", repeats,
        [] { return chi_series_serial(5, 1, 1, 12).all_nonnegative_integers(); },
        [] { return chi_series(5, 1, 1, 12).all_nonnegative_integers(); });
    const SectionSpaceSpec spec{3, 1, 1, 8, Ambient::nested};
    row("graded_sections nested n=3 m=k=1 D=8", repeats,
        [&] { return graded_sections_serial(spec).series().all_nonnegative_integers(); },
        [&] { return graded_sections(spec).series().all_nonnegative_integers(); });
    return 0;
}
