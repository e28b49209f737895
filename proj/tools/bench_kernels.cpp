// Times the serial reference kernels against the OpenMP versions on
// synthetic traces and prints a speedup table. Sizes are element counts.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ratecomp/kernels.hpp"

using namespace ratecomp;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(int reps, const auto& fn) {
    // One warmup, then best of reps.
    fn();
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

struct inputs {
    std::vector<double> flat;  // 1-d trace coordinates
    std::vector<double> ex, ey;
    std::vector<double> limit{0.0};
};

inputs make_inputs(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    inputs in;
    in.flat.resize(n);
    in.ex.resize(n);
    in.ey.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double base = 1.0 / static_cast<double>(k + 1);
        in.flat[k] = base * (0.5 + u(rng));
        in.ex[k] = base * (0.5 + u(rng));
        in.ey[k] = base * (0.5 + u(rng));
    }
    return in;
}

void report(const char* name, std::size_t n, double serial_ms, double parallel_ms) {
    std::printf("%-14s %10zu %12.3f %12.3f %9.2fx\n", name, n, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

} // namespace

int main(int argc, char** argv) {
    int reps = 5;
    std::vector<std::size_t> sizes{100'000, 1'000'000, 10'000'000};
    if (argc > 1) sizes = {static_cast<std::size_t>(std::stoull(argv[1]))};
    if (argc > 2) reps = std::stoi(argv[2]);

    std::printf("OpenMP compiled in: %s\n\n", kernels::openmp_enabled() ? "yes" : "no");
    std::printf("%-14s %10s %12s %12s %9s\n", "kernel", "n", "serial ms", "parallel ms",
                "speedup");

    std::mt19937_64 rng(42);
    for (const std::size_t n : sizes) {
        inputs in = make_inputs(n, rng);
        std::vector<double> out_s(n), out_p(n), a_s(n), b_s(n), a_p(n), b_p(n);
        std::vector<xreal> r_s(n), r_p(n);

        const double em_s = time_ms(reps, [&] {
            kernels::error_map(in.flat, 1, in.limit, metric_kind::absolute, out_s,
                               kernels::exec::serial);
        });
        const double em_p = time_ms(reps, [&] {
            kernels::error_map(in.flat, 1, in.limit, metric_kind::absolute, out_p,
                               kernels::exec::parallel);
        });
        report("error_map", n, em_s, em_p);

        const double rm_s = time_ms(reps, [&] {
            kernels::ratio_map(in.ex, in.ey, r_s, kernels::exec::serial);
        });
        const double rm_p = time_ms(reps, [&] {
            kernels::ratio_map(in.ex, in.ey, r_p, kernels::exec::parallel);
        });
        report("ratio_map", n, rm_s, rm_p);

        const double mm_s = time_ms(reps, [&] {
            (void)kernels::minmax(r_s, kernels::exec::serial);
        });
        const double mm_p = time_ms(reps, [&] {
            (void)kernels::minmax(r_s, kernels::exec::parallel);
        });
        report("minmax", n, mm_s, mm_p);

        const double am_s = time_ms(reps, [&] {
            kernels::adversary_map(in.ex, in.ey, 1, a_s, b_s, kernels::exec::serial);
        });
        const double am_p = time_ms(reps, [&] {
            kernels::adversary_map(in.ex, in.ey, 1, a_p, b_p, kernels::exec::parallel);
        });
        report("adversary_map", n, am_s, am_p);

        // a_s now dominates ex, so the scan has to sweep the whole range.
        const double bs_s = time_ms(reps, [&] {
            (void)kernels::bound_scan(in.ex, a_s, kernels::exec::serial);
        });
        const double bs_p = time_ms(reps, [&] {
            (void)kernels::bound_scan(in.ex, a_s, kernels::exec::parallel);
        });
        report("bound_scan", n, bs_s, bs_p);
        std::printf("\n");
    }
    return 0;
}
