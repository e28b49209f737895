#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ratecomp/metric.hpp"
#include "ratecomp/xreal.hpp"

namespace ratecomp::kernels {

/// Execution policy for the data-parallel trace kernels. `automatic` picks
/// the OpenMP path when it is compiled in and the input is large enough to
/// amortize the fork; both paths produce bit-identical results (the kernels
/// are pure elementwise maps and min/max reductions).
enum class exec {
    serial,
    parallel,
    automatic,
};

/// Inputs below this element count run serially under exec::automatic.
inline constexpr std::size_t parallel_grain = 16384;

bool openmp_enabled();

/// out[k] = d(points[k], limit). `flat` holds n points of `dim` coordinates.
void error_map(std::span<const double> flat, std::size_t dim,
               std::span<const double> limit, metric_kind m,
               std::span<double> out, exec policy = exec::automatic);

/// out[k] = xratio(num[k], den[k]).
void ratio_map(std::span<const double> num, std::span<const double> den,
               std::span<xreal> out, exec policy = exec::automatic);

struct window_stats {
    double finite_min = 0.0;   // over finite entries; +inf when none
    double finite_max = 0.0;   // over finite entries; 0 when none
    std::size_t finite_count = 0;
    std::size_t infinite_count = 0;
};

/// Min/max over finite entries plus an infinite-entry census.
window_stats minmax(std::span<const xreal> v, exec policy = exec::automatic);

/// Plain max of a nonnegative double sequence (0 for empty input).
double max_value(std::span<const double> v, exec policy = exec::automatic);

enum class bound_defect {
    none,
    positivity, // bound[k] <= 0
    domination, // bound[k] < err[k]
};

struct bound_scan_result {
    bound_defect defect = bound_defect::none;
    std::size_t first_bad = 0; // offset of the first failing entry, valid when defect != none
};

/// Scans bound[k] > 0 and bound[k] >= err[k]; reports the first offending
/// offset and which condition failed there (positivity checked first).
bound_scan_result bound_scan(std::span<const double> err, std::span<const double> bound,
                             exec policy = exec::automatic);

/// true iff a[k] <= b[k] for every k.
bool pointwise_le(std::span<const double> a, std::span<const double> b,
                  exec policy = exec::automatic);

/// The adversarial bound construction, evaluated pointwise:
///   a[k] = ex[k] + ey[k] + 1/n,  n = start + k
///   b[k] = sqrt(a[k])            when a[k] <= 1
///          max(ey[k], 1/n)       otherwise
void adversary_map(std::span<const double> ex, std::span<const double> ey,
                   std::int64_t start, std::span<double> a, std::span<double> b,
                   exec policy = exec::automatic);

} // namespace ratecomp::kernels
