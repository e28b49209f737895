#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ratecomp/metric.hpp"
#include "ratecomp/xreal.hpp"

namespace ratecomp {

/// Finite-horizon surrogates for lim / limsup / liminf, taken over the final
/// ceil(window_frac * len) entries of a sequence.
struct estimator_config {
    double window_frac = 0.2; // in (0,1]
    double limit_tol = 1e-6;  // limit oscillation tolerance; also the 0 / infinity cutoff
    double floor = 1e-300;    // underflow floor for error-trace comparisons
    double zero_tol = 0.2;    // "has vanished" report threshold for bound tails
};

struct compare_options {
    estimator_config estimator;
    bool require_bounds_vanish = true; // bound-mediated comparison insists on vanishing tails
    double alpha_slack = 0.05;         // padding on the reported domination constant
};

enum class tail_kind { limit, limsup, liminf };

std::string to_string(tail_kind k);

/// A windowed tail statistic. For limsup/liminf the value is the window
/// max/min and the estimate is always usable; a limit estimate is conclusive
/// only when the window holds no infinities and oscillates within limit_tol.
struct tail_estimate {
    tail_kind kind = tail_kind::limit;
    xreal value;
    std::int64_t window_start = 1; // sequence index of the first window entry
    std::size_t window_len = 0;
    double oscillation = 0.0; // tail max - tail min over finite entries
    bool conclusive = false;
};

/// seq is indexed from start_index; the window covers its final
/// ceil(window_frac * len) entries.
tail_estimate estimate_tail(std::span<const xreal> seq, tail_kind kind,
                            double window_frac, double limit_tol,
                            std::int64_t start_index = 1);

enum class relation {
    left_faster,
    right_faster,
    left_better,
    right_better,
    same_rate,
    neither,
    inconclusive,
};

std::string to_string(relation r);

struct verdict {
    relation rel = relation::inconclusive;
    std::string comparator;
    std::vector<tail_estimate> evidence;
    std::string notes;
    std::int64_t truncation_index = -1; // first index dropped by the underflow floor, -1 if none
};

/// An upper-bound sequence a_n >= d(x_n, x*). Entries must be finite;
/// strict positivity and domination are certified by validate_bounds,
/// not enforced here, so defective bounds can be examined.
struct bound_trace {
    std::int64_t start_index = 1;
    std::vector<double> values;

    bound_trace() = default;
    bound_trace(std::int64_t start, std::vector<double> vals);

    std::size_t size() const { return values.size(); }
    std::int64_t index_of(std::size_t k) const { return start_index + static_cast<std::int64_t>(k); }
    std::int64_t last_index() const { return start_index + static_cast<std::int64_t>(values.size()) - 1; }
};

enum class bound_condition { none, positivity, domination };

std::string to_string(bound_condition c);

/// Outcome of validate_bounds. A violation is a value, not an error.
struct bound_check {
    bool ok = false;
    bound_condition failed = bound_condition::none;
    std::int64_t first_bad_index = -1;
    bool vanishing = false; // tail max <= zero_tol; reported, never required here
    double tail_max = 0.0;
    std::int64_t overlap_start = 0;
    std::size_t overlap_len = 0;
};

/// Certifies that `bound` dominates `e` pointwise over their index overlap
/// and stays strictly positive; reports whether its tail has dropped below
/// zero_tol. The first failing index and condition are named on violation.
bound_check validate_bounds(const error_trace& e, const bound_trace& bound,
                            double zero_tol, double window_frac = 0.2);

/// The sequence-level ratio test: l = lim |a_n - la| / |b_n - lb|.
/// l = 0 (window max <= limit_tol) -> left_faster; l = infinity (window min
/// >= 1/limit_tol or all-infinite) -> right_faster; a conclusive finite
/// limit in between -> same_rate; otherwise inconclusive.
verdict compare_berinde_def25(std::span<const double> a, std::span<const double> b,
                              double la, double lb, const compare_options& opts = {});

/// The bound-mediated comparison: validates both bound pairs, then applies
/// the def-2.5 ratio test to the bounds themselves (limits 0). Rejects on a
/// bound violation, and, when require_bounds_vanish is set, on bound tails
/// that have not dropped below zero_tol.
verdict compare_berinde_def27(const error_trace& e1, const error_trace& e2,
                              const bound_trace& b1, const bound_trace& b2,
                              const compare_options& opts = {});

/// The direct comparison: the def-2.5 ratio test on the true error
/// sequences d(x_n, x*) / d(y_n, y*).
verdict compare_popescu(const error_trace& e1, const error_trace& e2,
                        const compare_options& opts = {});

/// Pointwise domination over the whole overlap: left_better / right_better /
/// same_rate (equal) / neither.
verdict compare_rhoades(const error_trace& e1, const error_trace& e2,
                        const compare_options& opts = {});

/// Eventual domination up to a constant: left_better iff the tail limsup of
/// e1/e2 is finite, right_better symmetric, same_rate iff both. Finiteness
/// classification is scale-invariant: a window is infinite when it contains
/// an infinite entry or its second half has grown past its first half.
verdict compare_zalinescu(const error_trace& e1, const error_trace& e2,
                          const compare_options& opts = {});

} // namespace ratecomp
