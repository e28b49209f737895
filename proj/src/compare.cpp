#include "ratecomp/compare.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratecomp/kernels.hpp"

namespace ratecomp {

std::string to_string(tail_kind k) {
    switch (k) {
        case tail_kind::limit: return "limit";
        case tail_kind::limsup: return "limsup";
        case tail_kind::liminf: return "liminf";
    }
    return "?";
}

std::string to_string(relation r) {
    switch (r) {
        case relation::left_faster: return "left_faster";
        case relation::right_faster: return "right_faster";
        case relation::left_better: return "left_better";
        case relation::right_better: return "right_better";
        case relation::same_rate: return "same_rate";
        case relation::neither: return "neither";
        case relation::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(bound_condition c) {
    switch (c) {
        case bound_condition::none: return "none";
        case bound_condition::positivity: return "positivity";
        case bound_condition::domination: return "domination";
    }
    return "?";
}

tail_estimate estimate_tail(std::span<const xreal> seq, tail_kind kind,
                            double window_frac, double limit_tol,
                            std::int64_t start_index) {
    if (seq.empty()) throw input_error("estimate_tail: empty sequence");
    if (!(window_frac > 0.0 && window_frac <= 1.0))
        throw input_error("estimate_tail: window_frac must lie in (0,1]");
    const std::size_t len = seq.size();
    std::size_t wlen = static_cast<std::size_t>(
        std::ceil(window_frac * static_cast<double>(len)));
    wlen = std::clamp<std::size_t>(wlen, 1, len);
    const std::size_t off = len - wlen;
    const auto stats = kernels::minmax(seq.subspan(off, wlen));

    tail_estimate est;
    est.kind = kind;
    est.window_start = start_index + static_cast<std::int64_t>(off);
    est.window_len = wlen;
    est.oscillation = stats.finite_count >= 2 ? stats.finite_max - stats.finite_min : 0.0;
    switch (kind) {
        case tail_kind::limsup:
            est.value = stats.infinite_count > 0 ? xreal::infinity() : xreal(stats.finite_max);
            est.conclusive = true;
            break;
        case tail_kind::liminf:
            est.value = stats.finite_count > 0 ? xreal(stats.finite_min) : xreal::infinity();
            est.conclusive = true;
            break;
        case tail_kind::limit:
            if (stats.infinite_count > 0) {
                est.value = xreal::infinity();
                est.conclusive = false;
            } else {
                est.value = xreal(0.5 * (stats.finite_min + stats.finite_max));
                est.conclusive = est.oscillation <= limit_tol;
            }
            break;
    }
    return est;
}

namespace {

// Overlap of two index-aligned sequences, cut at the first entry where either
// side drops below the underflow floor. If the floor would discard
// everything, the full overlap is kept: all-zero (or all-subfloor) data is
// legitimate input for the ratio conventions, not underflow noise.
struct aligned_view {
    std::int64_t start = 1;
    std::span<const double> a, b;
    std::int64_t truncation_index = -1;
};

aligned_view align_views(std::int64_t sa, std::span<const double> va,
                         std::int64_t sb, std::span<const double> vb,
                         const char* what) {
    const std::int64_t lo = std::max(sa, sb);
    const std::int64_t ha = sa + static_cast<std::int64_t>(va.size()) - 1;
    const std::int64_t hb = sb + static_cast<std::int64_t>(vb.size()) - 1;
    const std::int64_t hi = std::min(ha, hb);
    if (hi < lo) throw input_error(std::string(what) + ": no index overlap");
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    aligned_view out;
    out.start = lo;
    out.a = va.subspan(static_cast<std::size_t>(lo - sa), n);
    out.b = vb.subspan(static_cast<std::size_t>(lo - sb), n);
    return out;
}

aligned_view align_and_floor(const error_trace& e1, const error_trace& e2,
                             double floor, const char* what) {
    aligned_view v = align_views(e1.start_index, e1.values, e2.start_index, e2.values, what);
    std::size_t keep = v.a.size();
    for (std::size_t k = 0; k < v.a.size(); ++k) {
        if (v.a[k] < floor || v.b[k] < floor) {
            keep = k;
            break;
        }
    }
    if (keep > 0 && keep < v.a.size()) {
        v.truncation_index = v.start + static_cast<std::int64_t>(keep);
        v.a = v.a.first(keep);
        v.b = v.b.first(keep);
    }
    return v;
}

std::string format_value(xreal v) {
    if (v.is_infinite()) return "inf";
    std::ostringstream os;
    os << v.value();
    return os.str();
}

// The def-2.5 decision on a ready-made ratio sequence.
verdict classify_def25(std::span<const xreal> ratio, std::int64_t start,
                       const estimator_config& est, std::string comparator) {
    const double tol = est.limit_tol;
    tail_estimate sup = estimate_tail(ratio, tail_kind::limsup, est.window_frac, tol, start);
    tail_estimate inf = estimate_tail(ratio, tail_kind::liminf, est.window_frac, tol, start);
    tail_estimate lim = estimate_tail(ratio, tail_kind::limit, est.window_frac, tol, start);

    verdict v;
    v.comparator = std::move(comparator);
    v.evidence = {lim, sup, inf};
    if (sup.value.is_finite() && sup.value.value() <= tol) {
        v.rel = relation::left_faster;
        v.notes = "l = 0: window max " + format_value(sup.value) + " <= " +
                  format_value(xreal(tol));
    } else if (inf.value.is_infinite() || inf.value.value() >= 1.0 / tol) {
        v.rel = relation::right_faster;
        v.notes = "l = infinity: window min " + format_value(inf.value) + " >= " +
                  format_value(xreal(1.0 / tol));
    } else if (lim.conclusive) {
        if (lim.value.value() <= tol) {
            v.rel = relation::left_faster;
            v.notes = "l = 0: limit estimate " + format_value(lim.value) + " <= tol";
        } else if (lim.value.value() >= 1.0 / tol) {
            v.rel = relation::right_faster;
            v.notes = "l = infinity: limit estimate " + format_value(lim.value) + " >= 1/tol";
        } else {
            v.rel = relation::same_rate;
            v.notes = "0 < l < infinity: limit estimate " + format_value(lim.value);
        }
    } else {
        v.rel = relation::inconclusive;
        v.notes = "no limit at this horizon: window oscillation " +
                  format_value(xreal(lim.oscillation)) + " > " + format_value(xreal(tol));
    }
    return v;
}

} // namespace

bound_trace::bound_trace(std::int64_t start, std::vector<double> vals)
    : start_index(start), values(std::move(vals)) {
    if (start_index < 1)
        throw input_error("bound_trace start_index must be >= 1");
    if (values.empty())
        throw input_error("bound_trace needs at least one entry");
    for (double v : values)
        if (!std::isfinite(v))
            throw input_error("bound_trace entries must be finite");
}

bound_check validate_bounds(const error_trace& e, const bound_trace& bound,
                            double zero_tol, double window_frac) {
    aligned_view v = align_views(e.start_index, e.values, bound.start_index, bound.values,
                                 "validate_bounds");
    bound_check out;
    out.overlap_start = v.start;
    out.overlap_len = v.a.size();

    const auto scan = kernels::bound_scan(v.a, v.b);
    if (scan.defect != kernels::bound_defect::none) {
        out.ok = false;
        out.failed = scan.defect == kernels::bound_defect::positivity
                         ? bound_condition::positivity
                         : bound_condition::domination;
        out.first_bad_index = v.start + static_cast<std::int64_t>(scan.first_bad);
        return out;
    }
    out.ok = true;

    const std::size_t len = bound.values.size();
    std::size_t wlen = static_cast<std::size_t>(
        std::ceil(std::clamp(window_frac, 1e-9, 1.0) * static_cast<double>(len)));
    wlen = std::clamp<std::size_t>(wlen, 1, len);
    out.tail_max = kernels::max_value(
        std::span<const double>(bound.values).subspan(len - wlen, wlen));
    out.vanishing = out.tail_max <= zero_tol;
    return out;
}

verdict compare_berinde_def25(std::span<const double> a, std::span<const double> b,
                              double la, double lb, const compare_options& opts) {
    if (a.empty() || b.empty())
        throw input_error("compare_berinde_def25: empty sequence");
    if (a.size() != b.size())
        throw input_error("compare_berinde_def25: length mismatch");
    if (!std::isfinite(la) || !std::isfinite(lb))
        throw input_error("compare_berinde_def25: limits must be finite");

    std::vector<double> da(a.size()), db(b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        da[k] = std::fabs(a[k] - la);
        db[k] = std::fabs(b[k] - lb);
    }
    error_trace ea(1, std::move(da));
    error_trace eb(1, std::move(db));
    aligned_view v = align_and_floor(ea, eb, opts.estimator.floor, "compare_berinde_def25");
    std::vector<xreal> r(v.a.size());
    kernels::ratio_map(v.a, v.b, r);
    verdict out = classify_def25(r, v.start, opts.estimator, "berinde25");
    out.truncation_index = v.truncation_index;
    return out;
}

verdict compare_berinde_def27(const error_trace& e1, const error_trace& e2,
                              const bound_trace& b1, const bound_trace& b2,
                              const compare_options& opts) {
    const double ztol = opts.estimator.zero_tol;
    const double wf = opts.estimator.window_frac;
    const bound_check c1 = validate_bounds(e1, b1, ztol, wf);
    const bound_check c2 = validate_bounds(e2, b2, ztol, wf);
    for (const auto* c : {&c1, &c2}) {
        if (!c->ok) {
            const char* side = c == &c1 ? "left" : "right";
            throw input_error(std::string("compare_berinde_def27: ") + side +
                              " bound fails " + to_string(c->failed) + " at n=" +
                              std::to_string(c->first_bad_index));
        }
    }
    if (opts.require_bounds_vanish) {
        for (const auto* c : {&c1, &c2}) {
            if (!c->vanishing) {
                const char* side = c == &c1 ? "left" : "right";
                throw input_error(std::string("compare_berinde_def27: ") + side +
                                  " bound tail max " + std::to_string(c->tail_max) +
                                  " has not dropped below zero_tol " + std::to_string(ztol));
            }
        }
    }

    aligned_view v = align_views(b1.start_index, b1.values, b2.start_index, b2.values,
                                 "compare_berinde_def27");
    std::vector<xreal> r(v.a.size());
    kernels::ratio_map(v.a, v.b, r);
    verdict out = classify_def25(r, v.start, opts.estimator, "berinde27");
    out.notes = "bound-mediated: the ratio test ran on the bound sequences, not the errors; " +
                out.notes;
    return out;
}

verdict compare_popescu(const error_trace& e1, const error_trace& e2,
                        const compare_options& opts) {
    aligned_view v = align_and_floor(e1, e2, opts.estimator.floor, "compare_popescu");
    std::vector<xreal> r(v.a.size());
    kernels::ratio_map(v.a, v.b, r);
    verdict out = classify_def25(r, v.start, opts.estimator, "popescu");
    out.truncation_index = v.truncation_index;
    return out;
}

verdict compare_rhoades(const error_trace& e1, const error_trace& e2,
                        const compare_options& opts) {
    aligned_view v = align_and_floor(e1, e2, opts.estimator.floor, "compare_rhoades");
    const bool left = kernels::pointwise_le(v.a, v.b);
    const bool right = kernels::pointwise_le(v.b, v.a);
    verdict out;
    out.comparator = "rhoades";
    out.truncation_index = v.truncation_index;
    if (left && right) {
        out.rel = relation::same_rate;
        out.notes = "error sequences coincide on the overlap";
    } else if (left) {
        out.rel = relation::left_better;
        out.notes = "e_left <= e_right at every index of the overlap";
    } else if (right) {
        out.rel = relation::right_better;
        out.notes = "e_right <= e_left at every index of the overlap";
    } else {
        out.rel = relation::neither;
        out.notes = "each side exceeds the other somewhere in the overlap";
    }
    return out;
}

namespace {

struct finiteness {
    bool finite = false;
    tail_estimate sup, inf;
};

// Scale-invariant finiteness call on a tail window: infinite entries or a
// second half that has outgrown the first half read as limsup = infinity.
// Windows shorter than 4 entries skip the growth probe.
constexpr double growth_factor = 1.02;

finiteness classify_finite(std::span<const xreal> ratio, std::int64_t start,
                           const estimator_config& est) {
    finiteness f;
    f.sup = estimate_tail(ratio, tail_kind::limsup, est.window_frac, est.limit_tol, start);
    f.inf = estimate_tail(ratio, tail_kind::liminf, est.window_frac, est.limit_tol, start);
    if (f.sup.value.is_infinite()) return f;

    const std::size_t len = ratio.size();
    const std::size_t wlen = f.sup.window_len;
    const std::size_t off = len - wlen;
    if (wlen >= 4) {
        const std::size_t half = wlen / 2;
        const auto first = kernels::minmax(ratio.subspan(off, half));
        const auto second = kernels::minmax(ratio.subspan(off + half, wlen - half));
        if (second.finite_max > growth_factor * first.finite_max) return f;
    }
    f.finite = true;
    return f;
}

} // namespace

verdict compare_zalinescu(const error_trace& e1, const error_trace& e2,
                          const compare_options& opts) {
    aligned_view v = align_and_floor(e1, e2, opts.estimator.floor, "compare_zalinescu");
    std::vector<xreal> fwd(v.a.size()), rev(v.a.size());
    kernels::ratio_map(v.a, v.b, fwd);
    kernels::ratio_map(v.b, v.a, rev);

    const finiteness lf = classify_finite(fwd, v.start, opts.estimator);
    const finiteness rf = classify_finite(rev, v.start, opts.estimator);

    verdict out;
    out.comparator = "zalinescu";
    out.truncation_index = v.truncation_index;
    out.evidence = {lf.sup, lf.inf, rf.sup};
    std::ostringstream notes;
    if (lf.finite && rf.finite) {
        out.rel = relation::same_rate;
        notes << "both directed relations hold; alpha witnesses "
              << format_value(xreal(lf.sup.value.value() * (1.0 + opts.alpha_slack)))
              << " (forward) and "
              << format_value(xreal(rf.sup.value.value() * (1.0 + opts.alpha_slack)))
              << " (reverse)";
    } else if (lf.finite) {
        out.rel = relation::left_better;
        notes << "forward ratio limsup " << format_value(lf.sup.value)
              << " finite; alpha witness "
              << format_value(xreal(lf.sup.value.value() * (1.0 + opts.alpha_slack)));
    } else if (rf.finite) {
        out.rel = relation::right_better;
        notes << "reverse ratio limsup " << format_value(rf.sup.value)
              << " finite; alpha witness "
              << format_value(xreal(rf.sup.value.value() * (1.0 + opts.alpha_slack)));
    } else {
        out.rel = relation::neither;
        notes << "both ratio limsups read as infinite";
    }
    out.notes = notes.str();
    return out;
}

} // namespace ratecomp
