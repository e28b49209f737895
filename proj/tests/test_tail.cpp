#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ratecomp/compare.hpp"

using namespace ratecomp;

namespace {

std::vector<xreal> alternating(std::size_t n, double hi, double lo) {
    std::vector<xreal> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = xreal(k % 2 == 0 ? hi : lo);
    return v;
}

} // namespace

TEST_CASE("limsup of the alternating 2, 1/2 ratio is exactly 2") {
    const auto seq = alternating(1000, 2.0, 0.5);
    const tail_estimate e = estimate_tail(seq, tail_kind::limsup, 0.2, 1e-6);
    CHECK(e.value == xreal(2.0));
    CHECK(e.conclusive);
    CHECK(e.window_len == 200);
    CHECK(e.window_start == 801);
    CHECK(e.oscillation == 1.5);

    const tail_estimate lo = estimate_tail(seq, tail_kind::liminf, 0.2, 1e-6);
    CHECK(lo.value == xreal(0.5));
}

TEST_CASE("limit of a constant sequence is conclusive with zero oscillation") {
    const std::vector<xreal> seq(50, xreal(1.0));
    const tail_estimate e = estimate_tail(seq, tail_kind::limit, 0.2, 1e-6);
    CHECK(e.value == xreal(1.0));
    CHECK(e.oscillation == 0.0);
    CHECK(e.conclusive);
}

TEST_CASE("an infinite entry dominates the limsup and spoils the limit") {
    const std::vector<xreal> seq{xreal(1.0), xreal::infinity()};
    const tail_estimate sup = estimate_tail(seq, tail_kind::limsup, 1.0, 1e-6);
    CHECK(sup.value.is_infinite());
    const tail_estimate lim = estimate_tail(seq, tail_kind::limit, 1.0, 1e-6);
    CHECK(!lim.conclusive);
    const tail_estimate inf = estimate_tail(seq, tail_kind::liminf, 1.0, 1e-6);
    CHECK(inf.value == xreal(1.0)); // min over finite entries
}

TEST_CASE("window covers the final ceil(frac*len) entries") {
    std::vector<xreal> seq;
    for (int k = 1; k <= 10; ++k) seq.push_back(xreal(static_cast<double>(k)));
    // ceil(0.25 * 10) = 3 -> entries 8, 9, 10.
    const tail_estimate e = estimate_tail(seq, tail_kind::liminf, 0.25, 1e-6);
    CHECK(e.window_len == 3);
    CHECK(e.window_start == 8);
    CHECK(e.value == xreal(8.0));

    // start_index shifts the reported window position.
    const tail_estimate shifted = estimate_tail(seq, tail_kind::liminf, 0.25, 1e-6, 100);
    CHECK(shifted.window_start == 107);
}

TEST_CASE("all-infinite windows") {
    const std::vector<xreal> seq{xreal::infinity(), xreal::infinity()};
    CHECK(estimate_tail(seq, tail_kind::limsup, 1.0, 1e-6).value.is_infinite());
    CHECK(estimate_tail(seq, tail_kind::liminf, 1.0, 1e-6).value.is_infinite());
    CHECK(!estimate_tail(seq, tail_kind::limit, 1.0, 1e-6).conclusive);
}

TEST_CASE("estimate_tail input validation") {
    CHECK_THROWS_AS(estimate_tail({}, tail_kind::limit, 0.2, 1e-6), input_error);
    const std::vector<xreal> seq{xreal(1.0)};
    CHECK_THROWS_AS(estimate_tail(seq, tail_kind::limit, 0.0, 1e-6), input_error);
    CHECK_THROWS_AS(estimate_tail(seq, tail_kind::limit, 1.5, 1e-6), input_error);
    CHECK_NOTHROW(estimate_tail(seq, tail_kind::limit, 1.0, 1e-6));
}
