#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ratecomp/adversary.hpp"
#include "ratecomp/compare.hpp"

using namespace ratecomp;

namespace {

// The unit fixtures run at horizon 1000, where tails like 1/n sit near 1e-3;
// a limit tolerance of 1e-2 separates them cleanly from order-one limits.
compare_options unit_opts() {
    compare_options o;
    o.estimator.limit_tol = 1e-2;
    return o;
}

std::vector<double> seq_of(std::size_t n, auto fn) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = fn(static_cast<double>(k + 1));
    return v;
}

error_trace errors_of(std::size_t n, auto fn) { return error_trace(1, seq_of(n, fn)); }

error_trace example1_x(std::size_t n) {
    return errors_of(n, [](double k) {
        return static_cast<long long>(k) % 2 == 1 ? 1.0 / k : 1.0 / (2.0 * k);
    });
}

error_trace example1_y(std::size_t n) {
    return errors_of(n, [](double k) {
        return static_cast<long long>(k) % 2 == 1 ? 1.0 / (2.0 * k) : 1.0 / k;
    });
}

} // namespace

TEST_CASE("def 2.5: 1/n^2 vs 1/n, constant multiple, and the reverse") {
    const auto opts = unit_opts();
    const auto sq = seq_of(1000, [](double k) { return 1.0 / (k * k); });
    const auto ha = seq_of(1000, [](double k) { return 1.0 / k; });
    const auto two = seq_of(1000, [](double k) { return 2.0 / k; });

    CHECK(compare_berinde_def25(sq, ha, 0.0, 0.0, opts).rel == relation::left_faster);
    CHECK(compare_berinde_def25(ha, sq, 0.0, 0.0, opts).rel == relation::right_faster);

    const verdict same = compare_berinde_def25(two, ha, 0.0, 0.0, opts);
    CHECK(same.rel == relation::same_rate);
    // The limit estimate sits at 2.
    for (const auto& e : same.evidence)
        if (e.kind == tail_kind::limit) CHECK(e.value.value() == doctest::Approx(2.0));
}

TEST_CASE("def 2.5 handles nonzero limits") {
    const auto opts = unit_opts();
    // a_n = 3 + 1/n^2 -> 3, b_n = 5 - 1/n -> 5.
    const auto a = seq_of(1000, [](double k) { return 3.0 + 1.0 / (k * k); });
    const auto b = seq_of(1000, [](double k) { return 5.0 - 1.0 / k; });
    CHECK(compare_berinde_def25(a, b, 3.0, 5.0, opts).rel == relation::left_faster);
}

TEST_CASE("def 2.5 rejects bad input") {
    const std::vector<double> a{1.0, 2.0};
    const std::vector<double> b{1.0};
    CHECK_THROWS_AS(compare_berinde_def25(a, b, 0.0, 0.0), input_error);
    CHECK_THROWS_AS(compare_berinde_def25({}, {}, 0.0, 0.0), input_error);
    CHECK_THROWS_AS(compare_berinde_def25(a, a, std::nan(""), 0.0), input_error);
}

TEST_CASE("def 2.5 antisymmetry on random sequence pairs") {
    const auto opts = unit_opts();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int rep = 0; rep < 60; ++rep) {
        const double px = u(rng);
        const double py = u(rng);
        const double sx = u(rng);
        const double sy = u(rng);
        const auto a = seq_of(800, [&](double k) { return sx / std::pow(k, px); });
        const auto b = seq_of(800, [&](double k) { return sy / std::pow(k, py); });
        const relation fwd = compare_berinde_def25(a, b, 0.0, 0.0, opts).rel;
        const relation rev = compare_berinde_def25(b, a, 0.0, 0.0, opts).rel;
        CHECK((fwd == relation::left_faster) == (rev == relation::right_faster));
        CHECK((fwd == relation::right_faster) == (rev == relation::left_faster));
        if (fwd == relation::same_rate && rev != relation::inconclusive)
            CHECK(rev == relation::same_rate);
    }
}

TEST_CASE("validate_bounds: certificate and violations") {
    const error_trace e(1, {0.5, 0.25});

    const bound_check ok = validate_bounds(e, bound_trace(1, {1.0, 0.5}), 0.2);
    CHECK(ok.ok);
    CHECK(ok.failed == bound_condition::none);

    const bound_check dom = validate_bounds(e, bound_trace(1, {0.4, 0.5}), 0.2);
    CHECK(!dom.ok);
    CHECK(dom.failed == bound_condition::domination);
    CHECK(dom.first_bad_index == 1);

    const bound_check pos = validate_bounds(e, bound_trace(1, {1.0, 0.0}), 0.2);
    CHECK(!pos.ok);
    CHECK(pos.failed == bound_condition::positivity);
    CHECK(pos.first_bad_index == 2);
}

TEST_CASE("validate_bounds reports vanishing without requiring it") {
    const auto e = errors_of(1000, [](double k) { return 0.5 / k; });
    const bound_check shrinking =
        validate_bounds(e, bound_trace(1, seq_of(1000, [](double k) { return 1.0 / k; })), 0.01);
    CHECK(shrinking.ok);
    CHECK(shrinking.vanishing); // tail max ~ 1/801 < 0.01

    const bound_check constant =
        validate_bounds(e, bound_trace(1, std::vector<double>(1000, 2.0)), 0.01);
    CHECK(constant.ok); // domination and positivity hold
    CHECK(!constant.vanishing);
    CHECK(constant.tail_max == 2.0);
}

TEST_CASE("def 2.7 compares the bounds, not the errors") {
    const auto opts = unit_opts();
    const auto e = errors_of(1000, [](double k) { return 1.0 / k; });

    auto [a, b] = synthesize_prop1(e, e);
    const verdict fwd = compare_berinde_def27(e, e, a, b, opts);
    CHECK(fwd.rel == relation::left_faster);
    const verdict rev = compare_berinde_def27(e, e, b, a, opts);
    CHECK(rev.rel == relation::right_faster);

    // A shared bound forces same_rate whatever the errors do.
    const bound_trace shared(1, seq_of(1000, [](double k) { return 2.0 / k + 1.0 / k; }));
    const verdict same = compare_berinde_def27(e, e, shared, shared, opts);
    CHECK(same.rel == relation::same_rate);
}

TEST_CASE("def 2.7 rejects violated bounds with the violation spelled out") {
    const error_trace e(1, {0.5, 0.25});
    const bound_trace bad(1, {0.4, 0.5});
    const bound_trace good(1, {1.0, 0.5});
    compare_options opts = unit_opts();
    opts.require_bounds_vanish = false;
    CHECK_THROWS_WITH_AS(compare_berinde_def27(e, e, bad, good, opts),
                         doctest::Contains("domination"), input_error);
    CHECK_THROWS_WITH_AS(compare_berinde_def27(e, e, good, bad, opts),
                         doctest::Contains("right"), input_error);
}

TEST_CASE("def 2.7 verdict depends only on the bounds") {
    const auto opts = unit_opts();
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    const auto b1 = bound_trace(1, seq_of(600, [](double k) { return 2.0 / k; }));
    const auto b2 = bound_trace(1, seq_of(600, [](double k) { return 2.0 / (k * k); }));
    relation first = relation::inconclusive;
    for (int rep = 0; rep < 20; ++rep) {
        // Any error traces dominated by the same bounds yield one verdict.
        const double cx = u(rng);
        const double cy = u(rng);
        const auto e1 = errors_of(600, [&](double k) { return cx * 2.0 / k; });
        const auto e2 = errors_of(600, [&](double k) { return cy * 2.0 / (k * k); });
        const verdict v = compare_berinde_def27(e1, e2, b1, b2, opts);
        if (rep == 0)
            first = v.rel;
        else
            CHECK(v.rel == first);
    }
    CHECK(first == relation::right_faster); // bounds ratio k -> infinity
}

TEST_CASE("popescu: geometric separation, self-comparison, and oscillation") {
    const auto opts = unit_opts();
    const auto p5 = errors_of(60, [](double k) { return std::pow(0.5, k); });
    const auto p75 = errors_of(60, [](double k) { return std::pow(0.75, k); });
    CHECK(compare_popescu(p5, p75, opts).rel == relation::left_faster);

    const verdict self = compare_popescu(p75, p75, opts);
    CHECK(self.rel == relation::same_rate);
    for (const auto& e : self.evidence)
        if (e.kind == tail_kind::limit) {
            CHECK(e.value == xreal(1.0));
            CHECK(e.oscillation == 0.0);
        }

    const verdict osc = compare_popescu(example1_x(1000), example1_y(1000), opts);
    CHECK(osc.rel == relation::inconclusive);
}

TEST_CASE("popescu(e, e) is same_rate with l exactly 1, zeros included") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        std::vector<double> vals(200);
        for (auto& v : vals) v = rng() % 4 == 0 ? 0.0 : u(rng);
        const error_trace e(1, vals);
        const verdict v = compare_popescu(e, e, unit_opts());
        CHECK(v.rel == relation::same_rate);
    }
    // All-zero traces: the 0/0 convention carries the whole comparison.
    const error_trace z(1, std::vector<double>(50, 0.0));
    CHECK(compare_popescu(z, z, unit_opts()).rel == relation::same_rate);
}

TEST_CASE("popescu truncates at the underflow floor") {
    // 0.5^(n-1) underflows past 1e-300 near n = 998.
    const auto g = errors_of(1500, [](double k) { return std::pow(0.5, k - 1.0); });
    const auto h = errors_of(1500, [](double k) { return std::pow(0.9, k - 1.0); });
    const verdict v = compare_popescu(g, h, unit_opts());
    CHECK(v.rel == relation::left_faster);
    CHECK(v.truncation_index > 0);
    CHECK(v.truncation_index < 1100);
}

TEST_CASE("rhoades: pointwise domination") {
    const auto opts = unit_opts();
    const auto half = errors_of(100, [](double k) { return 1.0 / (2.0 * k); });
    const auto harmonic = errors_of(100, [](double k) { return 1.0 / k; });
    CHECK(compare_rhoades(half, harmonic, opts).rel == relation::left_better);
    CHECK(compare_rhoades(harmonic, half, opts).rel == relation::right_better);
    CHECK(compare_rhoades(harmonic, harmonic, opts).rel == relation::same_rate);
    CHECK(compare_rhoades(example1_x(1000), example1_y(1000), opts).rel == relation::neither);
}

TEST_CASE("rhoades order check: better both ways means equal") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a(50), b(50);
        for (std::size_t k = 0; k < a.size(); ++k) {
            a[k] = u(rng);
            b[k] = rng() % 2 == 0 ? a[k] : u(rng);
        }
        const verdict v = compare_rhoades(error_trace(1, a), error_trace(1, b), unit_opts());
        if (v.rel == relation::same_rate) CHECK(a == b);
    }
}

TEST_CASE("zalinescu: the alternating pair has the same rate, bounds 1/2 and 2") {
    const verdict v = compare_zalinescu(example1_x(10000), example1_y(10000), unit_opts());
    CHECK(v.rel == relation::same_rate);
    REQUIRE(v.evidence.size() >= 2);
    CHECK(v.evidence[0].kind == tail_kind::limsup);
    CHECK(v.evidence[0].value == xreal(2.0));
    CHECK(v.evidence[1].kind == tail_kind::liminf);
    CHECK(v.evidence[1].value == xreal(0.5));
}

TEST_CASE("zalinescu: one-sided domination and its reverse") {
    const auto opts = unit_opts();
    const auto sq = errors_of(1000, [](double k) { return 1.0 / (k * k); });
    const auto ha = errors_of(1000, [](double k) { return 1.0 / k; });
    const verdict v = compare_zalinescu(sq, ha, opts);
    CHECK(v.rel == relation::left_better); // forward ratio 1/n stays bounded
    const verdict r = compare_zalinescu(ha, sq, opts);
    CHECK(r.rel == relation::right_better); // forward ratio n grows
}

TEST_CASE("zalinescu same_rate holds iff both directed relations hold") {
    const auto opts = unit_opts();
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int rep = 0; rep < 40; ++rep) {
        const double p = u(rng);
        const double q = u(rng);
        const auto a = errors_of(500, [&](double k) { return std::pow(k, -p); });
        const auto b = errors_of(500, [&](double k) { return std::pow(k, -q); });
        const relation ab = compare_zalinescu(a, b, opts).rel;
        const relation ba = compare_zalinescu(b, a, opts).rel;
        const bool fwd_better = ab == relation::left_better || ab == relation::same_rate;
        const bool rev_better = ba == relation::left_better || ba == relation::same_rate;
        CHECK((ab == relation::same_rate) == (fwd_better && rev_better));
        // And the two calls agree with each other mirrored.
        CHECK((ab == relation::same_rate) == (ba == relation::same_rate));
        CHECK((ab == relation::left_better) == (ba == relation::right_better));
    }
}

TEST_CASE("zalinescu: equal traces with zeros rate the same by convention") {
    std::vector<double> vals(100);
    for (std::size_t k = 0; k < vals.size(); ++k)
        vals[k] = k % 3 == 0 ? 0.0 : 1.0 / static_cast<double>(k + 1);
    const error_trace e(1, vals);
    CHECK(compare_zalinescu(e, e, unit_opts()).rel == relation::same_rate);
}

TEST_CASE("zalinescu is scale robust") {
    const auto x = example1_x(2000);
    const auto ha = errors_of(2000, [](double k) { return 1.0 / k; });
    for (const double c : {1e-6, 1.0, 1e6}) {
        std::vector<double> scaled = x.values;
        for (auto& v : scaled) v *= c;
        const verdict v = compare_zalinescu(error_trace(1, scaled), ha, unit_opts());
        CHECK(v.rel == relation::same_rate);
    }
    // One-sided relations keep their direction under scaling too.
    const auto sq = errors_of(2000, [](double k) { return 1.0 / (k * k); });
    for (const double c : {1e-6, 1.0, 1e6}) {
        std::vector<double> scaled = sq.values;
        for (auto& v : scaled) v *= c;
        CHECK(compare_zalinescu(error_trace(1, scaled), ha, unit_opts()).rel ==
              relation::left_better);
    }
}
