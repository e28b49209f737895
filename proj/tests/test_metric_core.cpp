#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ratecomp/metric.hpp"

using namespace ratecomp;

TEST_CASE("distance: identity, 3-4-5, chebyshev by hand") {
    CHECK(distance(point{3.0}, point{3.0}, metric_kind::euclidean) == 0.0);
    CHECK(distance(point{0.0, 0.0}, point{3.0, 4.0}, metric_kind::euclidean) == 5.0);
    // max(|1-4|, |-2-2|) = 4
    CHECK(distance(point{1.0, -2.0}, point{4.0, 2.0}, metric_kind::chebyshev) == 4.0);
    CHECK(distance(point{1.5}, point{-2.0}, metric_kind::absolute) == 3.5);
}

TEST_CASE("distance rejects dimension mismatches") {
    CHECK_THROWS_AS(distance(point{1.0}, point{1.0, 2.0}, metric_kind::euclidean),
                    input_error);
    CHECK_THROWS_AS(distance(point{1.0, 2.0}, point{1.0, 2.0}, metric_kind::absolute),
                    input_error);
}

TEST_CASE("metric axioms on random triples") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (metric_kind m : {metric_kind::euclidean, metric_kind::chebyshev}) {
        for (std::size_t dim : {1u, 2u, 5u}) {
            for (int rep = 0; rep < 200; ++rep) {
                std::vector<double> pc(dim), qc(dim), rc(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    pc[i] = u(rng);
                    qc[i] = u(rng);
                    rc[i] = u(rng);
                }
                point p(pc), q(qc), r(rc);
                const double dpq = distance(p, q, m);
                CHECK(dpq >= 0.0);
                CHECK(dpq == distance(q, p, m));
                CHECK(distance(p, p, m) == 0.0);
                // Rounding headroom on the triangle inequality.
                CHECK(dpq <= distance(p, r, m) + distance(r, q, m) + 1e-12);
            }
        }
    }
}

TEST_CASE("point and trace invariants") {
    CHECK_THROWS_AS(point(std::vector<double>{}), input_error);
    CHECK_THROWS_AS(point{std::nan("")}, input_error);
    CHECK_THROWS_AS(point{1.0 / 0.0}, input_error);
    CHECK_THROWS_AS(trace(0, 1, {1.0}), input_error);
    CHECK_THROWS_AS(trace(1, 1, {}), input_error);
    CHECK_THROWS_AS(trace::from_points(1, {point{1.0}, point{1.0, 2.0}}), input_error);

    const trace t = trace::from_points(3, {point{1.0, 2.0}, point{3.0, 4.0}});
    CHECK(t.size() == 2);
    CHECK(t.index_of(1) == 4);
    CHECK(t.point_at(1) == point{3.0, 4.0});
}

TEST_CASE("error_trace: values and preserved start index") {
    const trace t = trace::from_points(1, {point{1.0}, point{0.5}, point{0.25}});
    const error_trace e = make_error_trace(t, point{0.0}, metric_kind::absolute);
    CHECK(e.start_index == 1);
    CHECK(e.values == std::vector<double>{1.0, 0.5, 0.25});

    const trace c = trace::from_points(1, {point{2.0}, point{2.0}, point{2.0}});
    const error_trace ec = make_error_trace(c, point{2.0}, metric_kind::absolute);
    CHECK(ec.values == std::vector<double>{0.0, 0.0, 0.0});

    CHECK_THROWS_AS(make_error_trace(t, point{0.0, 0.0}, metric_kind::euclidean),
                    input_error);
}

TEST_CASE("error_trace of the alternating harmonic pair, first four indices") {
    // x_n = 1/n for odd n, 1/(2n) for even n; limit 0.
    std::vector<point> pts;
    for (int n = 1; n <= 4; ++n)
        pts.push_back(point{n % 2 == 1 ? 1.0 / n : 1.0 / (2.0 * n)});
    const error_trace e =
        make_error_trace(trace::from_points(1, pts), point{0.0}, metric_kind::absolute);
    CHECK(e.values[0] == 1.0);
    CHECK(e.values[1] == 0.25);
    CHECK(e.values[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(e.values[3] == 0.125);
}

TEST_CASE("error_trace is identically zero iff every point equals the limit") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double lim = u(rng);
        std::vector<point> pts;
        bool all_equal = true;
        for (int k = 0; k < 10; ++k) {
            const bool deviate = rng() % 3 == 0;
            all_equal = all_equal && !deviate;
            pts.push_back(point{deviate ? lim + 1e-6 : lim});
        }
        const error_trace e =
            make_error_trace(trace::from_points(1, pts), point{lim}, metric_kind::absolute);
        bool all_zero = true;
        for (double v : e.values) all_zero = all_zero && v == 0.0;
        CHECK(all_zero == all_equal);
    }
}

TEST_CASE("xratio conventions") {
    CHECK(xratio(0.0, 0.0) == xreal(1.0));
    CHECK(xratio(5.0, 0.0).is_infinite());
    CHECK(xratio(3.0, 4.0) == xreal(0.75));
    CHECK_THROWS_AS(xratio(-1.0, 1.0), input_error);
    CHECK_THROWS_AS(xratio(1.0, std::nan("")), input_error);
}

TEST_CASE("xratio never yields NaN") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 2000; ++rep) {
        const int pick = static_cast<int>(rng() % 4);
        auto draw = [&](int mode) {
            switch (mode) {
                case 0: return 0.0;
                case 1: return u(rng) * 1e-300; // denormal-adjacent
                case 2: return u(rng);
                default: return u(rng) * 1e300;
            }
        };
        const xreal r = xratio(draw(pick), draw(static_cast<int>(rng() % 4)));
        CHECK(!std::isnan(r.value()));
    }
}

TEST_CASE("ratio_trace: pointwise division with conventions") {
    const error_trace e1(1, {1.0, 0.5});
    const error_trace e2(1, {2.0, 2.0});
    const ratio_trace r = make_ratio_trace(e1, e2);
    CHECK(r.values[0] == xreal(0.5));
    CHECK(r.values[1] == xreal(0.25));

    const ratio_trace rc = make_ratio_trace(error_trace(1, {0.0, 1.0}),
                                            error_trace(1, {0.0, 0.0}));
    CHECK(rc.values[0] == xreal(1.0));
    CHECK(rc.values[1].is_infinite());
}

TEST_CASE("ratio_trace of the alternating pair alternates 2, 1/2") {
    std::vector<double> xs, ys;
    for (int n = 1; n <= 4; ++n) {
        xs.push_back(n % 2 == 1 ? 1.0 / n : 1.0 / (2.0 * n));
        ys.push_back(n % 2 == 1 ? 1.0 / (2.0 * n) : 1.0 / n);
    }
    const ratio_trace r = make_ratio_trace(error_trace(1, xs), error_trace(1, ys));
    CHECK(r.values[0] == xreal(2.0));
    CHECK(r.values[1] == xreal(0.5));
    CHECK(r.values[2] == xreal(2.0));
    CHECK(r.values[3] == xreal(0.5));
}

TEST_CASE("ratio_trace aligns by index and rejects empty overlaps") {
    const error_trace e1(1, {1.0, 2.0, 3.0});
    const error_trace e2(3, {30.0, 40.0});
    const ratio_trace r = make_ratio_trace(e1, e2);
    CHECK(r.start_index == 3);
    CHECK(r.size() == 1);
    CHECK(r.values[0] == xreal(0.1));

    CHECK_THROWS_AS(make_ratio_trace(error_trace(1, {1.0}), error_trace(5, {1.0})),
                    input_error);
}

TEST_CASE("ratio_trace(e, e) is identically one") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> vals;
        for (int k = 0; k < 40; ++k)
            vals.push_back(rng() % 5 == 0 ? 0.0 : u(rng));
        const error_trace e(1, vals);
        const ratio_trace r = make_ratio_trace(e, e);
        for (const xreal v : r.values) CHECK(v == xreal(1.0));
    }
}
