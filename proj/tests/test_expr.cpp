#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ratecomp/expr.hpp"

using namespace ratecomp;

namespace {

struct fixed_case {
    const char* src;
    double n;
    std::vector<double> x;
    double expected; // exact in IEEE double
};

// Hand-derived; every expected value is exactly representable and exactly
// computed by the evaluation path (integer pow, exact dyadic arithmetic).
const std::vector<fixed_case> fixed_cases = {
    {"2+3*4", 0, {}, 14.0},
    {"(2+3)*4", 0, {}, 20.0},
    {"2^3^2", 0, {}, 512.0}, // right-associative: 2^(3^2)
    {"-2^2", 0, {}, 4.0},    // unary minus binds inside the base: (-2)^2
    {"2-3-4", 0, {}, -5.0},
    {"12/4/3", 0, {}, 1.0},
    {"x1/2", 0, {1.0}, 0.5},
    {"1/(n+1)", 3, {}, 0.25},
    {"sqrt(abs(x1))*cos(0)", 0, {-4.0}, 2.0},
    {"exp(0)", 0, {}, 1.0},
    {"log(1)", 0, {}, 0.0},
    {"sin(0)", 0, {}, 0.0},
    {"cos(0)", 0, {}, 1.0},
    {"abs(-3)", 0, {}, 3.0},
    {"2e3", 0, {}, 2000.0},
    {"2.5e-1", 0, {}, 0.25},
    {"0.5*4", 0, {}, 2.0},
    {"x2^2 + x1", 0, {1.0, 3.0}, 10.0},
    {"n^2 - n", 5, {}, 20.0},
    {"(1+2)*(3+4)", 0, {}, 21.0},
    {"2*x1^2", 0, {3.0}, 18.0},
    {"-x1", 0, {7.0}, -7.0},
    {"--5", 0, {}, 5.0},
    {"4^0.5", 0, {}, 2.0},
    {"1e2 + 1E2", 0, {}, 200.0},
    {"8^2", 0, {}, 64.0},
    {"abs(2-5*2)", 0, {}, 8.0},
    {"sqrt(x1*x1)", 0, {-3.0}, 3.0},
    {"cos(0)+sin(0)*1000", 0, {}, 1.0},
    {"(n - 1)/(n + 1)", 3, {}, 0.5},
    {"x3*x1 - x2", 0, {2.0, 5.0, 4.0}, 3.0},
    {"2^-1", 0, {}, 0.5},
    {"(-1)^n", 11, {}, -1.0},
};

struct malformed_case {
    const char* src;
    std::size_t offset; // 0-based byte offset of the reported error
};

const std::vector<malformed_case> malformed_cases = {
    {"", 0},       // empty input
    {"2+", 2},     // dangling operator
    {"(2+3", 4},   // unclosed parenthesis
    {"2++3", 2},   // no unary plus
    {"foo(2)", 0}, // unknown identifier
    {"x10", 0},    // x-index out of range lexes as one identifier
    {"sqrt", 4},   // function without argument list
    {"n(3)", 1},   // variable applied as a function
    {"2*)3", 2},   // stray closing parenthesis
    {"1.2.3", 3},  // trailing garbage after a number
    {"sin 0", 4},  // function argument must be parenthesized
    {"2 3", 2},    // two terms with no operator
    {"2.", 1},     // fraction without digits
};

} // namespace

TEST_CASE("fixed expression/value pairs evaluate exactly") {
    for (const auto& c : fixed_cases) {
        CAPTURE(c.src);
        const expression e = expression::parse(c.src);
        CHECK(e.eval(c.n, c.x) == c.expected);
    }
}

TEST_CASE("malformed expressions report positioned errors") {
    for (const auto& c : malformed_cases) {
        CAPTURE(c.src);
        try {
            (void)expression::parse(c.src);
            FAIL_CHECK("expected a parse error for: " << c.src);
        } catch (const expr_error& err) {
            CHECK(err.offset() == c.offset);
        }
    }
}

TEST_CASE("parse-evaluate is deterministic across repeated runs") {
    for (const auto& c : fixed_cases) {
        const expression e1 = expression::parse(c.src);
        const expression e2 = expression::parse(c.src);
        for (int rep = 0; rep < 3; ++rep)
            CHECK(e1.eval(c.n, c.x) == e2.eval(c.n, c.x));
    }
}

TEST_CASE("whitespace is insignificant") {
    const expression a = expression::parse("1/(n+1)");
    const expression b = expression::parse("  1 / ( n + 1 )  ");
    CHECK(a.eval(3.0) == b.eval(3.0));
}

TEST_CASE("variable accounting") {
    CHECK(expression::parse("n*n").uses_n());
    CHECK(!expression::parse("x1+x3").uses_n());
    CHECK(expression::parse("x1+x3").max_x() == 3);
    CHECK(expression::parse("7").max_x() == 0);
    CHECK_THROWS_AS(expression::parse("x2").eval(0.0, std::vector<double>{1.0}), input_error);
}

TEST_CASE("evaluation may go non-finite; callers decide") {
    const expression e = expression::parse("1/n");
    CHECK(std::isinf(e.eval(0.0)));
    const expression g = expression::parse("log(n)");
    CHECK(std::isnan(g.eval(-1.0)));
}

TEST_CASE("affine recognition in x1") {
    auto form = expression::parse("x1/2").linear_in_x1();
    REQUIRE(form.has_value());
    CHECK(form->first == 0.5);
    CHECK(form->second == 0.0);

    form = expression::parse("x1/2 + 1").linear_in_x1();
    REQUIRE(form.has_value());
    CHECK(form->first == 0.5);
    CHECK(form->second == 1.0);

    form = expression::parse("3 - 2*(1 - x1/4)").linear_in_x1();
    REQUIRE(form.has_value());
    CHECK(form->first == 0.5);
    CHECK(form->second == 1.0);

    CHECK(!expression::parse("sin(x1)").linear_in_x1().has_value());
    CHECK(!expression::parse("x1*x1").linear_in_x1().has_value());
    CHECK(!expression::parse("x1 + n").linear_in_x1().has_value());
    CHECK(!expression::parse("x1 + x2").linear_in_x1().has_value());
    // Constant subtrees fold, including through functions.
    form = expression::parse("cos(0)*x1 + sqrt(4)").linear_in_x1();
    REQUIRE(form.has_value());
    CHECK(form->first == 1.0);
    CHECK(form->second == 2.0);
}
