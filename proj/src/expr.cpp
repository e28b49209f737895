#include "ratecomp/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace ratecomp {

namespace detail {

enum class op2 { add, sub, mul, div, pow };
enum class op1 { neg, sqrt, exp, log, sin, cos, abs };

struct expr_node {
    enum class tag { number, var_n, var_x, unary, binary } t;
    double number = 0.0;
    std::size_t x_index = 0; // 1..9
    op1 u{};
    op2 b{};
    std::shared_ptr<const expr_node> lhs, rhs;
};

using node_ptr = std::shared_ptr<const expr_node>;

namespace {

node_ptr make_number(double v) {
    auto n = std::make_shared<expr_node>();
    n->t = expr_node::tag::number;
    n->number = v;
    return n;
}

node_ptr make_var_n() {
    auto n = std::make_shared<expr_node>();
    n->t = expr_node::tag::var_n;
    return n;
}

node_ptr make_var_x(std::size_t idx) {
    auto n = std::make_shared<expr_node>();
    n->t = expr_node::tag::var_x;
    n->x_index = idx;
    return n;
}

node_ptr make_unary(op1 u, node_ptr child) {
    auto n = std::make_shared<expr_node>();
    n->t = expr_node::tag::unary;
    n->u = u;
    n->lhs = std::move(child);
    return n;
}

node_ptr make_binary(op2 b, node_ptr l, node_ptr r) {
    auto n = std::make_shared<expr_node>();
    n->t = expr_node::tag::binary;
    n->b = b;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

double apply1(op1 u, double v) {
    switch (u) {
        case op1::neg: return -v;
        case op1::sqrt: return std::sqrt(v);
        case op1::exp: return std::exp(v);
        case op1::log: return std::log(v);
        case op1::sin: return std::sin(v);
        case op1::cos: return std::cos(v);
        case op1::abs: return std::fabs(v);
    }
    return 0.0;
}

double apply2(op2 b, double l, double r) {
    switch (b) {
        case op2::add: return l + r;
        case op2::sub: return l - r;
        case op2::mul: return l * r;
        case op2::div: return l / r;
        case op2::pow: return std::pow(l, r);
    }
    return 0.0;
}

double eval_node(const expr_node& n, double nvar, std::span<const double> x) {
    switch (n.t) {
        case expr_node::tag::number: return n.number;
        case expr_node::tag::var_n: return nvar;
        case expr_node::tag::var_x: return x[n.x_index - 1];
        case expr_node::tag::unary: return apply1(n.u, eval_node(*n.lhs, nvar, x));
        case expr_node::tag::binary:
            return apply2(n.b, eval_node(*n.lhs, nvar, x), eval_node(*n.rhs, nvar, x));
    }
    return 0.0;
}

void scan_vars(const expr_node& n, bool& uses_n, std::size_t& max_x) {
    switch (n.t) {
        case expr_node::tag::number: return;
        case expr_node::tag::var_n: uses_n = true; return;
        case expr_node::tag::var_x: max_x = std::max(max_x, n.x_index); return;
        case expr_node::tag::unary: scan_vars(*n.lhs, uses_n, max_x); return;
        case expr_node::tag::binary:
            scan_vars(*n.lhs, uses_n, max_x);
            scan_vars(*n.rhs, uses_n, max_x);
            return;
    }
}

// Affine form c*x1 + b, or nullopt. Constant subtrees fold to (0, value).
std::optional<std::pair<double, double>> affine(const expr_node& n) {
    using form = std::pair<double, double>;
    switch (n.t) {
        case expr_node::tag::number: return form{0.0, n.number};
        case expr_node::tag::var_n: return std::nullopt;
        case expr_node::tag::var_x:
            if (n.x_index == 1) return form{1.0, 0.0};
            return std::nullopt;
        case expr_node::tag::unary: {
            auto c = affine(*n.lhs);
            if (!c) return std::nullopt;
            if (n.u == op1::neg) return form{-c->first, -c->second};
            if (c->first != 0.0) return std::nullopt; // nonlinear function of x1
            return form{0.0, apply1(n.u, c->second)};
        }
        case expr_node::tag::binary: {
            auto l = affine(*n.lhs);
            auto r = affine(*n.rhs);
            if (!l || !r) return std::nullopt;
            switch (n.b) {
                case op2::add: return form{l->first + r->first, l->second + r->second};
                case op2::sub: return form{l->first - r->first, l->second - r->second};
                case op2::mul:
                    if (l->first == 0.0) return form{l->second * r->first, l->second * r->second};
                    if (r->first == 0.0) return form{r->second * l->first, r->second * l->second};
                    return std::nullopt;
                case op2::div:
                    if (r->first != 0.0 || r->second == 0.0) return std::nullopt;
                    return form{l->first / r->second, l->second / r->second};
                case op2::pow:
                    if (l->first != 0.0 || r->first != 0.0) return std::nullopt;
                    return form{0.0, apply2(op2::pow, l->second, r->second)};
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

struct parser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    [[noreturn]] void fail(std::size_t at, const std::string& msg) { throw expr_error(at, msg); }

    node_ptr parse_expr() {
        node_ptr lhs = parse_term();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') break;
            ++pos;
            lhs = make_binary(c == '+' ? op2::add : op2::sub, lhs, parse_term());
        }
        return lhs;
    }

    node_ptr parse_term() {
        node_ptr lhs = parse_factor();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') break;
            ++pos;
            lhs = make_binary(c == '*' ? op2::mul : op2::div, lhs, parse_factor());
        }
        return lhs;
    }

    node_ptr parse_factor() {
        node_ptr base = parse_base();
        if (peek() == '^') {
            ++pos;
            return make_binary(op2::pow, base, parse_factor());
        }
        return base;
    }

    node_ptr parse_base() {
        if (at_end()) fail(src.size(), "unexpected end of input");
        const char c = src[pos];
        if (c == '-') {
            ++pos;
            return make_unary(op1::neg, parse_base());
        }
        if (c == '(') {
            ++pos;
            node_ptr inner = parse_expr();
            if (peek() != ')') fail(std::min(pos, src.size()), "expected ')'");
            ++pos;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        fail(pos, std::string("unexpected character '") + c + "'");
    }

    node_ptr parse_number() {
        const std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos < src.size() && src[pos] == '.') {
            if (pos + 1 >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos + 1])))
                fail(pos, "malformed number: digit required after '.'");
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        // Exponent is consumed only when a digit actually follows, so that
        // "2e" lexes as the number 2 followed by an identifier.
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t probe = pos + 1;
            if (probe < src.size() && (src[probe] == '+' || src[probe] == '-')) ++probe;
            if (probe < src.size() && std::isdigit(static_cast<unsigned char>(src[probe]))) {
                ++probe;
                while (probe < src.size() && std::isdigit(static_cast<unsigned char>(src[probe])))
                    ++probe;
                pos = probe;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(src.data() + start, src.data() + pos, value);
        if (res.ec != std::errc{} || res.ptr != src.data() + pos)
            fail(start, "malformed number");
        return make_number(value);
    }

    node_ptr parse_ident() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        const std::string_view name = src.substr(start, pos - start);

        static constexpr std::array<std::pair<std::string_view, op1>, 6> functions{{
            {"sqrt", op1::sqrt},
            {"exp", op1::exp},
            {"log", op1::log},
            {"sin", op1::sin},
            {"cos", op1::cos},
            {"abs", op1::abs},
        }};
        for (const auto& [fname, fop] : functions) {
            if (name == fname) {
                if (peek() != '(')
                    fail(std::min(pos, src.size()),
                         "function '" + std::string(name) + "' requires a parenthesized argument");
                ++pos;
                node_ptr arg = parse_expr();
                if (peek() != ')') fail(std::min(pos, src.size()), "expected ')'");
                ++pos;
                return make_unary(fop, arg);
            }
        }

        node_ptr var;
        if (name == "n") {
            var = make_var_n();
        } else if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '9') {
            var = make_var_x(static_cast<std::size_t>(name[1] - '0'));
        } else {
            fail(start, "unknown identifier '" + std::string(name) + "'");
        }
        if (peek() == '(')
            fail(pos, "variable '" + std::string(name) + "' is not a function");
        return var;
    }
};

} // namespace
} // namespace detail

expression expression::parse(std::string_view src) {
    detail::parser p{src};
    if (p.at_end()) throw expr_error(0, "empty expression");
    detail::node_ptr root = p.parse_expr();
    if (!p.at_end()) p.fail(p.pos, "unexpected trailing input");
    expression e;
    e.root_ = std::move(root);
    e.source_ = std::string(src);
    detail::scan_vars(*e.root_, e.uses_n_, e.max_x_);
    return e;
}

double expression::eval(double n, std::span<const double> x) const {
    if (!root_) throw input_error("evaluating an empty expression");
    if (max_x_ > x.size())
        throw input_error("expression references x" + std::to_string(max_x_) +
                          " but only " + std::to_string(x.size()) + " coordinates are bound");
    return detail::eval_node(*root_, n, x);
}

std::optional<std::pair<double, double>> expression::linear_in_x1() const {
    if (!root_) return std::nullopt;
    if (uses_n_ || max_x_ > 1) return std::nullopt;
    return detail::affine(*root_);
}

} // namespace ratecomp
