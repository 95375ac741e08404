#include "phasewig/exprlang.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace phasewig::exprlang {

namespace detail {

enum class Kind { Num, Variable, Neg, Add, Sub, Mul, Div, Pow, Fun };
enum class Func { Sin, Cos, Exp, Tanh };

struct Node {
    Kind kind;
    double value = 0.0;  // Num
    Var var = Var::Q;    // Variable
    int expo = 0;        // Pow
    Func fun = Func::Sin;
    NodeP a, b;

    static NodeP num(double v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Num;
        n->value = v;
        return n;
    }
    static NodeP variable(Var v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Variable;
        n->var = v;
        return n;
    }
};

bool is_num(const NodeP& n, double* v = nullptr) {
    if (n->kind != Kind::Num) return false;
    if (v) *v = n->value;
    return true;
}

bool is_num_eq(const NodeP& n, double x) {
    double v;
    return is_num(n, &v) && v == x;
}

NodeP mk_neg(const NodeP& a);

NodeP mk_add(const NodeP& a, const NodeP& b) {
    double x, y;
    if (is_num(a, &x) && is_num(b, &y)) return Node::num(x + y);
    if (is_num_eq(a, 0.0)) return b;
    if (is_num_eq(b, 0.0)) return a;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Add;
    n->a = a;
    n->b = b;
    return n;
}

NodeP mk_sub(const NodeP& a, const NodeP& b) {
    double x, y;
    if (is_num(a, &x) && is_num(b, &y)) return Node::num(x - y);
    if (is_num_eq(b, 0.0)) return a;
    if (is_num_eq(a, 0.0)) return mk_neg(b);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sub;
    n->a = a;
    n->b = b;
    return n;
}

NodeP mk_mul(const NodeP& a, const NodeP& b) {
    double x, y;
    if (is_num(a, &x) && is_num(b, &y)) return Node::num(x * y);
    if (is_num_eq(a, 0.0) || is_num_eq(b, 0.0)) return Node::num(0.0);
    if (is_num_eq(a, 1.0)) return b;
    if (is_num_eq(b, 1.0)) return a;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Mul;
    n->a = a;
    n->b = b;
    return n;
}

NodeP mk_div(const NodeP& a, const NodeP& b) {
    double x, y;
    if (is_num(b, &y) && y != 0.0) {
        if (is_num(a, &x)) return Node::num(x / y);
        if (y == 1.0) return a;
    }
    if (is_num_eq(a, 0.0) && !is_num_eq(b, 0.0)) return Node::num(0.0);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Div;
    n->a = a;
    n->b = b;
    return n;
}

NodeP mk_neg(const NodeP& a) {
    double x;
    if (is_num(a, &x)) return Node::num(-x);
    if (a->kind == Kind::Neg) return a->a;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->a = a;
    return n;
}

double ipow(double base, int k) {
    if (k < 0) return 1.0 / ipow(base, -k);
    double acc = 1.0, cur = base;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) acc *= cur;
        cur *= cur;
    }
    return acc;
}

NodeP mk_pow(const NodeP& a, int k) {
    if (k == 0) return Node::num(1.0);
    if (k == 1) return a;
    double x;
    if (is_num(a, &x)) return Node::num(ipow(x, k));
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->a = a;
    n->expo = k;
    return n;
}

double apply_fun(Func f, double x) {
    switch (f) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Exp: return std::exp(x);
        case Func::Tanh: return std::tanh(x);
    }
    return 0.0;
}

NodeP mk_fun(Func f, const NodeP& a) {
    double x;
    if (is_num(a, &x)) return Node::num(apply_fun(f, x));
    auto n = std::make_shared<Node>();
    n->kind = Kind::Fun;
    n->fun = f;
    n->a = a;
    return n;
}

double eval_node(const NodeP& n, double q, double p) {
    switch (n->kind) {
        case Kind::Num: return n->value;
        case Kind::Variable: return n->var == Var::Q ? q : p;
        case Kind::Neg: return -eval_node(n->a, q, p);
        case Kind::Add: return eval_node(n->a, q, p) + eval_node(n->b, q, p);
        case Kind::Sub: return eval_node(n->a, q, p) - eval_node(n->b, q, p);
        case Kind::Mul: return eval_node(n->a, q, p) * eval_node(n->b, q, p);
        case Kind::Div: return eval_node(n->a, q, p) / eval_node(n->b, q, p);
        case Kind::Pow: return ipow(eval_node(n->a, q, p), n->expo);
        case Kind::Fun: return apply_fun(n->fun, eval_node(n->a, q, p));
    }
    return 0.0;
}

NodeP diff_node(const NodeP& n, Var v) {
    switch (n->kind) {
        case Kind::Num: return Node::num(0.0);
        case Kind::Variable: return Node::num(n->var == v ? 1.0 : 0.0);
        case Kind::Neg: return mk_neg(diff_node(n->a, v));
        case Kind::Add: return mk_add(diff_node(n->a, v), diff_node(n->b, v));
        case Kind::Sub: return mk_sub(diff_node(n->a, v), diff_node(n->b, v));
        case Kind::Mul:
            return mk_add(mk_mul(diff_node(n->a, v), n->b), mk_mul(n->a, diff_node(n->b, v)));
        case Kind::Div: {
            double c;
            if (is_num(n->b, &c))  // constant denominator keeps the tree small
                return mk_div(diff_node(n->a, v), n->b);
            return mk_div(mk_sub(mk_mul(diff_node(n->a, v), n->b), mk_mul(n->a, diff_node(n->b, v))),
                          mk_pow(n->b, 2));
        }
        case Kind::Pow:
            return mk_mul(mk_mul(Node::num(n->expo), mk_pow(n->a, n->expo - 1)),
                          diff_node(n->a, v));
        case Kind::Fun: {
            NodeP inner = diff_node(n->a, v);
            switch (n->fun) {
                case Func::Sin: return mk_mul(mk_fun(Func::Cos, n->a), inner);
                case Func::Cos: return mk_neg(mk_mul(mk_fun(Func::Sin, n->a), inner));
                case Func::Exp: return mk_mul(mk_fun(Func::Exp, n->a), inner);
                case Func::Tanh:
                    return mk_mul(mk_sub(Node::num(1.0), mk_pow(mk_fun(Func::Tanh, n->a), 2)),
                                  inner);
            }
        }
    }
    return Node::num(0.0);
}

std::string num_str(double v) {
    std::array<char, 40> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

const char* fun_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Tanh: return "tanh";
    }
    return "?";
}

void print_node(const NodeP& n, std::string& out) {
    switch (n->kind) {
        case Kind::Num:
            if (n->value < 0.0 || std::signbit(n->value)) {
                out += "(";
                out += num_str(n->value);
                out += ")";
            } else {
                out += num_str(n->value);
            }
            break;
        case Kind::Variable: out += (n->var == Var::Q ? "q" : "p"); break;
        case Kind::Neg:
            out += "(-";
            print_node(n->a, out);
            out += ")";
            break;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            const char op = n->kind == Kind::Add   ? '+'
                            : n->kind == Kind::Sub ? '-'
                            : n->kind == Kind::Mul ? '*'
                                                   : '/';
            out += "(";
            print_node(n->a, out);
            out += op;
            print_node(n->b, out);
            out += ")";
            break;
        }
        case Kind::Pow:
            out += "(";
            print_node(n->a, out);
            out += "^";
            out += std::to_string(n->expo);
            out += ")";
            break;
        case Kind::Fun:
            out += fun_name(n->fun);
            out += "(";
            print_node(n->a, out);
            out += ")";
            break;
    }
}

}  // namespace detail

using detail::Node;
using detail::NodeP;

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodeP run() {
        NodeP e = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodeP expr() {
        NodeP acc = term();
        for (;;) {
            if (accept('+'))
                acc = detail::mk_add(acc, term());
            else if (accept('-'))
                acc = detail::mk_sub(acc, term());
            else
                return acc;
        }
    }

    NodeP term() {
        NodeP acc = factor();
        for (;;) {
            if (accept('*'))
                acc = detail::mk_mul(acc, factor());
            else if (accept('/'))
                acc = detail::mk_div(acc, factor());
            else
                return acc;
        }
    }

    NodeP factor() {
        const bool neg = accept('-');
        NodeP a = atom();
        if (accept('^')) a = detail::mk_pow(a, integer());
        return neg ? detail::mk_neg(a) : a;
    }

    int integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
            ++digits;
        }
        if (digits == 0) throw SyntaxError("expected integer exponent", start);
        int value = 0;
        auto res = std::from_chars(s_.data() + start, s_.data() + pos_, value);
        if (res.ec != std::errc())
            throw SyntaxError("integer exponent out of range", start);
        return value;
    }

    NodeP atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        const char c = s_[pos_];

        if (c == '(') {
            ++pos_;
            NodeP e = expr();
            if (!accept(')')) throw SyntaxError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodeP number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t e = pos_ + 1;
            if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
            if (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
                pos_ = e;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            }
        }
        double value = 0.0;
        auto res = std::from_chars(s_.data() + start, s_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != s_.data() + pos_)
            throw SyntaxError("malformed number", start);
        return Node::num(value);
    }

    NodeP identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string_view name = s_.substr(start, pos_ - start);

        if (name == "q") return Node::variable(Var::Q);
        if (name == "p") return Node::variable(Var::P);

        detail::Func f;
        if (name == "sin") f = detail::Func::Sin;
        else if (name == "cos") f = detail::Func::Cos;
        else if (name == "exp") f = detail::Func::Exp;
        else if (name == "tanh") f = detail::Func::Tanh;
        else
            throw UnknownIdentifierError("unknown identifier '" + std::string(name) + "'", start);

        if (!accept('(')) throw SyntaxError("expected '(' after function name", pos_);
        NodeP arg = expr();
        if (!accept(')')) throw SyntaxError("expected ')'", pos_);
        return detail::mk_fun(f, arg);
    }
};

Expr Expr::parse(std::string_view text) { return Expr(Parser(text).run()); }

Expr Expr::number(double v) { return Expr(Node::num(v)); }

Expr Expr::variable(Var v) { return Expr(Node::variable(v)); }

double Expr::eval(double q, double p) const { return detail::eval_node(node_, q, p); }

Expr Expr::diff(Var v) const { return Expr(detail::diff_node(node_, v)); }

std::string Expr::str() const {
    std::string out;
    detail::print_node(node_, out);
    return out;
}

bool Expr::is_constant(double* value) const { return detail::is_num(node_, value); }

Expr Expr::operator+(const Expr& o) const { return Expr(detail::mk_add(node_, o.node_)); }
Expr Expr::operator-(const Expr& o) const { return Expr(detail::mk_sub(node_, o.node_)); }
Expr Expr::operator*(const Expr& o) const { return Expr(detail::mk_mul(node_, o.node_)); }
Expr Expr::operator-() const { return Expr(detail::mk_neg(node_)); }

numgrid::RealField eval_on_grid(const Expr& e, const numgrid::PhaseGrid& grid) {
    numgrid::RealField out(grid, numgrid::FieldShape::OverQP);
    for (int iq = 0; iq < grid.q.n; ++iq) {
        const double q = grid.q.coord(iq);
        for (int ip = 0; ip < grid.p.n; ++ip) {
            const double v = e.eval(q, grid.p.coord(ip));
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "expression is non-finite at (q=" << q << ", p=" << grid.p.coord(ip)
                   << "), grid index (" << iq << "," << ip << ")";
                throw EvalDomainError(os.str());
            }
            out.at(iq, ip) = v;
        }
    }
    return out;
}

}  // namespace phasewig::exprlang
