#include "isowreath/expr.hpp"

#include "isowreath/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace isowreath {

Jet2 operator+(const Jet2& a, const Jet2& b)
{
    return {a.f + b.f, a.fu + b.fu, a.fv + b.fv, a.fuu + b.fuu, a.fuv + b.fuv, a.fvv + b.fvv};
}

Jet2 operator-(const Jet2& a, const Jet2& b)
{
    return {a.f - b.f, a.fu - b.fu, a.fv - b.fv, a.fuu - b.fuu, a.fuv - b.fuv, a.fvv - b.fvv};
}

Jet2 operator-(const Jet2& a)
{
    return {-a.f, -a.fu, -a.fv, -a.fuu, -a.fuv, -a.fvv};
}

Jet2 operator*(const Jet2& a, const Jet2& b)
{
    return {a.f * b.f,
            a.fu * b.f + a.f * b.fu,
            a.fv * b.f + a.f * b.fv,
            a.fuu * b.f + 2 * a.fu * b.fu + a.f * b.fuu,
            a.fuv * b.f + a.fu * b.fv + a.fv * b.fu + a.f * b.fuv,
            a.fvv * b.f + 2 * a.fv * b.fv + a.f * b.fvv};
}

Jet2 operator*(double s, const Jet2& a)
{
    return {s * a.f, s * a.fu, s * a.fv, s * a.fuu, s * a.fuv, s * a.fvv};
}

Jet2 chain(const Jet2& a, double g0, double g1, double g2, double)
{
    return {g0,
            g1 * a.fu,
            g1 * a.fv,
            g2 * a.fu * a.fu + g1 * a.fuu,
            g2 * a.fu * a.fv + g1 * a.fuv,
            g2 * a.fv * a.fv + g1 * a.fvv};
}

Jet2 operator/(const Jet2& a, const Jet2& b)
{
    if (b.f == 0)
        throw EvalDomainError("division by zero");
    const double r = 1.0 / b.f;
    return a * chain(b, r, -r * r, 2 * r * r * r);
}

Jet3 Jet3::constant(double c)
{
    Jet3 j;
    j.f = c;
    return j;
}

Jet3 Jet3::var(int k, double x)
{
    Jet3 j;
    j.f = x;
    j.d1[k] = 1;
    return j;
}

bool Jet3::is_constant() const
{
    for (int i = 0; i < 2; ++i) {
        if (d1[i] != 0)
            return false;
        for (int j = 0; j < 2; ++j) {
            if (d2[i][j] != 0)
                return false;
            for (int k = 0; k < 2; ++k)
                if (d3[i][j][k] != 0)
                    return false;
        }
    }
    return true;
}

Jet2 Jet3::lower() const
{
    return {f, d1[0], d1[1], d2[0][0], d2[0][1], d2[1][1]};
}

namespace {

template <class Op>
Jet3 map3(const Jet3& a, const Jet3& b, Op op)
{
    Jet3 r;
    r.f = op(a.f, b.f);
    for (int i = 0; i < 2; ++i) {
        r.d1[i] = op(a.d1[i], b.d1[i]);
        for (int j = 0; j < 2; ++j) {
            r.d2[i][j] = op(a.d2[i][j], b.d2[i][j]);
            for (int k = 0; k < 2; ++k)
                r.d3[i][j][k] = op(a.d3[i][j][k], b.d3[i][j][k]);
        }
    }
    return r;
}

} // namespace

Jet3 operator+(const Jet3& a, const Jet3& b)
{
    return map3(a, b, [](double x, double y) { return x + y; });
}

Jet3 operator-(const Jet3& a, const Jet3& b)
{
    return map3(a, b, [](double x, double y) { return x - y; });
}

Jet3 operator-(const Jet3& a)
{
    return -1.0 * a;
}

Jet3 operator*(double s, const Jet3& a)
{
    return map3(a, a, [s](double x, double) { return s * x; });
}

Jet3 operator*(const Jet3& a, const Jet3& b)
{
    Jet3 r;
    r.f = a.f * b.f;
    for (int i = 0; i < 2; ++i) {
        r.d1[i] = a.d1[i] * b.f + a.f * b.d1[i];
        for (int j = 0; j < 2; ++j) {
            r.d2[i][j] = a.d2[i][j] * b.f + a.d1[i] * b.d1[j] + a.d1[j] * b.d1[i] + a.f * b.d2[i][j];
            for (int k = 0; k < 2; ++k)
                r.d3[i][j][k] = a.d3[i][j][k] * b.f + a.d2[i][j] * b.d1[k] + a.d2[i][k] * b.d1[j] +
                                a.d2[j][k] * b.d1[i] + a.d1[i] * b.d2[j][k] + a.d1[j] * b.d2[i][k] +
                                a.d1[k] * b.d2[i][j] + a.f * b.d3[i][j][k];
        }
    }
    return r;
}

Jet3 chain(const Jet3& a, double g0, double g1, double g2, double g3)
{
    Jet3 r;
    r.f = g0;
    for (int i = 0; i < 2; ++i) {
        r.d1[i] = g1 * a.d1[i];
        for (int j = 0; j < 2; ++j) {
            r.d2[i][j] = g2 * a.d1[i] * a.d1[j] + g1 * a.d2[i][j];
            for (int k = 0; k < 2; ++k)
                r.d3[i][j][k] = g3 * a.d1[i] * a.d1[j] * a.d1[k] +
                                g2 * (a.d2[i][j] * a.d1[k] + a.d2[i][k] * a.d1[j] + a.d2[j][k] * a.d1[i]) +
                                g1 * a.d3[i][j][k];
        }
    }
    return r;
}

Jet3 operator/(const Jet3& a, const Jet3& b)
{
    if (b.f == 0)
        throw EvalDomainError("division by zero");
    const double r = 1.0 / b.f;
    return a * chain(b, r, -r * r, 2 * r * r * r, -6 * r * r * r * r);
}

namespace {

template <class J> J jconst(double c) { return J::constant(c); }

template <class J> J jsin(const J& a)
{
    const double s = std::sin(a.f), c = std::cos(a.f);
    return chain(a, s, c, -s, -c);
}

template <class J> J jcos(const J& a)
{
    const double s = std::sin(a.f), c = std::cos(a.f);
    return chain(a, c, -s, -c, s);
}

template <class J> J jtan(const J& a)
{
    if (std::cos(a.f) == 0)
        throw EvalDomainError("tan: argument at a pole");
    const double t = std::tan(a.f);
    const double s2 = 1 + t * t;
    return chain(a, t, s2, 2 * t * s2, 2 * s2 * (1 + 3 * t * t));
}

template <class J> J jsinh(const J& a)
{
    const double s = std::sinh(a.f), c = std::cosh(a.f);
    return chain(a, s, c, s, c);
}

template <class J> J jcosh(const J& a)
{
    const double s = std::sinh(a.f), c = std::cosh(a.f);
    return chain(a, c, s, c, s);
}

template <class J> J jtanh(const J& a)
{
    const double t = std::tanh(a.f);
    const double s2 = 1 - t * t;
    return chain(a, t, s2, -2 * t * s2, s2 * (6 * t * t - 2));
}

template <class J> J jexp(const J& a)
{
    const double e = std::exp(a.f);
    return chain(a, e, e, e, e);
}

template <class J> J jlog(const J& a)
{
    if (!(a.f > 0))
        throw EvalDomainError("log: argument must be positive");
    const double r = 1.0 / a.f;
    return chain(a, std::log(a.f), r, -r * r, 2 * r * r * r);
}

template <class J> J jsqrt(const J& a)
{
    if (a.f < 0 || std::isnan(a.f))
        throw EvalDomainError("sqrt: argument must be non-negative");
    if (a.f == 0) {
        if (a.is_constant())
            return jconst<J>(0);
        throw EvalDomainError("sqrt: derivative unbounded at 0");
    }
    const double s = std::sqrt(a.f);
    const double r = 1.0 / a.f;
    return chain(a, s, 0.5 / s, -0.25 * r / s, 0.375 * r * r / s);
}

template <class J> J jabs(const J& a)
{
    if (a.f == 0) {
        if (a.is_constant())
            return jconst<J>(0);
        throw NondifferentiableError("abs: not differentiable at 0");
    }
    return a.f > 0 ? a : -a;
}

template <class J> J jpowi(const J& a, long n)
{
    if (n == 0)
        return jconst<J>(1);
    if (n < 0) {
        if (a.f == 0)
            throw EvalDomainError("division by zero in negative power");
        return jconst<J>(1) / jpowi(a, -n);
    }
    J result = jconst<J>(1);
    J base = a;
    unsigned long k = static_cast<unsigned long>(n);
    while (k) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

template <class J> J jpow(const J& a, const J& b)
{
    if (b.is_constant() && std::nearbyint(b.f) == b.f && std::fabs(b.f) < 2147483648.0)
        return jpowi(a, static_cast<long>(b.f));
    if (!(a.f > 0))
        throw EvalDomainError("pow: non-integer exponent needs a positive base");
    return jexp(b * jlog(a));
}

} // namespace

namespace {

const std::set<std::string>& builtin_functions()
{
    static const std::set<std::string> fns{"sin", "cos", "tan", "sinh", "cosh", "tanh",
                                           "exp", "log", "sqrt", "abs"};
    return fns;
}

using NodeP = std::shared_ptr<const Expr::Node>;

NodeP make(Expr::Kind k, NodeP a = nullptr, NodeP b = nullptr)
{
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodeP make_num(double x)
{
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::Num;
    n->value = x;
    return n;
}

NodeP make_named(Expr::Kind k, const std::string& name, NodeP a = nullptr)
{
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->name = name;
    n->a = std::move(a);
    return n;
}

// expr    := term (('+'|'-') term)*
// term    := unary (('*'|'/') unary)*
// unary   := '-' unary | power
// power   := primary ('^' unary)?
// primary := number | ident | ident '(' expr ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodeP run()
    {
        NodeP e = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character", {"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what, std::set<std::string> expected)
    {
        std::string msg = what + " at offset " + std::to_string(pos_) + "; expected one of:";
        for (const auto& e : expected)
            msg += " " + e;
        throw ParseError(msg, pos_, std::move(expected));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodeP expr()
    {
        NodeP lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make(Expr::Kind::Add, lhs, term());
            else if (accept('-'))
                lhs = make(Expr::Kind::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodeP term()
    {
        NodeP lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make(Expr::Kind::Mul, lhs, unary());
            else if (accept('/'))
                lhs = make(Expr::Kind::Div, lhs, unary());
            else
                return lhs;
        }
    }

    NodeP unary()
    {
        if (accept('-'))
            return make(Expr::Kind::Neg, unary());
        return power();
    }

    NodeP power()
    {
        NodeP base = primary();
        if (accept('^'))
            return make(Expr::Kind::Pow, base, unary());
        return base;
    }

    NodeP primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input", {"number", "identifier", "(", "-"});
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            if (builtin_functions().count(id)) {
                if (!accept('('))
                    fail("function name must be followed by '('", {"("});
                NodeP arg = expr();
                if (!accept(')'))
                    fail("unbalanced parenthesis", {")"});
                return make_named(Expr::Kind::Call, id, arg);
            }
            if (id == "u")
                return make(Expr::Kind::VarU);
            if (id == "v")
                return make(Expr::Kind::VarV);
            return make_named(Expr::Kind::Param, id);
        }
        if (accept('(')) {
            NodeP e = expr();
            if (!accept(')'))
                fail("unbalanced parenthesis", {")"});
            return e;
        }
        fail("unexpected character", {"number", "identifier", "(", "-"});
    }

    NodeP number()
    {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double x = std::strtod(begin, &end);
        if (end == begin)
            fail("malformed number", {"number"});
        pos_ += static_cast<std::size_t>(end - begin);
        return make_num(x);
    }
};

void set_var(Jet2& j, int k)
{
    (k == 0 ? j.fu : j.fv) = 1;
}

void set_var(Jet3& j, int k)
{
    j.d1[k] = 1;
}

template <class J>
J eval_node(const Expr::Node* n, double u, double v, const ParamMap& params)
{
    using K = Expr::Kind;
    switch (n->kind) {
    case K::Num:
        return jconst<J>(n->value);
    case K::VarU: {
        J j = jconst<J>(u);
        set_var(j, 0);
        return j;
    }
    case K::VarV: {
        J j = jconst<J>(v);
        set_var(j, 1);
        return j;
    }
    case K::Param: {
        auto it = params.find(n->name);
        if (it == params.end()) {
            if (n->name == "pi")
                return jconst<J>(M_PI);
            throw UnboundParameterError("unbound parameter '" + n->name + "'");
        }
        return jconst<J>(it->second);
    }
    case K::Neg:
        return -eval_node<J>(n->a.get(), u, v, params);
    case K::Add:
        return eval_node<J>(n->a.get(), u, v, params) + eval_node<J>(n->b.get(), u, v, params);
    case K::Sub:
        return eval_node<J>(n->a.get(), u, v, params) - eval_node<J>(n->b.get(), u, v, params);
    case K::Mul:
        return eval_node<J>(n->a.get(), u, v, params) * eval_node<J>(n->b.get(), u, v, params);
    case K::Div:
        return eval_node<J>(n->a.get(), u, v, params) / eval_node<J>(n->b.get(), u, v, params);
    case K::Pow:
        return jpow(eval_node<J>(n->a.get(), u, v, params), eval_node<J>(n->b.get(), u, v, params));
    case K::Call: {
        const J a = eval_node<J>(n->a.get(), u, v, params);
        const std::string& f = n->name;
        if (f == "sin") return jsin(a);
        if (f == "cos") return jcos(a);
        if (f == "tan") return jtan(a);
        if (f == "sinh") return jsinh(a);
        if (f == "cosh") return jcosh(a);
        if (f == "tanh") return jtanh(a);
        if (f == "exp") return jexp(a);
        if (f == "log") return jlog(a);
        if (f == "sqrt") return jsqrt(a);
        if (f == "abs") return jabs(a);
        throw EvalDomainError("unknown function '" + f + "'");
    }
    }
    throw EvalDomainError("corrupt expression node");
}

int precedence(Expr::Kind k)
{
    using K = Expr::Kind;
    switch (k) {
    case K::Add:
    case K::Sub:
        return 1;
    case K::Mul:
    case K::Div:
        return 2;
    case K::Neg:
        return 3;
    case K::Pow:
        return 4;
    default:
        return 5;
    }
}

std::string format_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string print_node(const Expr::Node* n)
{
    using K = Expr::Kind;
    auto wrap = [](const Expr::Node* c, bool paren) {
        std::string s = print_node(c);
        return paren ? "(" + s + ")" : s;
    };
    const int p = precedence(n->kind);
    switch (n->kind) {
    case K::Num:
        // Negative literals only come from the builders; parenthesize so they re-parse as Neg(Num).
        return n->value < 0 || std::signbit(n->value) ? "(" + format_number(n->value) + ")"
                                                       : format_number(n->value);
    case K::VarU:
        return "u";
    case K::VarV:
        return "v";
    case K::Param:
        return n->name;
    case K::Neg:
        return "-" + wrap(n->a.get(), precedence(n->a->kind) < p);
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
        const char* op = n->kind == K::Add ? " + " : n->kind == K::Sub ? " - " : n->kind == K::Mul ? "*" : "/";
        // Left-associative: the right operand needs parentheses at equal precedence.
        // A Neg operand on the right of a binary operator re-parses fine only when p < 3.
        const bool lp = precedence(n->a->kind) < p;
        const bool rp = precedence(n->b->kind) <= p;
        return wrap(n->a.get(), lp) + op + wrap(n->b.get(), rp);
    }
    case K::Pow: {
        // Right-associative; a Neg base would bind looser than '^'.
        const bool lp = precedence(n->a->kind) <= p;
        const bool rp = precedence(n->b->kind) < p && n->b->kind != K::Neg;
        return wrap(n->a.get(), lp) + "^" + wrap(n->b.get(), rp);
    }
    case K::Call:
        return n->name + "(" + print_node(n->a.get()) + ")";
    }
    return "?";
}

bool equal_node(const Expr::Node* a, const Expr::Node* b)
{
    if (a == b)
        return true;
    if (!a || !b || a->kind != b->kind)
        return false;
    if (a->kind == Expr::Kind::Num && !(a->value == b->value && std::signbit(a->value) == std::signbit(b->value)))
        return false;
    if (a->name != b->name)
        return false;
    return equal_node(a->a.get(), b->a.get()) && equal_node(a->b.get(), b->b.get());
}

void collect_params(const Expr::Node* n, std::set<std::string>& out)
{
    if (!n)
        return;
    if (n->kind == Expr::Kind::Param)
        out.insert(n->name);
    collect_params(n->a.get(), out);
    collect_params(n->b.get(), out);
}

} // namespace

bool is_builtin_function(const std::string& name)
{
    return builtin_functions().count(name) > 0;
}

Expr Expr::parse(const std::string& text)
{
    Parser p(text);
    return Expr(p.run());
}

Expr Expr::num(double x)
{
    if (std::signbit(x))
        return Expr(make(Kind::Neg, make_num(-x)));
    return Expr(make_num(x));
}
Expr Expr::u() { return Expr(make(Kind::VarU)); }
Expr Expr::v() { return Expr(make(Kind::VarV)); }
Expr Expr::param(const std::string& name) { return Expr(make_named(Kind::Param, name)); }
Expr Expr::call(const std::string& fn, const Expr& arg)
{
    if (!is_builtin_function(fn))
        throw PreconditionError("unknown function '" + fn + "'");
    return Expr(make_named(Kind::Call, fn, arg.root_));
}
Expr Expr::operator+(const Expr& o) const { return Expr(make(Kind::Add, root_, o.root_)); }
Expr Expr::operator-(const Expr& o) const { return Expr(make(Kind::Sub, root_, o.root_)); }
Expr Expr::operator*(const Expr& o) const { return Expr(make(Kind::Mul, root_, o.root_)); }
Expr Expr::operator/(const Expr& o) const { return Expr(make(Kind::Div, root_, o.root_)); }
Expr Expr::operator-() const { return Expr(make(Kind::Neg, root_)); }
Expr Expr::pow(const Expr& o) const { return Expr(make(Kind::Pow, root_, o.root_)); }

Jet2 Expr::eval_jet2(double u, double v, const ParamMap& params) const
{
    if (!root_)
        throw PreconditionError("empty expression");
    return eval_node<Jet2>(root_.get(), u, v, params);
}

Jet3 Expr::eval_jet3(double u, double v, const ParamMap& params) const
{
    if (!root_)
        throw PreconditionError("empty expression");
    return eval_node<Jet3>(root_.get(), u, v, params);
}

double Expr::eval(double u, double v, const ParamMap& params) const
{
    return eval_jet2(u, v, params).f;
}

std::string Expr::to_string() const
{
    return root_ ? print_node(root_.get()) : std::string();
}

std::vector<std::string> Expr::parameters() const
{
    std::set<std::string> s;
    collect_params(root_.get(), s);
    return {s.begin(), s.end()};
}

bool Expr::structurally_equal(const Expr& o) const
{
    return equal_node(root_.get(), o.root_.get());
}

} // namespace isowreath
