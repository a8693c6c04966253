#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace isowreath {

// Second-order jet of a scalar function of (u, v).
struct Jet2 {
    double f = 0, fu = 0, fv = 0, fuu = 0, fuv = 0, fvv = 0;

    static Jet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
    static Jet2 var_u(double u) { return {u, 1, 0, 0, 0, 0}; }
    static Jet2 var_v(double v) { return {v, 0, 1, 0, 0, 0}; }

    bool is_constant() const { return fu == 0 && fv == 0 && fuu == 0 && fuv == 0 && fvv == 0; }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator*(double s, const Jet2& a);
Jet2 operator/(const Jet2& a, const Jet2& b);

// Lift g through a, given g and its derivatives at a.f (g3 is unused for Jet2).
Jet2 chain(const Jet2& a, double g0, double g1, double g2, double g3 = 0);

// Third-order jet; index 0 is u, 1 is v. Tensors are stored in full.
struct Jet3 {
    double f = 0;
    double d1[2] = {0, 0};
    double d2[2][2] = {{0, 0}, {0, 0}};
    double d3[2][2][2] = {{{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}};

    static Jet3 constant(double c);
    static Jet3 var(int k, double x);
    bool is_constant() const;
    Jet2 lower() const;
};

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator*(double s, const Jet3& a);
Jet3 operator/(const Jet3& a, const Jet3& b);
Jet3 chain(const Jet3& a, double g0, double g1, double g2, double g3);

using ParamMap = std::map<std::string, double>;

class Expr {
public:
    enum class Kind { Num, VarU, VarV, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

    struct Node {
        Kind kind;
        double value = 0;        // Num
        std::string name;        // Param, Call
        std::shared_ptr<const Node> a, b;
    };

    Expr() = default;
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    static Expr parse(const std::string& text);

    static Expr num(double x);
    static Expr u();
    static Expr v();
    static Expr param(const std::string& name);
    static Expr call(const std::string& fn, const Expr& arg);
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const;
    Expr operator-() const;
    Expr pow(const Expr& o) const;

    Jet2 eval_jet2(double u, double v, const ParamMap& params = {}) const;
    Jet3 eval_jet3(double u, double v, const ParamMap& params = {}) const;
    double eval(double u, double v, const ParamMap& params = {}) const;

    std::string to_string() const;
    std::vector<std::string> parameters() const;
    bool structurally_equal(const Expr& o) const;

    bool empty() const { return !root_; }
    const Node* root() const { return root_.get(); }

private:
    std::shared_ptr<const Node> root_;
};

bool is_builtin_function(const std::string& name);

} // namespace isowreath
