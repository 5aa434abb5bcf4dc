#pragma once

#include "hsum/ratfunc.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsum {

enum class Kind { Num, Sym, Add, Mul, Pow, Factorial, Binomial, Pochhammer, Gamma, Func };

struct Node;

// Immutable expression tree. All constructors canonicalize: Add and Mul are
// flattened, numbers folded, like terms and like bases combined, children
// sorted by `compare`.
class Expr {
public:
    Expr();  // 0
    Expr(long n);
    Expr(const Rational& q);

    static Expr sym(const std::string& name);
    static Expr add(std::vector<Expr> terms);
    static Expr mul(std::vector<Expr> factors);
    static Expr pow(const Expr& base, const Expr& exponent);
    static Expr factorial(const Expr& arg);
    static Expr binomial(const Expr& top, const Expr& bottom);
    static Expr pochhammer(const Expr& base, const Expr& count);
    static Expr gamma(const Expr& arg);
    // Catalog heads: exp, ln, sin, cos, arcsin, arctan, erf (one argument),
    // besselj (order, argument). sqrt is rewritten to a power.
    static Expr func(const std::string& name, std::vector<Expr> args);
    // Product form of a pFq summand in k.
    static Expr hyperterm(const std::vector<Expr>& upper, const std::vector<Expr>& lower, const Expr& arg,
                          const Expr& k);

    Kind kind() const;
    const Rational& value() const;
    const std::string& name() const;
    const std::vector<Expr>& args() const;

    bool is_num() const { return kind() == Kind::Num; }
    bool is_num(long v) const;
    bool is_integer() const;

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
    friend Expr operator-(const Expr& a, const Expr& b) { return add({a, -b}); }
    friend Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
    friend Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, Expr(-1))}); }

    bool operator==(const Expr& o) const;
    bool operator!=(const Expr& o) const { return !(*this == o); }
    bool operator<(const Expr& o) const;

    std::string str() const;

private:
    explicit Expr(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
    static Expr make(Kind k, std::vector<Expr> args, Rational v = 0, std::string name = {});
    std::shared_ptr<const Node> p_;
};

struct Node {
    Kind kind;
    Rational value;
    std::string name;
    std::vector<Expr> args;
};

int compare(const Expr& a, const Expr& b);

struct ParseError : std::runtime_error {
    std::size_t position;
    std::vector<std::string> expected;
    ParseError(const std::string& msg, std::size_t pos, std::vector<std::string> exp);
};

Expr parse(const std::string& text);

bool depends_on(const Expr& e, const std::string& v);
std::vector<std::string> symbols(const Expr& e);
Expr subs(const Expr& e, const std::string& v, const Expr& value);
Expr subs(const Expr& e, const std::map<std::string, Expr>& values);

// Conversions between rational functions and expressions.
Expr to_expr(const MPoly& p);
Expr to_expr(const RatFunc& r);
// Factored display form of a polynomial or rational function.
Expr to_expr_factored(const RatFunc& r, const std::vector<std::string>& priority = {});

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Expr differentiate(const Expr& e, const std::string& v);

Rational eval_at(const Expr& e, const std::map<std::string, Rational>& bindings);
// Symbolic evaluation to Q(symbols); factorial-type heads need integer
// arguments (binomial needs an integer bottom, pochhammer an integer count).
RatFunc eval_rf(const Expr& e);

struct TaylorSeries {
    std::string var;
    std::vector<RatFunc> coeffs;  // index = power
    int order() const { return int(coeffs.size()) - 1; }
};

// Maclaurin expansion up to and including x^order.
TaylorSeries taylor(const Expr& e, const std::string& x, int order);

}  // namespace hsum
