#include <doctest.h>

#include "../common/corpus.hpp"
#include "hsum/expr.hpp"

using namespace hsum;

namespace {

std::vector<Rational> rationals(const TaylorSeries& t)
{
    std::vector<Rational> out;
    for (auto& c : t.coeffs) out.push_back(c.constant_value());
    return out;
}

Rational fact(long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return Rational(r);
}

}  // namespace

TEST_CASE("parser builds canonical shapes")
{
    Expr e = parse("(-1)^k*binomial(n,k)");
    REQUIRE(e.kind() == Kind::Mul);
    CHECK(e.args().size() == 2);
    Expr a = parse("arcsin(x)^2");
    REQUIRE(a.kind() == Kind::Pow);
    CHECK(a.args()[0].kind() == Kind::Func);
    CHECK(a.args()[0].name() == "arcsin");
    CHECK(a.args()[1].is_num(2));
    Expr f = parse("(2*k)!/(k!*4^k)");
    CHECK(f == Expr::factorial(parse("2*k")) / (Expr::factorial(Expr::sym("k")) * Expr::pow(Expr(4), Expr::sym("k"))));
    CHECK(parse("-x^2") == -(Expr::pow(Expr::sym("x"), Expr(2))));
    CHECK(parse("2^3^2") == Expr(512));
    CHECK(parse("k!^2") == Expr::pow(Expr::factorial(Expr::sym("k")), Expr(2)));
    CHECK(parse("x - x") == Expr(0));
    CHECK(parse("2*x*y/(4*y)") == parse("x/2"));
}

TEST_CASE("parse errors carry a position and expected tokens")
{
    try {
        parse("x+");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position == 2);
        CHECK(!e.expected.empty());
    }
    CHECK_THROWS_AS(parse("_j+1"), ParseError);
    CHECK_THROWS_AS(parse("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse("binomial(n)"), ParseError);
    CHECK_THROWS_AS(parse("(x"), ParseError);
    CHECK_THROWS_AS(parse("x y"), ParseError);
}

TEST_CASE("printer round trip over the example corpus")
{
    for (auto& s : example_corpus()) {
        Expr e = parse(s);
        std::string printed = e.str();
        Expr back = parse(printed);
        CHECK_MESSAGE(back == e, s << " -> " << printed);
        CHECK(back.str() == printed);
    }
}

TEST_CASE("differentiation")
{
    Expr e = parse("exp(x-x^2)*sin(x^6-1)");
    Expr want = parse("(1-2*x)*exp(x-x^2)*sin(x^6-1)+6*x^5*exp(x-x^2)*cos(x^6-1)");
    CHECK(differentiate(e, "x") == want);
    CHECK(differentiate(parse("3*a+b^2"), "x") == Expr(0));
    CHECK(differentiate(parse("arcsin(x)"), "x") == parse("(1-x^2)^(-1/2)"));
    CHECK_THROWS(differentiate(parse("x!"), "x"));
}

TEST_CASE("taylor examples")
{
    CHECK(rationals(taylor(parse("exp(x)"), "x", 3)) ==
          std::vector<Rational>{1, 1, Rational(1, 2), Rational(1, 6)});
    auto a = rationals(taylor(parse("arcsin(x)^2"), "x", 6));
    CHECK(a == std::vector<Rational>{0, 0, 1, 0, Rational(1, 3), 0, Rational(8, 45)});
    CHECK(rationals(taylor(parse("x*(1+x)^(-1)"), "x", 3)) == std::vector<Rational>{0, 1, -1, 1});
    CHECK_THROWS_AS(taylor(parse("1/x"), "x", 3), EvalError);
    CHECK_THROWS_AS(taylor(parse("ln(x)"), "x", 3), EvalError);
    CHECK_THROWS_AS(taylor(parse("sqrt(x)"), "x", 3), EvalError);
}

TEST_CASE("taylor handles Puiseux and sqrt(Pi) intermediates")
{
    // coefficient formulas of the two hypergeometric-type examples
    auto f = taylor(parse("sqrt(x)*arcsin(sqrt(x))+sqrt(1-x)"), "x", 12);
    for (long k = 0; k <= 12; ++k) {
        Integer p4;
        mpz_ui_pow_ui(p4.get_mpz_t(), 4, (unsigned long)k);
        Rational want = fact(2 * k) / (Rational(p4) * fact(k) * fact(k) * (2 * k - 1) * (2 * k - 1));
        CHECK(f.coeffs[k] == RatFunc(want));
    }
    auto g = taylor(parse("-(sqrt(Pi)/2*sqrt(x)*erf(sqrt(x))*(1+1/2/x)+exp(-x)/2)"), "x", 12);
    for (long k = 0; k <= 12; ++k) {
        Rational want = Rational(k % 2 ? -1 : 1) / (fact(k) * (2 * k + 1) * (2 * k - 1));
        CHECK(g.coeffs[k] == RatFunc(want));
    }
}

TEST_CASE("taylor with symbolic parameters")
{
    auto t = taylor(parse("exp(a*x)"), "x", 3);
    CHECK(t.coeffs[3] == RatFunc::var("a").pow(3) / RatFunc(6));
    auto b = taylor(parse("(1+x)^a"), "x", 2);
    CHECK(b.coeffs[2] == RatFunc::var("a") * (RatFunc::var("a") - RatFunc(1)) / RatFunc(2));
}

TEST_CASE("eval_at")
{
    CHECK(eval_at(parse("binomial(n,k)"), {{"n", 4}, {"k", 2}}) == 6);
    CHECK(eval_at(parse("pochhammer(3,4)"), {}) == 360);
    Expr siam = parse("(-1)^(k+1)*(4*k+1)*(2*k)!/(k!*4^k*(2*k-1)*(k+1)!)");
    CHECK(eval_at(siam, {{"k", 1}}) == Rational(5, 4));
    CHECK(eval_at(parse("binomial(-3,2)"), {}) == 6);
    CHECK(eval_at(parse("binomial(3,5)"), {}) == 0);
    CHECK_THROWS_AS(eval_at(parse("x+1"), {}), EvalError);
    CHECK_THROWS_AS(eval_at(parse("(1/2)!"), {}), EvalError);
    CHECK_THROWS_AS(eval_at(parse("exp(x)"), {{"x", 1}}), EvalError);
}

TEST_CASE("property: taylor of derivative equals derivative of taylor")
{
    const char* samples[] = {"exp(2*x+x^2)",  "sin(x)*cos(x)",     "arcsin(x/2)",        "arctan(x^2+x)",
                             "ln(1+x)",       "sqrt(Pi)*erf(x)",   "besselj(2,x)",       "sqrt(1+x)",
                             "(1+x)^(1/3)",   "besselj(0,x^2)",    "exp(x)*arcsin(x)",   "cos(x)/(1-x)",
                             "sqrt(Pi)*erf(x)*exp(x)", "besselj(-1,3*x)",   "ln(1+x^2)*sin(x)",   "arctan(x)^2"};
    const int n = 10;
    for (auto s : samples) {
        Expr e = parse(s);
        auto te = taylor(e, "x", n + 1);
        auto td = taylor(differentiate(e, "x"), "x", n);
        for (int i = 0; i <= n; ++i) CHECK_MESSAGE(td.coeffs[i] == te.coeffs[i + 1] * RatFunc(long(i + 1)), s);
    }
}

TEST_CASE("property: taylor is linear, eval agrees on polynomials")
{
    Expr e1 = parse("arcsin(x)*exp(x)"), e2 = parse("cos(x^2)+x^5");
    Rational a(3, 7);
    auto t = taylor(Expr(a) * e1 + e2, "x", 12);
    auto t1 = taylor(e1, "x", 12), t2 = taylor(e2, "x", 12);
    for (int i = 0; i <= 12; ++i) CHECK(t.coeffs[i] == RatFunc(a) * t1.coeffs[i] + t2.coeffs[i]);

    Expr p = parse("(x-2)^3*(3*x+1)/5 + x^2");
    auto tp = taylor(p, "x", 6);
    for (long v = -3; v <= 3; ++v) {
        Rational acc = 0, pw = 1;
        for (auto& c : tp.coeffs) {
            acc += c.constant_value() * pw;
            pw *= v;
        }
        CHECK(acc == eval_at(p, {{"x", v}}));
    }
}
