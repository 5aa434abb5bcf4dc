#include <doctest.h>

#include "hsum/holonomic.hpp"

#include <random>

using namespace hsum;

namespace {

RatFunc rf(const std::string& s) { return eval_rf(parse(s)); }

std::vector<MPoly> op(const std::vector<std::string>& c)
{
    std::vector<RatFunc> v;
    for (auto& s : c) v.push_back(rf(s));
    return normalize_operator(v);
}

DiffEq de_of(const std::vector<std::string>& c)
{
    DiffEq d;
    d.coeffs = op(c);
    return d;
}

std::vector<RatFunc> series(const std::string& e, int order = 30) { return taylor(parse(e), "x", order).coeffs; }

bool annihilates_series(const DiffEq& L, const std::vector<RatFunc>& s)
{
    auto r = hsum::apply(L, s);
    for (auto& c : r)
        if (!c.is_zero()) return false;
    return !r.empty();
}

DiffEq bind(const DiffEq& L, const std::string& v, const Rational& q)
{
    std::vector<RatFunc> c;
    for (auto& p : L.coeffs) c.push_back(RatFunc(p).subs(v, RatFunc(q)));
    DiffEq out = L;
    out.coeffs = normalize_operator(c);
    return out;
}

std::vector<Rational> rationals(const std::vector<RatFunc>& s)
{
    std::vector<Rational> out;
    for (auto& c : s) out.push_back(c.constant_value());
    return out;
}

}  // namespace

TEST_CASE("base equations")
{
    CHECK(base_de("arcsin", "x").coeffs == op({"0", "x", "(x-1)*(x+1)"}));
    CHECK(base_de("exp", "x").coeffs == op({"-1", "1"}));
    CHECK(base_de("besselj", "x", {parse("n")}).coeffs == op({"-(n-x)*(n+x)", "x", "x^2"}));
    CHECK(base_de("exp", "x").str() == "F'(x) - F(x) = 0");
    CHECK_THROWS(base_de("gamma", "x"));
}

TEST_CASE("sum and product of equations")
{
    DiffEq as = base_de("arcsin", "x"), ex = base_de("exp", "x");
    DiffEq s = de_plus_de(as, ex);
    CHECK(s.coeffs == op({"0", "-x^3-2*x^2+x-1", "-x^4+4*x^2", "1-2*x^2+x^4-x+x^3"}));
    DiffEq p = de_times_de(as, ex);
    CHECK(p.coeffs == op({"-1+x^2-x", "x+2-2*x^2", "-1+x^2"}));
    CHECK(de_times_de(as, as).coeffs == op({"0", "1", "3*x", "(x-1)*(x+1)"}));
    CHECK(de_plus_de(as, as) == as);
    CHECK(de_times_de(as, de_of({"0", "1"})) == as);

    DiffEq bj = base_de("besselj", "x", {parse("n")});
    CHECK(de_times_de(bj, ex).coeffs == op({"2*x^2-n^2-x", "-(-1+2*x)*x", "x^2"}));
    CHECK(de_plus_de(bj, ex).coeffs ==
          op({"2*x^4-3*x^2*n^2+x^3-3*n^2*x-x^2+n^4-n^2", "-n^4+3*x^2+n^2+x^3-2*x^4+3*x^2*n^2",
              "-(-2*x^3+n^2*x+x^2-3*n^2+2*x)*x", "x^2*(-2*x^2+n^2-x)"}));
}

TEST_CASE("order bounds")
{
    std::vector<DiffEq> des{base_de("arcsin", "x"), base_de("exp", "x"), base_de("sin", "x"),
                            base_de("arctan", "x"), base_de("erf", "x"), base_de("besselj", "x", {parse("n")})};
    for (auto& a : des)
        for (auto& b : des) {
            CHECK(de_plus_de(a, b).order() <= a.order() + b.order());
            CHECK(de_times_de(a, b).order() <= a.order() * b.order());
        }
}

TEST_CASE("algebraic substitution")
{
    DiffEq as = base_de("arcsin", "x"), ex = base_de("exp", "x");
    CHECK(algebraic_substitute(as, 1, rf("x")) == as);
    CHECK(algebraic_substitute(ex, 1, rf("2*x")).coeffs == op({"-2", "1"}));
    DiffEq r = algebraic_substitute(as, 2, rf("x"));
    CHECK(annihilates_series(de_times_de(r, r), series("arcsin(sqrt(x))^2")));
    CHECK(annihilates_series(algebraic_substitute(as, 2, rf("x^2*(1+x)")), series("arcsin(x*sqrt(1+x))")));
    CHECK(annihilates_series(algebraic_substitute(base_de("cos", "x"), 2, rf("x")), series("cos(sqrt(x))")));
}

TEST_CASE("simple_de")
{
    CHECK(simple_de(parse("arcsin(x)^2"), "x").str() == "(x - 1)*(x + 1)*F'''(x) + 3*x*F''(x) + F'(x) = 0");
    CHECK(simple_de(parse("arcsin(x)+exp(x)"), "x").coeffs ==
          op({"0", "x-x^3-2*x^2-1", "-x^2*(x-2)*(x+2)", "(x-1)*(x+1)*(x-1+x^2)"}));
    CHECK(simple_de(parse("arcsin(x)*exp(x)"), "x").coeffs == op({"-1+x^2-x", "x+2-2*x^2", "(x-1)*(x+1)"}));
    CHECK(simple_de(parse("besselj(n,x)*exp(x)"), "x").coeffs == op({"2*x^2-n^2-x", "-(-1+2*x)*x", "x^2"}));
    CHECK(simple_de(parse("x"), "x").coeffs == op({"-1", "x"}));
    CHECK(simple_de(parse("sqrt(x)*arcsin(sqrt(x))+sqrt(1-x)"), "x").coeffs == op({"1", "-2", "4*x*(x-1)"}));
    CHECK(simple_de(parse("sin(x)^2+cos(x)^2-1"), "x").coeffs == op({"0", "1"}));
    CHECK(closure_de(parse("sin(x)^2+cos(x)^2-1"), "x").order() == 3);
    CHECK_THROWS_AS(simple_de(parse("gamma(x)"), "x"), NotHolonomic);
}

TEST_CASE("de_to_re")
{
    DiffEq a2 = simple_de(parse("arcsin(x)^2"), "x");
    CHECK(de_to_re(a2).str() == "(k + 1)*(k + 2)*(k + 3)*a(k + 3) - (k + 1)^3*a(k + 1) = 0");
    CHECK(de_to_re(base_de("exp", "x")).str() == "(k + 1)*a(k + 1) - a(k) = 0");
    CHECK(de_to_re(de_of({"-1", "x"})).str() == "(k - 1)*a(k) = 0");

    // Legendre with n = 6 against the polynomial itself
    DiffEq leg = de_of({"42", "-2*x", "1-x^2"});
    Recurrence re = de_to_re(leg);
    auto p6 = rationals(series("(231*x^6-315*x^4+105*x^2-5)/16", 40));
    CHECK(satisfies(re, p6, 0));
    CHECK(annihilates_series(leg, series("(231*x^6-315*x^4+105*x^2-5)/16")));
    auto p4 = rationals(series("(35*x^4-30*x^2+3)/8", 40));
    CHECK_FALSE(satisfies(re, p4, 0));
}

TEST_CASE("zero test")
{
    auto zero = [](const std::string& s) {
        Expr e = parse(s);
        return holonomic_zero_test(closure_de(e, "x"), e);
    };
    CHECK(zero("arcsin(x)^2-arcsin(x)*arcsin(x)"));
    CHECK(zero("sin(x)^2+cos(x)^2-1"));
    CHECK(zero("exp(x)*exp(-x)-1"));
    CHECK_FALSE(zero("arcsin(x)^2-x^2"));
    CHECK(taylor(parse("arcsin(x)^2-x^2"), "x", 4).coeffs[4] == RatFunc(Rational(1, 3)));
    CHECK(zero_test_bound(de_of({"0", "1", "3*x", "(x-1)*(x+1)"})) >= 3);
}

TEST_CASE("zero test on random nonzero combinations")
{
    const char* atoms[] = {"exp(x)", "sin(x)", "cos(x)", "arcsin(x)", "arctan(x)", "ln(1+x)", "exp(2*x)", "(1+x)", "x^2"};
    std::mt19937 gen(20240611);
    std::uniform_int_distribution<int> pick(0, 8), coef(-3, 3);
    int tested = 0;
    while (tested < 20) {
        int c1 = coef(gen), c2 = coef(gen);
        if (!c1 || !c2) continue;
        std::string e = std::to_string(c1) + "*" + atoms[pick(gen)] + "*" + atoms[pick(gen)] + "+(" + std::to_string(c2) +
                        ")*" + atoms[pick(gen)];
        Expr ex = parse(e);
        bool nonzero = false;
        for (auto& c : taylor(ex, "x", 12).coeffs) nonzero = nonzero || !c.is_zero();
        if (!nonzero) continue;
        INFO(e);
        DiffEq L = closure_de(ex, "x");
        CHECK(annihilates_series(L, taylor(ex, "x", 30).coeffs));
        CHECK_FALSE(holonomic_zero_test(L, ex));
        ++tested;
    }
}

TEST_CASE("fps")
{
    auto check = [](const std::string& e, const std::string& term, int m, int s) {
        INFO(e);
        FormalPowerSeries f = fps(parse(e), "x");
        CHECK(f.m == m);
        CHECK(f.s == s);
        CHECK(f.exceptional.empty());
        auto q = rational_quotient(f.term.display, parse(term));
        REQUIRE(q.has_value());
        CHECK(*q == RatFunc(1));
        auto t = series(e);
        for (int i = 0; i <= 30; ++i) CHECK(f.coefficient(i) == t[i]);
        return f;
    };
    auto a = check("arcsin(x)^2", "k!^2*4^k/((k+1)*(2*k+1)!)", 2, 2);
    CHECK(a.str() == "Sum(4^k*x^(2*k + 2)*(k!)^2/((k + 1)*(2*k + 1)!), k = 0..infinity)");
    auto b = check("sqrt(x)*arcsin(sqrt(x))+sqrt(1-x)", "4^(-k)*(2*k)!/(k!^2*(2*k-1)^2)", 1, 0);
    CHECK(b.str() == "Sum(x^k*(2*k)!/(4^k*(2*k - 1)^2*(k!)^2), k = 0..infinity)");
    auto c = check("-(sqrt(Pi)/2*sqrt(x)*erf(sqrt(x))*(1+1/2/x)+exp(-x)/2)", "(-1)^k/(k!*(2*k+1)*(2*k-1))", 1, 0);
    CHECK(c.str() == "Sum((-1)^k*x^k/((2*k - 1)*(2*k + 1)*k!), k = 0..infinity)");
    check("exp(x)", "1/k!", 1, 0);
    check("ln(1+x)", "(-1)^k/(k+1)", 1, 1);
    check("arctan(x)", "(-1)^k/(2*k+1)", 2, 1);

    CHECK(fps(parse("x"), "x").str() == "x");
    CHECK(fps(parse("sin(x)^2+cos(x)^2-1"), "x").str() == "0");
    CHECK_THROWS_AS(fps(parse("exp(x-x^2)*sin(x^6-1)"), "x"), NotHolonomic);
}

TEST_CASE("property: every equation annihilates its series and its recurrence reproduces it")
{
    const char* exprs[] = {"arcsin(x)",
                           "exp(x)",
                           "arcsin(x)^2",
                           "arcsin(x)+exp(x)",
                           "arcsin(x)*exp(x)",
                           "sqrt(x)*arcsin(sqrt(x))+sqrt(1-x)",
                           "-(sqrt(Pi)/2*sqrt(x)*erf(sqrt(x))*(1+1/2/x)+exp(-x)/2)",
                           "ln(1+x)*cos(x)",
                           "arctan(x)^2+sin(x)",
                           "exp(x-x^2)*sin(x^6+x)",
                           "(1+x)^(1/3)*exp(x)",
                           "sqrt(Pi)*erf(x)*x"};
    for (std::string e : exprs) {
        INFO(e);
        auto t = series(e);
        for (bool mini : {false, true}) {
            DiffEq L = mini ? simple_de(parse(e), "x") : closure_de(parse(e), "x");
            CHECK(annihilates_series(L, t));
            CHECK(satisfies(de_to_re(L), rationals(t), 0));
        }
    }
    // Bessel with a concrete order
    for (std::string e : {"besselj(n,x)", "besselj(n,x)*exp(x)", "besselj(n,x)+exp(x)"}) {
        INFO(e);
        DiffEq L = bind(simple_de(parse(e), "x"), "n", 3);
        std::string inst = e;
        inst.replace(inst.find("n,"), 2, "3,");
        CHECK(annihilates_series(L, series(inst)));
    }
}
