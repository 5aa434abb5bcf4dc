#include <doctest.h>

#include "hsum/zeilberger.hpp"

using namespace hsum;

namespace {

RatFunc rf(const std::string& s) { return eval_rf(parse(s)); }
MPoly poly(const std::string& s) { return rf(s).as_polynomial(); }

std::vector<MPoly> op(const std::vector<std::string>& c)
{
    std::vector<RatFunc> v;
    for (auto& s : c) v.push_back(rf(s));
    return normalize_operator(v);
}

Rational eval_rf_at(const RatFunc& r, const std::map<std::string, Rational>& b) { return eval_at(to_expr(r), b); }

const char* legendre[] = {
    "binomial(n,k)*binomial(-n-1,k)*((1-x)/2)^k",
    "1/2^n*binomial(n,k)^2*(x-1)^(n-k)*(x+1)^k",
    "1/2^n*(-1)^k*binomial(n,k)*binomial(2*n-2*k,n)*x^(n-2*k)",
    "x^n*hyperterm([-n/2,-n/2+1/2],[1],1-1/x^2,k)",
};

const char* dougall = "hyperterm([a,1+a/2,b,c,d,1+2*a-b-c-d+n,-n],[a/2,1+a-b,1+a-c,1+a-d,b+c+d-a-n,1+a+n],1,k)";

const char* apery = "binomial(n,k)^2*binomial(n+k,k)^2";

// G(n,k+1) - G(n,k) = sum_j sigma_j(n) F(n+j,k) at exact points
void check_certificate(const Expr& F, const SumRecursion& sr, const std::string& k, const std::string& n,
                       std::map<std::string, Rational> b)
{
    int checked = 0;
    for (long nv = 1; nv <= 5; ++nv)
        for (long kv = 0; kv <= 6; ++kv) {
            b[n] = nv;
            b[k] = kv;
            try {
                Rational lhs = 0;
                for (std::size_t j = 0; j < sr.sigma.size(); ++j) {
                    auto bj = b;
                    bj[n] = nv + long(j);
                    lhs += eval_rf_at(sr.sigma[j], b) * eval_at(F, bj);
                }
                auto b1 = b;
                b1[k] = kv + 1;
                Rational g0 = eval_rf_at(sr.multiplier, b) * eval_at(F, b);
                Rational g1 = eval_rf_at(sr.multiplier, b1) * eval_at(F, b1);
                CHECK(g1 - g0 == lhs);
                ++checked;
            } catch (const EvalError&) {
            }
        }
    CHECK(checked > 10);
}

std::vector<Rational> direct_sums(const Expr& F, long upto, const std::map<std::string, Rational>& b = {})
{
    std::vector<Rational> s;
    for (long nv = 0; nv <= upto; ++nv) {
        auto bn = b;
        bn["n"] = nv;
        s.push_back(definite_sum(F, "k", bn));
    }
    return s;
}

}  // namespace

TEST_CASE("sum_recursion on the Legendre representations")
{
    auto expected = op({"n+1", "-x*(2*n+3)", "n+2"});
    for (auto s : legendre) {
        CAPTURE(s);
        SumRecursion sr = sum_recursion(parse(s), "k", "n", "P");
        CHECK(sr.rec.coeffs == expected);
        CHECK(sr.rec.str() == "(n + 2)*P(n + 2) - x*(2*n + 3)*P(n + 1) + (n + 1)*P(n) = 0");
    }
}

TEST_CASE("sum_recursion on binomial sums")
{
    SumRecursion a = sum_recursion(parse("binomial(n,k)"), "k", "n");
    CHECK(a.rec.coeffs == op({"-2", "1"}));
    CHECK(a.rec.str() == "S(n + 1) - 2*S(n) = 0");

    SumRecursion b = sum_recursion(parse(apery), "k", "n", "A");
    CHECK(b.rec.coeffs == op({"(n+1)^3", "-(2*n+3)*(17*n^2+51*n+39)", "(n+2)^3"}));
    CHECK(b.rec.str() == "(n + 2)^3*A(n + 2) - (2*n + 3)*(17*n^2 + 51*n + 39)*A(n + 1) + (n + 1)^3*A(n) = 0");
    CHECK(satisfies(b.rec, direct_sums(parse(apery), 12), 0));

    SumRecursion c = sum_recursion(parse("(-1)^k*binomial(n,k)*binomial(3*k,n)"), "k", "n");
    CHECK(c.rec.coeffs == op({"9*(n+1)", "3*(5*n+7)", "2*(2*n+3)"}));
}

TEST_CASE("sum_recursion on Clausen's Cauchy product")
{
    SumRecursion sr =
        sum_recursion(parse("hyperterm([a,b],[a+b+1/2],x,j)*hyperterm([a,b],[a+b+1/2],x,k-j)"), "j", "k", "C");
    CHECK(sr.rec.coeffs == op({"2*x*(k+2*b)*(k+2*a)*(a+b+k)", "-(k+1)*(2*a+1+2*b+2*k)*(2*a+2*b+k)"}));
}

TEST_CASE("sum_recursion on Dougall's sum")
{
    SumRecursion sr = sum_recursion(parse(dougall), "k", "n");
    CHECK(sr.rec.order() == 1);
    CHECK(sr.rec.coeffs ==
          op({"-(a+n+1)*(a+n-b-c+1)*(a+n-b-d+1)*(a+n-c-d+1)", "(a+n-b+1)*(a+n-b-c-d+1)*(a+n-c+1)*(a+n-d+1)"}));
}

TEST_CASE("sum_recursion rejects and bounds")
{
    CHECK_THROWS_AS(sum_recursion(parse("binomial(n,k)*binomial(2*n,k)^2"), "k", "n", "S", 1), NoRecurrence);
    CHECK_THROWS_AS(sum_recursion(parse("k^k"), "k", "n"), NotHypergeometric);
}

TEST_CASE("closedform")
{
    ClosedForm a = closedform(parse("binomial(n,k)"), "k", "n");
    CHECK(a.value.str() == "2^n");
    ClosedForm b = closedform(parse("binomial(n,k)^2"), "k", "n");
    CHECK(b.value.str() == "(2*n)!/(n!)^2");
    CHECK(b.initial == 1);
    ClosedForm c = closedform(parse(dougall), "k", "n");
    CHECK(c.value.str() ==
          "pochhammer(a + 1, n)*pochhammer(a - b - c + 1, n)*pochhammer(a - b - d + 1, n)*pochhammer(a - c - d + 1, n)"
          "/(pochhammer(a - b + 1, n)*pochhammer(a - b - c - d + 1, n)*pochhammer(a - c + 1, n)*pochhammer(a - d + 1, n))");
    // exact agreement with the sums at a rational point
    std::map<std::string, Rational> b0{{"a", Rational(1, 3)}, {"b", Rational(2, 7)}, {"c", Rational(-5, 11)},
                                       {"d", Rational(3, 13)}};
    for (long nv = 0; nv <= 6; ++nv) {
        auto bn = b0;
        bn["n"] = nv;
        CHECK(eval_at(c.value, bn) == definite_sum(parse(dougall), "k", bn));
        CHECK(eval_at(b.value, bn) == definite_sum(parse("binomial(n,k)^2"), "k", bn));
    }
    CHECK_THROWS_AS(closedform(parse(apery), "k", "n"), NoRecurrence);
}

TEST_CASE("term_from_ratio")
{
    CHECK(term_from_ratio(rf("(n+1/2)/(n+1)"), "n", 0, RatFunc(1)).str() == "(2*n)!/(4^n*(n!)^2)");
    CHECK(term_from_ratio(rf("3"), "n", 0, RatFunc(2)).str() == "2*3^n");
    CHECK(term_from_ratio(rf("(n+a)*x"), "n", 0, RatFunc(1)).str() == "x^n*pochhammer(a, n)");
}

TEST_CASE("sum_diffeq")
{
    SumDiffEq l = sum_diffeq(parse(legendre[0]), "k", "x");
    CHECK(l.de.coeffs == op({"-n*(n+1)", "2*x", "x^2-1"}));
    CHECK(sum_diffeq(parse("x^k/k!"), "k", "x").de.coeffs == op({"-1", "1"}));

    SumDiffEq q1 = sum_diffeq(parse("hyperterm([a,b],[2*b],4*x/(1+x)^2,k)"), "k", "x");
    SumDiffEq q2 = sum_diffeq(parse("(1+x)^(2*a)*hyperterm([a,a-b+1/2],[b+1/2],x^2,k)"), "k", "x");
    CHECK(q1.de == q2.de);
    CHECK(q1.de.order() == 2);

    SumDiffEq g1 = sum_diffeq(parse("hyperterm([A,B],[C],1-((1-x)/(1+2*x))^3,k)"), "k", "x", "S");
    CHECK(g1.de.coeffs ==
          op({"9*(x-1)^2*B*A",
              "(1+2*x)*(4*x^4+9*B*x^3+9*A*x^3-8*C*x^3+3*x^3-12*C*x^2+9*B*x^2+9*A*x^2+3*x^2-x-6*C*x+9*A*x+9*B*x-C)",
              "x*(x-1)*(1+x+x^2)*(1+2*x)^2"}));
    SumDiffEq g2 = sum_diffeq(parse("(2*x+1)^d*hyperterm([a,b],[c],x^3,k)"), "k", "x", "S");
    CHECK(g2.de.coeffs ==
          op({"-12*x^4*a*d+36*b*a*x^4+4*d^2*x^4-12*x^4*b*d-2*x^3*d-6*x^3*a*d+36*b*a*x^3-6*x^3*b*d+9*b*a*x^2-12*d*x"
              "-4*d^2*x+12*c*x*d+6*c*d-4*d",
              "(1+2*x)*(2*x^4+6*b*x^4-4*d*x^4+6*a*x^4+3*b*x^3+3*a*x^3+x^3-6*c*x+4*x+4*d*x+2-3*c)",
              "x*(x-1)*(1+x+x^2)*(1+2*x)^2"}));
}

TEST_CASE("int_recursion")
{
    IntRecursion b = int_recursion(parse("t^(c-1)*(1-t)^(d-1)*hyperterm([a,b],[c],t*x,k)"), "t", "k");
    CHECK(b.rec.coeffs == op({"x*(b+k)*(a+k)", "-(k+1)*(k+d+c)"}));
    CHECK(b.rec.str() == "(k + 1)*(c + d + k)*B(k + 1) - x*(a + k)*(b + k)*B(k) = 0");
    CHECK(int_recursion(parse("t^k*exp(-t)"), "t", "k").rec.coeffs == op({"-(k+1)", "1"}));
    CHECK_THROWS_AS(int_recursion(parse("exp(-t)"), "t", "k"), NoRecurrence);
}

TEST_CASE("property: telescoping certificates hold at exact points")
{
    struct Case {
        const char* F;
        std::map<std::string, Rational> b;
    };
    std::vector<Case> cases = {
        {"binomial(n,k)", {}},
        {"binomial(n,k)^2", {}},
        {apery, {}},
        {"(-1)^k*binomial(n,k)*binomial(3*k,n)", {}},
        {legendre[0], {{"x", Rational(2, 7)}}},
        {legendre[1], {{"x", Rational(2, 7)}}},
        {legendre[2], {{"x", Rational(2, 7)}}},
        {dougall, {{"a", Rational(1, 3)}, {"b", Rational(2, 7)}, {"c", Rational(-5, 11)}, {"d", Rational(3, 13)}}},
    };
    for (auto& c : cases) {
        CAPTURE(c.F);
        Expr F = parse(c.F);
        check_certificate(F, sum_recursion(F, "k", "n"), "k", "n", c.b);
    }
}

TEST_CASE("property: recurrences agree with direct sums for n <= 15")
{
    std::vector<std::pair<const char*, std::map<std::string, Rational>>> cases = {
        {"binomial(n,k)", {}},
        {"binomial(n,k)^2", {}},
        {"binomial(n,k)^2*binomial(n+k,k)", {}},
        {"(-1)^k*binomial(n,k)*binomial(3*k,n)", {}},
        {"binomial(n,k)*binomial(2*k,k)*(-1/4)^k", {}},
        {legendre[0], {{"x", Rational(-3, 5)}}},
        {legendre[1], {{"x", Rational(-3, 5)}}},
        {legendre[2], {{"x", Rational(-3, 5)}}},
    };
    for (auto& [s, b] : cases) {
        CAPTURE(s);
        Expr F = parse(s);
        SumRecursion sr = sum_recursion(F, "k", "n");
        CHECK(satisfies(sr.rec, direct_sums(F, 15, b), 0, b));
    }
}

TEST_CASE("property: differential equations annihilate the series to order 30")
{
    // summands whose k-th term is c_k x^(m k)
    struct Case {
        const char* F;
        int m;
    };
    std::vector<Case> cases = {
        {"x^k/k!", 1},
        {"hyperterm([1/3,2/5],[3/7],x,k)", 1},
        {"hyperterm([1/3,-2/5],[1/7],x^3,k)", 3},
        {"hyperterm([1/2],[3/2],-x^2,k)", 2},
    };
    const int order = 30;
    for (auto& c : cases) {
        CAPTURE(c.F);
        Expr F = parse(c.F);
        SumDiffEq d = sum_diffeq(F, "k", "x");
        std::vector<RatFunc> series(order + 1);
        for (int kv = 0; c.m * kv <= order; ++kv)
            series[c.m * kv] = RatFunc(eval_at(subs(F, "x", Expr(1)), {{"k", kv}}));
        auto out = hsum::apply(d.de, series);
        CHECK(out.size() >= 20);
        for (auto& v : out) CHECK(v.is_zero());
    }
}
