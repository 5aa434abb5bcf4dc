#include <doctest.h>

#include "hsum/hyper.hpp"

#include <set>

using namespace hsum;

namespace {

RatFunc rf(const std::string& s) { return eval_rf(parse(s)); }

Rational value_at(const RatFunc& r, const std::map<std::string, Rational>& b)
{
    RatFunc v = r;
    for (auto& [name, q] : b) v = v.subs(name, RatFunc(q));
    REQUIRE(v.is_constant());
    return v.constant_value();
}

std::multiset<std::string> params(const std::vector<Expr>& v)
{
    std::multiset<std::string> out;
    for (auto& e : v) out.insert(eval_rf(e).str());
    return out;
}

std::multiset<std::string> params(std::initializer_list<const char*> v)
{
    std::multiset<std::string> out;
    for (auto s : v) out.insert(rf(s).str());
    return out;
}

// Checks e(v+1)/e(v) against direct evaluation wherever both values exist.
void check_ratio_numerically(const std::string& text, const std::string& v, std::map<std::string, Rational> b,
                             long lo, long hi)
{
    Expr e = parse(text);
    RatFunc r = shift_quotient(e, v, 1);
    int checked = 0;
    for (long j = lo; j <= hi; ++j) {
        Rational a0, a1;
        try {
            b[v] = j;
            a0 = eval_at(e, b);
            b[v] = j + 1;
            a1 = eval_at(e, b);
        } catch (const EvalError&) {
            continue;
        }
        if (a0 == 0) continue;
        b[v] = j;
        RatFunc rv = r;
        for (auto& [name, q] : b) rv = rv.subs(name, RatFunc(q));
        CHECK_MESSAGE(rv.constant_value() == a1 / a0, text << " at " << v << "=" << j);
        ++checked;
    }
    CHECK_MESSAGE(checked >= 3, text);
}

const char* siam = "(-1)^(k+1)*(4*k+1)*(2*k)!/(k!*4^k*(2*k-1)*(k+1)!)";
const char* dougall = "hyperterm([a,1+a/2,b,c,d,1+2*a-b-c-d+n,-n],[a/2,1+a-b,1+a-c,1+a-d,b+c+d-a-n,1+a+n],1,k)";
const char* feynman =
    "(-1)^(alpha+beta+gamma)*GAMMA(alpha+beta+gamma-d/2)*GAMMA(d/2-gamma)*GAMMA(alpha+gamma-d/2)"
    "*GAMMA(beta+gamma-d/2)/(GAMMA(alpha)*GAMMA(beta)*GAMMA(d/2)*GAMMA(alpha+beta+2*gamma-d)"
    "*(m^2)^(alpha+beta+gamma-d))*hyperterm([alpha+beta+gamma-d,alpha+gamma-d/2],[alpha+beta+2*gamma-d],z,k)";

}  // namespace

TEST_CASE("term_ratio examples")
{
    RatFunc r = term_ratio(parse(siam), "k");
    CHECK(r.shift("k", -1) == rf("-1/2*(4*k+1)/(4*k-3)/(k+1)*(2*k-3)"));
    CHECK(term_ratio(parse("binomial(n,k)"), "k") == rf("(n-k)/(k+1)"));
    CHECK(term_ratio(parse("1/k"), "k") == rf("k/(k+1)"));
    CHECK(term_ratio(parse("x^k/k!"), "k") == rf("x/(k+1)"));
    CHECK(term_ratio(parse("5*a^2"), "k") == RatFunc(1));
    CHECK(term_ratio(parse("2^(k/2)*2^(k/2)"), "k") == RatFunc(2));
    CHECK(term_ratio(parse("binomial(n,k)"), "n") == rf("(n+1)/(n+1-k)"));
}

TEST_CASE("term_ratio rejects non-hypergeometric terms")
{
    for (auto s : {"k^k", "(k^2)!", "sin(k)", "2^(k^2)", "binomial(n,k/2)", "x^k+1"}) {
        try {
            term_ratio(parse(s), "k");
            FAIL(s);
        } catch (const NotHypergeometric& e) {
            CHECK(std::string(e.what()).find("not a hypergeometric term") != std::string::npos);
        }
    }
    try {
        term_ratio(parse("k^k*binomial(n,k)"), "k");
        FAIL("");
    } catch (const NotHypergeometric& e) {
        CHECK(std::string(e.what()).find("k^k") != std::string::npos);
    }
}

TEST_CASE("term_ratio agrees with direct evaluation")
{
    check_ratio_numerically(siam, "k", {}, 0, 10);
    check_ratio_numerically("binomial(n,k)*binomial(-n-1,k)*((1-x)/2)^k", "k", {{"n", 7}, {"x", 3}}, 0, 10);
    check_ratio_numerically("binomial(n,k)*binomial(-n-1,k)*((1-x)/2)^k", "n", {{"k", 3}, {"x", 3}}, 0, 10);
    check_ratio_numerically("1/2^n*binomial(n,k)^2*(x-1)^(n-k)*(x+1)^k", "k", {{"n", 6}, {"x", 5}}, 0, 10);
    check_ratio_numerically("1/2^n*(-1)^k*binomial(n,k)*binomial(2*n-2*k,n)*x^(n-2*k)", "n",
                            {{"k", 2}, {"x", 3}}, 4, 12);
    check_ratio_numerically("x^n*hyperterm([-n/2,-n/2+1/2],[1],1-1/x^2,k)", "k", {{"n", 7}, {"x", 3}}, 0, 8);
    check_ratio_numerically("x^n*hyperterm([-n/2,-n/2+1/2],[1],1-1/x^2,k)", "n", {{"k", 3}, {"x", 3}}, 0, 8);
    check_ratio_numerically("binomial(n,k)^2*binomial(n+k,k)^2", "n", {{"k", 2}}, 0, 10);
    check_ratio_numerically("(-1)^k*binomial(n,k)*binomial(3*k,n)", "k", {{"n", 5}}, 0, 8);
    std::map<std::string, Rational> dg{{"a", Rational(1, 3)}, {"b", Rational(2, 5)}, {"c", Rational(3, 7)},
                                       {"d", Rational(1, 11)}, {"n", 5}};
    check_ratio_numerically(dougall, "k", dg, 0, 8);
    dg.erase("n");
    dg["k"] = 2;
    check_ratio_numerically(dougall, "n", dg, 0, 8);
    check_ratio_numerically(feynman, "beta", {{"alpha", 2}, {"gamma", 0}, {"d", 2}, {"m", 3}, {"z", Rational(1, 5)}, {"k", 2}},
                            2, 8);
    check_ratio_numerically("hyperterm([a,b],[a+b+1/2],x,j)*hyperterm([a,b],[a+b+1/2],x,k-j)", "j",
                            {{"a", Rational(1, 3)}, {"b", Rational(1, 4)}, {"x", 2}, {"k", 6}}, 0, 8);
}

TEST_CASE("property: shift invariance and display round trip")
{
    const char* terms[] = {siam,
                           "binomial(n,k)^2*binomial(n+k,k)^2",
                           "x^n*hyperterm([-n/2,-n/2+1/2],[1],1-1/x^2,k)",
                           dougall,
                           feynman,
                           "t^(c-1)*(1-t)^(d-1)*hyperterm([a,b],[c],t*x,k)"};
    for (auto s : terms) {
        Expr e = parse(s);
        RatFunc r = term_ratio(e, "k");
        CHECK(term_ratio(subs(e, "k", parse("k+1")), "k") == r.shift("k", 1));
        HyperTerm h = hyper_term(e, "k");
        CHECK(term_ratio(h.display, "k") == h.ratio);
        CHECK(shift_quotient(e, "k", 3) == r * r.shift("k", 1) * r.shift("k", 2));
        CHECK(shift_quotient(e, "k", -1) == r.shift("k", -1).inverse());
    }
}

TEST_CASE("pfq_term")
{
    auto h = pfq_term({parse("-n"), parse("n+1")}, {Expr(1)}, parse("(1-x)/2"), "k");
    CHECK(h.ratio == rf("(k-n)*(k+n+1)*(1-x)/(2*(k+1)^2)"));
    CHECK(pfq_term({}, {}, parse("x"), "k").ratio == rf("x/(k+1)"));
    CHECK(pfq_term({Expr(1)}, {}, parse("x"), "k").ratio == rf("x"));
    CHECK(term_ratio(h.display, "k") == h.ratio);
}

TEST_CASE("property: pfq_term summands follow the ratio recurrence")
{
    std::vector<std::pair<std::vector<Expr>, std::vector<Expr>>> cases = {
        {{Expr(Rational(1, 2)), Expr(-3)}, {Expr(Rational(2, 3))}},
        {{Expr(2), Expr(Rational(-7, 4)), Expr(5)}, {Expr(3), Expr(Rational(1, 9))}},
        {{}, {Expr(Rational(5, 2))}},
    };
    for (auto& [up, lo] : cases) {
        Rational x(-3, 7);
        auto h = pfq_term(up, lo, Expr(x), "k");
        Rational a = 1;
        for (long k = 0; k < 12; ++k) {
            CHECK(eval_at(h.display, {{"k", k}}) == a);
            a *= value_at(h.ratio, {{"k", k}});
        }
    }
}

TEST_CASE("sum_to_hyper")
{
    PFQ p = sum_to_hyper(parse("binomial(n,k)*binomial(-n-1,k)*((1-x)/2)^k"), "k");
    CHECK(params(p.upper) == params({"n+1", "-n"}));
    CHECK(params(p.lower) == params({"1"}));
    CHECK(eval_rf(p.argument) == rf("1/2-x/2"));
    CHECK(p.prefactor.is_num(1));

    p = sum_to_hyper(parse("1/2^n*binomial(n,k)^2*(x-1)^(n-k)*(x+1)^k"), "k");
    CHECK(params(p.upper) == params({"-n", "-n"}));
    CHECK(params(p.lower) == params({"1"}));
    CHECK(eval_rf(p.argument) == rf("(x+1)/(x-1)"));
    CHECK(*rational_quotient(p.prefactor, parse("(x/2-1/2)^n")) == RatFunc(1));

    p = sum_to_hyper(parse("x^k/k!"), "k");
    CHECK(p.upper.empty());
    CHECK(p.lower.empty());
    CHECK(p.argument == parse("x"));
    CHECK(p.str() == "Hypergeom([], [], x)");

    p = sum_to_hyper(parse("binomial(n+1,k)*binomial(-n-2,k)*((1-x)/2)^k-binomial(n,k)*binomial(-n-1,k)*((1-x)/2)^k"),
                     "k");
    CHECK(params(p.upper) == params({"-n", "n+2"}));
    CHECK(params(p.lower) == params({"2"}));
    CHECK(eval_rf(p.argument) == rf("1/2-x/2"));
    CHECK(eval_rf(p.prefactor) == rf("x+x*n-1-n"));

    CHECK_THROWS_AS(sum_to_hyper(parse("1/(k^2+1)"), "k"), NotHypergeometric);
}

TEST_CASE("property: sum_to_hyper then pfq_term reproduces the ratio")
{
    const char* terms[] = {siam, "binomial(n,k)^2*binomial(n+k,k)^2", "(-1)^k*binomial(n,k)*binomial(3*k,n)",
                           dougall, "binomial(n,k)*binomial(-n-1,k)*((1-x)/2)^k", "(2*k)!/(k!*4^k)"};
    for (auto s : terms) {
        Expr e = parse(s);
        PFQ p = sum_to_hyper(e, "k");
        CHECK(pfq_term(p.upper, p.lower, p.argument, "k").ratio == term_ratio(e, "k"));
        CHECK(*rational_quotient(p.prefactor, subs(e, "k", Expr(0))) == RatFunc(1));
    }
}

TEST_CASE("log_derivative")
{
    CHECK(log_derivative(parse("hyperterm([a,b],[2*b],4*x/(1+x)^2,k)"), "x") == rf("k*(1-x)/(x*(1+x))"));
    CHECK(log_derivative(parse("t^(c-1)*(1-t)^(d-1)*t^k*exp(-t)"), "t") == rf("(c-1+k)/t-(d-1)/(1-t)-1"));
    CHECK(log_derivative(parse("(1+x)^(2*a)*x^(2*k)"), "x") == rf("2*a/(1+x)+2*k/x"));
    CHECK_THROWS_AS(log_derivative(parse("sin(x)"), "x"), NotHypergeometric);
    CHECK_THROWS_AS(log_derivative(parse("x^x"), "x"), NotHypergeometric);
}

TEST_CASE("rational_quotient")
{
    CHECK(*rational_quotient(parse("(n+1)!"), parse("n!")) == rf("n+1"));
    CHECK(*rational_quotient(parse("pochhammer(a,k+2)"), parse("pochhammer(a,k)")) == rf("(a+k)*(a+k+1)"));
    CHECK(*rational_quotient(parse("4^k"), parse("2^(2*k-1)")) == RatFunc(2));
    CHECK(*rational_quotient(parse("(1-x)^k"), parse("(x-1)^k*(-1)^(k+2)")) == RatFunc(1));
    CHECK(!rational_quotient(parse("2^k"), parse("3^k")));
    CHECK(!rational_quotient(parse("GAMMA(a)"), parse("GAMMA(a+1/2)")));
    CHECK(is_zero_term(parse("binomial(n,k)*x^k-x^k*n!/(k!*(n-k)!)")));
}
