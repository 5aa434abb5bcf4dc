#include <doctest.h>

#include "hsum/factorize.hpp"
#include "hsum/gosper.hpp"
#include "hsum/matrix.hpp"

using namespace hsum;

namespace {

RatFunc rf(const std::string& s) { return eval_rf(parse(s)); }
MPoly poly(const std::string& s) { return rf(s).as_polynomial(); }

const char* siam = "(-1)^(k+1)*(4*k+1)*(2*k)!/(k!*4^k*(2*k-1)*(k+1)!)";

void check_pqr(const RatFunc& ratio, const PQR& t, const std::string& k)
{
    RatFunc rep = RatFunc(t.p.shift(k, 1)) / RatFunc(t.p) * RatFunc(t.q.shift(k, 1)) / RatFunc(t.r.shift(k, 1));
    CHECK(rep == ratio);
    // gcd condition by brute force over a window of shifts
    for (long j = 0; j <= 40; ++j) CHECK(poly_gcd(t.q, t.r.shift(k, j)).degree(k) == 0);
}

// Solves p = q(k+1) f(k) - r(k) f(k-1) for deg f <= d without the bound.
bool has_polynomial_solution(const PQR& t, const std::string& k, long d)
{
    MPoly Q = t.q.shift(k, 1), kk = MPoly::var(k);
    std::vector<std::vector<MPoly>> cols;
    int rows = t.p.degree(k) + 1;
    for (long i = 0; i <= d; ++i) {
        MPoly c = Q * kk.pow(unsigned(i)) - t.r * (kk - MPoly(1)).pow(unsigned(i));
        rows = std::max(rows, c.degree(k) + 1);
        cols.push_back(c.coeffs(k));
    }
    Matrix A(rows, d + 1);
    std::vector<RatFunc> b(rows);
    auto pc = t.p.coeffs(k);
    for (int i = 0; i < rows; ++i) {
        if (i < int(pc.size())) b[i] = RatFunc(pc[i]);
        for (long j = 0; j <= d; ++j)
            if (i < int(cols[j].size())) A(i, j) = RatFunc(cols[j][i]);
    }
    return fraction_free_solve(A, b).kind != SolveKind::Inconsistent;
}

Rational s_at(const GosperResult& g, const Expr& a, long k, std::map<std::string, Rational> b = {})
{
    b[g.var] = k;
    RatFunc m = g.multiplier;
    for (auto& [v, q] : b) m = m.subs(v, RatFunc(q));
    return m.constant_value() * eval_at(a, b);
}

}  // namespace

TEST_CASE("gosper on the SIAM summand")
{
    Expr a = parse(siam);
    GosperResult g = gosper(a, "k");
    REQUIRE(g.found);
    CHECK(g.pqr.p == poly("4*k+1"));
    CHECK(g.pqr.q == poly("-2*k+3"));
    CHECK(g.pqr.r == poly("2*k+2"));
    CHECK(g.bound == 0);
    CHECK(g.f == RatFunc(-1));
    CHECK(g.multiplier == rf("-2*(k+1)/(4*k+1)"));
    CHECK(g.antidifference == parse("-2*(k+1)*(-1)^(k+1)*(2*k)!/(k!*4^k*(2*k-1)*(k+1)!)"));
    Rational sum = 0;
    for (long k = 1; k <= 20; ++k) sum += eval_at(a, {{"k", k}});
    CHECK(sum == s_at(g, a, 21) - s_at(g, a, 1));
}

TEST_CASE("gosper examples")
{
    GosperResult g = gosper(parse("1/k"), "k");
    CHECK(!g.found);

    Expr b = parse("(-1)^k*binomial(n,k)");
    g = gosper(b, "k");
    REQUIRE(g.found);
    CHECK(g.multiplier == rf("-k/n"));
    CHECK(g.antidifference == parse("-k*(-1)^k*binomial(n,k)/n"));
    for (long k = 0; k < 10; ++k)
        CHECK(s_at(g, b, k + 1, {{"n", 10}}) - s_at(g, b, k, {{"n", 10}}) == eval_at(b, {{"k", k}, {"n", 10}}));

    g = gosper(Expr(1), "k");
    REQUIRE(g.found);
    CHECK(g.pqr.p == MPoly(1));
    CHECK(g.pqr.q == MPoly(1));
    CHECK(g.pqr.r == MPoly(1));
    CHECK(g.bound == 1);
    CHECK(g.antidifference == parse("k"));

    CHECK(!gosper(parse("k!"), "k").found);
    CHECK(!gosper(parse("1/(k^2+1)"), "k").found);
    CHECK(!gosper(parse("binomial(n,k)"), "k").found);
    CHECK_THROWS_AS(gosper(parse("k^k"), "k"), NotHypergeometric);
}

TEST_CASE("gosper_pqr invariants")
{
    const char* ratios[] = {"(n-k)/(k+1)", "1", "-1/2*(4*k+5)/(4*k+1)/(k+2)*(2*k-1)", "(k+3)*(k+1)/((k+5)*(2*k+1))",
                            "(k+a)*(k+2)^2/((k+a+3)*(k-1))", "x/(k+1)"};
    for (auto s : ratios) {
        RatFunc r = rf(s);
        check_pqr(r, gosper_pqr(r, "k"), "k");
    }
}

TEST_CASE("property: gosper finds antidifferences of telescoped terms")
{
    // a(k) = s(k+1) - s(k) with s = R(k) T(k)
    const char* T[] = {"k!", "2^k/k!", "binomial(n,k)", "pochhammer(a,k)/pochhammer(b,k)", "(2*k)!/k!^2"};
    const char* R[] = {"1", "k", "k^2+1", "1/(k+1)", "(k+n)/(2*k+3)"};
    for (auto ts : T)
        for (auto rs : R) {
            Expr t = parse(ts);
            RatFunc rr = rf(rs), rho = term_ratio(t, "k");
            RatFunc m = rr.shift("k", 1) * rho - rr;
            if (m.is_zero()) continue;
            Expr a = to_expr(m) * t;
            GosperResult g = gosper(a, "k");
            REQUIRE_MESSAGE(g.found, ts << " " << rs);
            RatFunc ra = term_ratio(a, "k");
            CHECK(g.multiplier.shift("k", 1) * ra - g.multiplier == RatFunc(1));
            RatFunc p = RatFunc(g.pqr.p), q1 = RatFunc(g.pqr.q.shift("k", 1)), r = RatFunc(g.pqr.r);
            CHECK(p == q1 * g.f - r * g.f.shift("k", -1));
            // unique up to a constant: the difference of multipliers is c/a(k)
            RatFunc diff = (g.multiplier - rr / m) * m;
            CHECK((!diff.depends_on("k") || diff.shift("k", 1) * rho == diff));
            check_pqr(ra, g.pqr, "k");
        }
}

TEST_CASE("property: nonexistence is confirmed by unbounded search")
{
    const char* terms[] = {"1/k", "k!", "1/(k^2+1)", "binomial(n,k)", "1/(2*k+1)", "(2*k)!/k!^2"};
    for (auto s : terms) {
        GosperResult g = gosper(parse(s), "k");
        REQUIRE(!g.found);
        long top = std::max(10L, 2 * (g.bound + 3));
        for (long d = 0; d <= top; ++d) CHECK_MESSAGE(!has_polynomial_solution(g.pqr, "k", d), s << " deg " << d);
    }
}
