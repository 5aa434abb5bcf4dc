#include "hsum/gosper.hpp"

#include "hsum/factorize.hpp"
#include "hsum/matrix.hpp"

namespace hsum {

PQR gosper_pqr(const RatFunc& ratio, const std::string& k)
{
    // work with a(k)/a(k-1) = q(k)/r(k) * p(k)/p(k-1)
    RatFunc s = ratio.shift(k, -1);
    PQR t{MPoly(1), s.num(), s.den()};
    while (true) {
        auto js = dispersion_set(t.q, t.r, k);
        bool changed = false;
        for (long j : js) {
            MPoly g = poly_gcd(t.q, t.r.shift(k, j));
            if (g.degree(k) < 1) continue;
            t.q = divide_or_throw(t.q, g);
            t.r = divide_or_throw(t.r, g.shift(k, -j));
            for (long i = 0; i < j; ++i) t.p *= g.shift(k, -i);
            changed = true;
            break;
        }
        if (!changed) break;
    }
    // keep the integer content of the ratio on q
    Rational c = t.p.content();
    if (t.p.lc() < 0) c = -c;
    t.p = t.p * Rational(1 / c);
    return t;
}

long degree_bound(const PQR& t, const std::string& k)
{
    MPoly Q = t.q.shift(k, 1), R = t.r;
    MPoly minus = Q - R, plus = Q + R;
    int dp = t.p.degree(k);
    int dm = minus.is_zero() ? -1 : minus.degree(k);
    int dl = plus.is_zero() ? -1 : plus.degree(k);
    if (dm >= dl) return dp - dm;
    // leading terms cancel: lc(f) (a + b d / 2) is the k^(d+dl-1) coefficient
    long d = dp - dl + 1;
    auto cm = minus.coeffs(k), cl = plus.coeffs(k);
    MPoly c1 = dl >= 1 && dl - 1 < int(cm.size()) ? cm[dl - 1] : MPoly();
    RatFunc q0 = dl >= 1 ? RatFunc(c1 * Rational(-2)) / RatFunc(cl[dl]) : RatFunc(-1);
    if (q0.is_constant()) {
        Rational d0 = q0.constant_value();
        if (d0 >= 0 && d0.get_den() == 1 && d0 > d) d = d0.get_num().get_si();
    }
    return d;
}

GosperResult gosper(const HyperTerm& a)
{
    const std::string& k = a.var;
    GosperResult out;
    out.var = k;
    out.pqr = gosper_pqr(a.ratio, k);
    out.bound = degree_bound(out.pqr, k);
    if (out.bound < 0) return out;
    const PQR& t = out.pqr;
    long d = out.bound;
    MPoly Q = t.q.shift(k, 1), kk = MPoly::var(k);
    std::vector<MPoly> cols;
    int rows = t.p.degree(k) + 1;
    for (long i = 0; i <= d; ++i) {
        MPoly c = Q * kk.pow(unsigned(i)) - t.r * (kk - MPoly(1)).pow(unsigned(i));
        rows = std::max(rows, c.degree(k) + 1);
        cols.push_back(c);
    }
    Matrix A(rows, d + 1);
    std::vector<RatFunc> rhs(rows);
    auto pc = t.p.coeffs(k);
    for (int i = 0; i < rows; ++i) {
        if (i < int(pc.size())) rhs[i] = RatFunc(pc[i]);
        for (long j = 0; j <= d; ++j) {
            auto cc = cols[j].coeffs(k);
            if (i < int(cc.size())) A(i, j) = RatFunc(cc[i]);
        }
    }
    LinearSolution sol = fraction_free_solve(A, rhs);
    if (sol.kind == SolveKind::Inconsistent) return out;
    std::vector<RatFunc> c = sol.particular;
    auto at_minus_one = [&](const std::vector<RatFunc>& v) {
        RatFunc s;
        for (long i = 0; i <= d; ++i) s += (i % 2 ? -v[i] : v[i]);
        return s;
    };
    // a free direction is spent on f(-1) = 0, i.e. s(0) = 0
    for (auto& h : sol.nullspace) {
        RatFunc hv = at_minus_one(h), cv = at_minus_one(c);
        if (hv.is_zero()) continue;
        RatFunc tt = -cv / hv;
        for (long i = 0; i <= d; ++i) c[i] += tt * h[i];
        break;
    }
    RatFunc kr = RatFunc::var(k);
    for (long i = d; i >= 0; --i) out.f = out.f * kr + c[i];
    out.multiplier = RatFunc(t.r) * out.f.shift(k, -1) / RatFunc(t.p);
    RatFunc check = out.multiplier.shift(k, 1) * a.ratio - out.multiplier;
    if (check != RatFunc(1)) throw std::logic_error("gosper: certificate check failed");
    out.found = true;
    out.antidifference = to_expr_factored(out.multiplier, {k}) * a.display;
    return out;
}

GosperResult gosper(const Expr& a, const std::string& k) { return gosper(hyper_term(a, k)); }

}  // namespace hsum
