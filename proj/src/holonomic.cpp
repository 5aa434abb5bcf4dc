#include "hsum/holonomic.hpp"

#include "hsum/factorize.hpp"
#include "hsum/matrix.hpp"
#include "hsum/zeilberger.hpp"

#include <algorithm>
#include <functional>

namespace hsum {

namespace {

using Vec = std::vector<RatFunc>;
using Deriv = std::function<Vec(const Vec&)>;

DiffEq make_de(const std::vector<RatFunc>& c, const std::string& x, const std::string& func = "F")
{
    DiffEq de;
    de.func = func;
    de.var = x;
    de.coeffs = normalize_operator(c);
    return de;
}

// First Q(x)-linear relation among v, v', v'', ...
DiffEq first_dependence(const Vec& v0, const Deriv& deriv, int max_order, const std::string& x)
{
    std::vector<Vec> ds{v0};
    for (int N = 0; N <= max_order; ++N) {
        if (N > 0) ds.push_back(deriv(ds.back()));
        Matrix A(v0.size(), N + 1);
        for (int j = 0; j <= N; ++j)
            for (std::size_t i = 0; i < v0.size(); ++i) A(i, j) = ds[j][i];
        auto ns = nullspace(A);
        if (!ns.empty()) return make_de(ns[0], x);
    }
    throw std::logic_error("no linear dependence within the module dimension");
}

std::vector<RatFunc> rat_coeffs(const DiffEq& L)
{
    std::vector<RatFunc> c;
    for (auto& p : L.coeffs) c.push_back(RatFunc(p));
    return c;
}

// derivative in the module spanned by f, f', ..., f^(r-1) at offset o
void derive_part(const Vec& v, Vec& out, std::size_t o, const std::vector<RatFunc>& c, const std::string& x)
{
    std::size_t r = c.size() - 1;
    for (std::size_t i = 0; i < r; ++i) {
        const RatFunc& a = v[o + i];
        if (a.is_zero()) continue;
        out[o + i] += a.derivative(x);
        if (i + 1 < r)
            out[o + i + 1] += a;
        else
            for (std::size_t t = 0; t < r; ++t) out[o + t] -= a * c[t] / c[r];
    }
}

Vec single_deriv(const Vec& v, const std::vector<RatFunc>& c, const std::string& x)
{
    Vec out(v.size());
    derive_part(v, out, 0, c, x);
    return out;
}

void require_same_var(const DiffEq& a, const DiffEq& b)
{
    if (a.var != b.var) throw std::invalid_argument("differential equations in different variables");
}

}  // namespace

DiffEq base_de(const std::string& head, const std::string& x, const std::vector<Expr>& params)
{
    RatFunc X = RatFunc::var(x), one(1), zero;
    auto param = [&](const char* what) {
        if (params.size() != 1) throw std::invalid_argument(head + " needs one parameter (" + what + ")");
        if (depends_on(params[0], x)) throw NotHolonomic(head + ": the " + what + " must not depend on " + x);
        return eval_rf(params[0]);
    };
    if (head == "exp") return make_de({-one, one}, x);
    if (head == "sin" || head == "cos") return make_de({one, zero, one}, x);
    if (head == "arcsin") return make_de({zero, X, X * X - one}, x);
    if (head == "arctan") return make_de({zero, RatFunc(2) * X, X * X + one}, x);
    if (head == "erf") return make_de({zero, RatFunc(2) * X, one}, x);
    if (head == "ln") return make_de({zero, one, X}, x);
    if (head == "besselj") {
        RatFunc n = param("order");
        return make_de({X * X - n * n, X, X * X}, x);
    }
    if (head == "power") return make_de({-param("exponent"), X}, x);
    throw NotHolonomic("no catalog differential equation for " + head);
}

DiffEq de_plus_de(const DiffEq& a, const DiffEq& b)
{
    require_same_var(a, b);
    auto ca = rat_coeffs(a), cb = rat_coeffs(b);
    std::size_t ra = ca.size() - 1, rb = cb.size() - 1;
    Vec v0(ra + rb);
    if (ra) v0[0] = RatFunc(1);
    if (rb) v0[ra] = RatFunc(1);
    Deriv d = [&](const Vec& v) {
        Vec out(v.size());
        derive_part(v, out, 0, ca, a.var);
        derive_part(v, out, ra, cb, a.var);
        return out;
    };
    DiffEq r = first_dependence(v0, d, int(ra + rb), a.var);
    r.func = a.func;
    return r;
}

DiffEq de_times_de(const DiffEq& a, const DiffEq& b)
{
    require_same_var(a, b);
    auto ca = rat_coeffs(a), cb = rat_coeffs(b);
    std::size_t ra = ca.size() - 1, rb = cb.size() - 1;
    if (ra == 0 || rb == 0) return make_de({RatFunc(1)}, a.var, a.func);
    const std::string& x = a.var;
    Vec v0(ra * rb);
    v0[0] = RatFunc(1);
    Deriv d = [&](const Vec& v) {
        Vec out(v.size());
        for (std::size_t i = 0; i < ra; ++i)
            for (std::size_t j = 0; j < rb; ++j) {
                const RatFunc& c = v[i * rb + j];
                if (c.is_zero()) continue;
                out[i * rb + j] += c.derivative(x);
                if (i + 1 < ra)
                    out[(i + 1) * rb + j] += c;
                else
                    for (std::size_t t = 0; t < ra; ++t) out[t * rb + j] -= c * ca[t] / ca[ra];
                if (j + 1 < rb)
                    out[i * rb + j + 1] += c;
                else
                    for (std::size_t t = 0; t < rb; ++t) out[i * rb + t] -= c * cb[t] / cb[rb];
            }
        return out;
    };
    DiffEq r = first_dependence(v0, d, int(ra * rb), x);
    r.func = a.func;
    return r;
}

namespace {

// Elements of Q(x)[y]/(y^m - r) as coefficient vectors in y.
struct AlgebraicRing {
    int m;
    RatFunc r;

    Vec reduce(std::vector<RatFunc> p) const
    {
        for (int t = int(p.size()) - 1; t >= m; --t) {
            if (p[t].is_zero()) continue;
            p[t - m] += p[t] * r;
            p[t] = RatFunc();
        }
        p.resize(m);
        return p;
    }
    Vec mul(const Vec& a, const Vec& b) const
    {
        std::vector<RatFunc> p(2 * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (!a[i].is_zero() && !b[j].is_zero()) p[i + j] += a[i] * b[j];
        return reduce(p);
    }
    Vec inverse(const Vec& a) const
    {
        Matrix M(m, m);
        for (int l = 0; l < m; ++l) {
            Vec yl(m);
            yl[l] = RatFunc(1);
            Vec col = mul(a, yl);
            for (int i = 0; i < m; ++i) M(i, l) = col[i];
        }
        Vec e(m);
        e[0] = RatFunc(1);
        LinearSolution s = fraction_free_solve(M, e);
        if (s.kind != SolveKind::Unique) throw NotHolonomic("leading coefficient vanishes on the substitution");
        return s.particular;
    }
};

}  // namespace

DiffEq algebraic_substitute(const DiffEq& L, int m, const RatFunc& r)
{
    if (m < 1) throw std::invalid_argument("algebraic_substitute: m must be positive");
    const std::string x = L.var;
    AlgebraicRing R{m, r};
    std::size_t ord = L.coeffs.size() - 1;
    if (ord == 0) return L;
    // L's coefficients evaluated at y
    std::vector<Vec> cy;
    for (auto& c : L.coeffs) {
        auto pc = c.coeffs(x);
        std::vector<RatFunc> p;
        for (auto& t : pc) p.push_back(RatFunc(t));
        if (p.empty()) p.push_back(RatFunc());
        cy.push_back(R.reduce(p));
    }
    Vec inv = R.inverse(cy[ord]);
    std::vector<Vec> red;  // f^(ord)(y) = sum_t red[t] f^(t)(y)
    for (std::size_t t = 0; t < ord; ++t) {
        Vec w = R.mul(cy[t], inv);
        for (auto& q : w) q = -q;
        red.push_back(w);
    }
    RatFunc dr = r.derivative(x), lfac = dr / (RatFunc(m) * r);  // y'/y
    auto idx = [&](int l, std::size_t i) { return std::size_t(l) * ord + i; };
    Deriv d = [&](const Vec& v) {
        Vec out(v.size());
        for (int l = 0; l < m; ++l)
            for (std::size_t i = 0; i < ord; ++i) {
                const RatFunc& a = v[idx(l, i)];
                if (a.is_zero()) continue;
                out[idx(l, i)] += a.derivative(x) + a * RatFunc(l) * lfac;
                // a y^l f^(i+1)(y) y' with y' = lfac * y
                Vec coef(m);
                if (l + 1 < m)
                    coef[l + 1] = a * lfac;
                else
                    coef[0] = a * lfac * r;
                if (i + 1 < ord) {
                    for (int t = 0; t < m; ++t)
                        if (!coef[t].is_zero()) out[idx(t, i + 1)] += coef[t];
                } else {
                    for (std::size_t s = 0; s < ord; ++s) {
                        Vec c2 = R.mul(coef, red[s]);
                        for (int t = 0; t < m; ++t)
                            if (!c2[t].is_zero()) out[idx(t, s)] += c2[t];
                    }
                }
            }
        return out;
    };
    Vec v0(m * ord);
    v0[0] = RatFunc(1);
    DiffEq out = first_dependence(v0, d, int(m * ord), x);
    out.func = L.func;
    return out;
}

namespace {

// y^m rational in x for some small m
bool algebraic_argument(const Expr& u, int& m, RatFunc& r)
{
    for (m = 1; m <= 6; ++m) {
        try {
            r = eval_rf(Expr::pow(u, Expr(m)));
            return true;
        } catch (const EvalError&) {
        }
    }
    return false;
}

DiffEq compose(const DiffEq& base, const Expr& u, const std::string& x, const Expr& whole)
{
    if (u.kind() == Kind::Sym && u.name() == x) return base;
    int m;
    RatFunc r;
    if (!algebraic_argument(u, m, r)) throw NotHolonomic("unsupported argument in " + whole.str());
    if (r.is_constant()) return make_de({RatFunc(), RatFunc(1)}, x);
    return algebraic_substitute(base, m, r);
}

}  // namespace

DiffEq closure_de(const Expr& e, const std::string& x)
{
    if (!depends_on(e, x)) return make_de({RatFunc(), RatFunc(1)}, x);
    try {
        RatFunc R = eval_rf(e);
        return make_de({-R.derivative(x), R}, x);
    } catch (const EvalError&) {
    }
    switch (e.kind()) {
    case Kind::Add: {
        DiffEq out = closure_de(e.args()[0], x);
        for (std::size_t i = 1; i < e.args().size(); ++i) out = de_plus_de(out, closure_de(e.args()[i], x));
        return out;
    }
    case Kind::Mul: {
        std::vector<Expr> f;
        for (auto& a : e.args())
            if (depends_on(a, x)) f.push_back(a);
        DiffEq out = closure_de(f[0], x);
        for (std::size_t i = 1; i < f.size(); ++i) out = de_times_de(out, closure_de(f[i], x));
        return out;
    }
    case Kind::Pow: {
        const Expr &b = e.args()[0], &a = e.args()[1];
        if (depends_on(a, x)) break;
        try {
            RatFunc rb = eval_rf(b);
            RatFunc ra = eval_rf(a);
            return make_de({-ra * rb.derivative(x), rb}, x);
        } catch (const EvalError&) {
        }
        if (a.is_integer() && a.value() > 0 && a.value() <= 12) {
            DiffEq f = closure_de(b, x), out = f;
            for (long i = 1; i < a.value().get_num().get_si(); ++i) out = de_times_de(out, f);
            return out;
        }
        break;
    }
    case Kind::Func: {
        const std::string& h = e.name();
        if (h == "besselj") return compose(base_de(h, x, {e.args()[0]}), e.args()[1], x, e);
        if (e.args().size() == 1) return compose(base_de(h, x), e.args()[0], x, e);
        break;
    }
    default:
        break;
    }
    throw NotHolonomic("cannot find a holonomic differential equation for " + e.str());
}

namespace {

// a(k) natural indexing: the x^n equation is sum_s q[s - lo](n) a(n + s)
struct ShiftForm {
    long lo = 0;
    std::vector<MPoly> q;
};

MPoly falling(const MPoly& v, long j)
{
    MPoly out(1);
    for (long i = 0; i < j; ++i) out *= v - MPoly(Rational(i));
    return out;
}

ShiftForm shift_form(const DiffEq& L, const std::string& n)
{
    const std::string& x = L.var;
    long lo = 0, hi = 0;
    bool first = true;
    std::vector<std::vector<MPoly>> pc;
    for (std::size_t j = 0; j < L.coeffs.size(); ++j) {
        pc.push_back(L.coeffs[j].coeffs(x));
        for (std::size_t p = 0; p < pc[j].size(); ++p) {
            if (pc[j][p].is_zero()) continue;
            long s = long(j) - long(p);
            lo = first ? s : std::min(lo, s);
            hi = first ? s : std::max(hi, s);
            first = false;
        }
    }
    ShiftForm f;
    f.lo = lo;
    f.q.assign(hi - lo + 1, MPoly());
    MPoly N = MPoly::var(n);
    for (std::size_t j = 0; j < pc.size(); ++j)
        for (std::size_t p = 0; p < pc[j].size(); ++p) {
            if (pc[j][p].is_zero()) continue;
            long s = long(j) - long(p);
            f.q[s - lo] += pc[j][p] * falling(N + MPoly(Rational(s)), long(j));
        }
    return f;
}

long max_nonneg_root(const MPoly& p)
{
    long best = -1;
    if (p.is_zero() || p.is_constant()) return best;
    if (p.used_vars().size() > 1) throw NotHolonomic("parameters in the leading recurrence coefficient");
    for (auto& r : rational_roots(p))
        if (r >= 0 && r.get_den() == 1) best = std::max(best, r.get_num().get_si());
    return best;
}

}  // namespace

Recurrence de_to_re(const DiffEq& L, const std::string& func, const std::string& k)
{
    ShiftForm f = shift_form(L, k);
    std::vector<RatFunc> c;
    if (f.lo >= 0) {
        c.assign(f.lo, RatFunc());
        for (auto& q : f.q) c.push_back(RatFunc(q));
    } else {
        for (auto& q : f.q) c.push_back(RatFunc(q.shift(k, -f.lo)));
    }
    Recurrence re;
    re.func = func;
    re.var = k;
    re.coeffs = normalize_operator(c, false);
    return re;
}

long zero_test_bound(const DiffEq& L)
{
    ShiftForm f = shift_form(L, "n");
    long hi = f.lo + long(f.q.size()) - 1;
    long root = max_nonneg_root(f.q.back());
    return std::max<long>(root + 1 + hi, L.order()) + 1;
}

namespace {

bool series_vanishes(const DiffEq& L, const std::function<std::vector<RatFunc>(int)>& series)
{
    long N0 = zero_test_bound(L);
    auto s = series(int(N0));
    for (long i = 0; i < N0 && i < long(s.size()); ++i)
        if (!s[i].is_zero()) return false;
    return true;
}

std::vector<RatFunc> taylor_coeffs(const Expr& e, const std::string& x, int order)
{
    return taylor(e, x, order).coeffs;
}

// Lower-order annihilators guessed from the series and certified.
std::optional<DiffEq> minimize(const DiffEq& closure, const Expr& e, const std::string& x)
{
    int R = closure.order();
    if (R <= 1) return std::nullopt;
    int maxdeg = 0;
    for (auto& c : closure.coeffs)
        if (!c.is_zero()) maxdeg = std::max(maxdeg, c.degree(x));
    std::vector<RatFunc> ser;
    auto need = [&](int order) {
        if (int(ser.size()) <= order) ser = taylor_coeffs(e, x, order);
        return ser;
    };
    try {
        need(8);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    auto cc = rat_coeffs(closure);
    for (int r = 1; r < R; ++r)
        for (int dg = 0; dg <= maxdeg; ++dg) {
            int U = (r + 1) * (dg + 1), M = U + 12;
            auto s = need(M + r);
            Matrix A(M, U);
            for (int nrow = 0; nrow < M; ++nrow)
                for (int j = 0; j <= r; ++j)
                    for (int i = 0; i <= dg; ++i) {
                        long idx = nrow - i + j;
                        if (nrow - i < 0) continue;
                        Rational ff = 1;
                        for (long t = 0; t < j; ++t) ff *= idx - t;
                        A(nrow, j * (dg + 1) + i) = s[idx] * RatFunc(ff);
                    }
            for (auto& v : nullspace(A)) {
                std::vector<RatFunc> c(r + 1);
                RatFunc X = RatFunc::var(x);
                for (int j = 0; j <= r; ++j)
                    for (int i = dg; i >= 0; --i) c[j] = c[j] * X + v[j * (dg + 1) + i];
                if (c[r].is_zero()) continue;
                DiffEq cand = make_de(c, x);
                // h = cand(e) in the module of the closure equation
                Vec h(R), d(R);
                d[0] = RatFunc(1);
                for (int j = 0; j <= cand.order(); ++j) {
                    for (int t = 0; t < R; ++t) h[t] += RatFunc(cand.coeffs[j]) * d[t];
                    d = single_deriv(d, cc, x);
                }
                bool zero = std::all_of(h.begin(), h.end(), [](const RatFunc& q) { return q.is_zero(); });
                if (!zero) {
                    DiffEq Lh = first_dependence(h, [&](const Vec& w) { return single_deriv(w, cc, x); }, R, x);
                    zero = series_vanishes(Lh, [&](int order) { return hsum::apply(cand, need(order + cand.order())); });
                }
                if (zero) return cand;
            }
        }
    return std::nullopt;
}

}  // namespace

DiffEq simple_de(const Expr& e, const std::string& x, const std::string& func, bool minimize_order)
{
    DiffEq de = closure_de(e, x);
    if (minimize_order)
        if (auto m = minimize(de, e, x)) de = *m;
    de.func = func;
    return de;
}

bool holonomic_zero_test(const DiffEq& L, const Expr& e)
{
    return series_vanishes(L, [&](int order) { return taylor_coeffs(e, L.var, order); });
}

Expr FormalPowerSeries::expr() const
{
    Expr k = Expr::sym(term.var);
    return term.display * Expr::pow(Expr::sym(var), Expr(m) * k + Expr(s));
}

std::string FormalPowerSeries::str() const
{
    std::vector<Expr> parts;
    for (auto& [p, c] : exceptional) parts.push_back(to_expr(c) * Expr::pow(Expr::sym(var), Expr(p)));
    std::string out = parts.empty() ? "" : Expr::add(parts).str();
    if (c0.is_zero()) return parts.empty() ? "0" : out;
    return (parts.empty() ? "" : out + " + ") + "Sum(" + expr().str() + ", " + term.var + " = 0..infinity)";
}

RatFunc FormalPowerSeries::coefficient(int i) const
{
    for (auto& [p, c] : exceptional)
        if (p == i) return c;
    if (i < s || (i - s) % m) return RatFunc();
    RatFunc c = c0;
    for (long k = 0; k < (i - s) / m; ++k) c *= term.ratio.subs(term.var, RatFunc(k));
    return c;
}

FormalPowerSeries fps(const Expr& e, const std::string& x)
{
    DiffEq L = simple_de(e, x);
    ShiftForm f = shift_form(L, "n");
    std::vector<long> nz;
    for (std::size_t i = 0; i < f.q.size(); ++i)
        if (!f.q[i].is_zero()) nz.push_back(long(i));
    if (nz.size() == 1) {
        // a(i) vanishes except at integer roots of the single coefficient
        MPoly q = f.q[nz[0]].shift("n", -(f.lo + nz[0]));
        long top = max_nonneg_root(q);
        auto a = taylor_coeffs(e, x, int(top + 2));
        FormalPowerSeries out;
        out.var = x;
        out.m = 1;
        out.term.var = "k";
        out.term.ratio = RatFunc();
        out.term.display = Expr(0);
        for (long i = 0; i <= top; ++i)
            if (!a[i].is_zero()) out.exceptional.push_back({int(i), a[i]});
        return out;
    }
    if (nz.size() != 2) throw NotHolonomic("the coefficient recurrence is not of hypergeometric type: " + de_to_re(L).str());
    long s1 = f.lo + nz[0], s2 = f.lo + nz[1];
    int m = int(s2 - s1);
    const MPoly &A = f.q[nz[0]], &B = f.q[nz[1]];
    // a(i+m) = rho(i) a(i), valid where B(i - s1) != 0
    RatFunc rho = -(RatFunc(A) / RatFunc(B)).shift("n", -s1);
    long pole = max_nonneg_root(B.shift("n", -s1)) ;
    long i0 = std::max<long>(pole + 1, 0);
    long T = 2 * (m + std::max<long>(pole, 0)) + 4 + i0 + m;
    auto a = taylor_coeffs(e, x, int(T));
    // first nonzero coefficient at or after i0 fixes the residue class
    long start = -1;
    for (long i = i0; i < i0 + m; ++i)
        if (!a[i].is_zero()) {
            if (start >= 0) throw NotHolonomic("mixed support: several residue classes modulo " + std::to_string(m));
            start = i;
        }
    FormalPowerSeries out;
    out.var = x;
    out.m = m;
    std::vector<std::pair<int, RatFunc>> exc;
    if (start < 0) {
        // finitely many nonzero terms
        for (long i = 0; i < i0; ++i)
            if (!a[i].is_zero()) exc.push_back({int(i), a[i]});
        if (exc.empty()) throw NotHolonomic("the series is zero");
        start = exc.back().first;
        exc.pop_back();
        out.s = int(start);
        out.c0 = a[start];
    } else {
        out.s = int(start);
        out.c0 = a[start];
    }
    // pull the start back while the ratio reproduces earlier terms of the class
    while (out.s - m >= 0) {
        long p = out.s - m;
        RatFunc r = rho.subs("n", RatFunc(p));
        if (subs_poly(B.shift("n", -s1), "n", RatFunc(p)).is_zero()) break;
        if (a[p].is_zero() || a[p] * r != a[out.s]) break;
        out.s = int(p);
        out.c0 = a[p];
    }
    for (long i = 0; i < out.s; ++i)
        if (!a[i].is_zero()) exc.push_back({int(i), a[i]});
    out.exceptional = exc;
    std::string k = "k";
    RatFunc ratio = rho.subs("n", RatFunc(Rational(m)) * RatFunc::var(k) + RatFunc(Rational(out.s)));
    out.term.var = k;
    out.term.ratio = ratio;
    out.term.display = term_from_ratio(ratio, k, 0, out.c0);
    // exactness against the Taylor data
    for (long i = 0; i <= T; ++i)
        if (out.coefficient(int(i)) != a[i])
            throw NotHolonomic("series representation does not match the Taylor coefficient of " + x + "^" + std::to_string(i));
    return out;
}

}  // namespace hsum
