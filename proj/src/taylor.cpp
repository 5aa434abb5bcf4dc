#include "hsum/expr.hpp"

#include <functional>
#include <optional>

namespace hsum {

namespace {

// sqrt(Pi) is carried as the symbol _s so that erf and GAMMA(1/2) stay exact.
const char* const S = "_s";

struct PrecisionLoss {};

// Truncated Laurent-Puiseux series: coefficients indexed by rational
// exponents; known below `prec` unless exact.
struct Ser {
    std::map<Rational, RatFunc> c;
    bool exact = true;
    Rational prec = 0;

    static Ser constant(const RatFunc& v)
    {
        Ser s;
        if (!v.is_zero()) s.c[Rational(0)] = v;
        return s;
    }
    static Ser monomial(const Rational& e, const RatFunc& v)
    {
        Ser s;
        if (!v.is_zero()) s.c[e] = v;
        return s;
    }
};

struct Ctx {
    std::string x;
    Rational T;  // working truncation: exponents >= T are dropped

    void cap(Ser& s) const
    {
        for (auto it = s.c.lower_bound(T); it != s.c.end();) it = s.c.erase(it);
        if (!s.exact && s.prec > T) s.prec = T;
    }

    Ser truncated(Ser s) const
    {
        bool had = s.c.lower_bound(T) != s.c.end();
        cap(s);
        if (had && s.exact) {
            s.exact = false;
            s.prec = T;
        }
        return s;
    }
};

Rational min_prec(const Ser& a, const Ser& b, bool& exact)
{
    exact = a.exact && b.exact;
    if (a.exact) return b.prec;
    if (b.exact) return a.prec;
    return std::min(a.prec, b.prec);
}

Ser add(const Ser& a, const Ser& b, const Ctx& cx)
{
    Ser r;
    r.prec = min_prec(a, b, r.exact);
    r.c = a.c;
    for (auto& [e, v] : b.c) {
        auto it = r.c.find(e);
        if (it == r.c.end())
            r.c[e] = v;
        else {
            it->second += v;
            if (it->second.is_zero()) r.c.erase(it);
        }
    }
    if (!r.exact)
        for (auto it = r.c.lower_bound(r.prec); it != r.c.end();) it = r.c.erase(it);
    return cx.truncated(r);
}

Rational valuation(const Ser& a)
{
    if (a.c.empty()) {
        if (a.exact) throw std::logic_error("valuation of zero");
        throw PrecisionLoss{};
    }
    return a.c.begin()->first;
}

Ser mul(const Ser& a, const Ser& b, const Ctx& cx)
{
    if ((a.exact && a.c.empty()) || (b.exact && b.c.empty())) return Ser{};
    Rational va = valuation(a), vb = valuation(b);
    Ser r;
    r.exact = a.exact && b.exact;
    if (!r.exact) {
        if (a.exact)
            r.prec = va + b.prec;
        else if (b.exact)
            r.prec = vb + a.prec;
        else
            r.prec = std::min(va + b.prec, vb + a.prec);
    }
    Rational lim = r.exact ? cx.T : std::min(r.prec, cx.T);
    bool dropped = false;
    for (auto& [ea, ca] : a.c) {
        if (ea + vb >= lim) {
            dropped = true;
            break;
        }
        for (auto& [eb, cb] : b.c) {
            Rational e = ea + eb;
            if (e >= lim) {
                dropped = true;
                break;
            }
            auto it = r.c.find(e);
            if (it == r.c.end())
                r.c.emplace(e, ca * cb);
            else {
                it->second += ca * cb;
            }
        }
    }
    for (auto it = r.c.begin(); it != r.c.end();) it = it->second.is_zero() ? r.c.erase(it) : std::next(it);
    if (r.exact && dropped) {
        r.exact = false;
        r.prec = cx.T;
    }
    cx.cap(r);
    return r;
}

Ser scale(const Ser& a, const RatFunc& k)
{
    Ser r = a;
    if (k.is_zero()) {
        r.c.clear();
        return r;
    }
    for (auto& [e, v] : r.c) v *= k;
    return r;
}

Ser shift_exp(const Ser& a, const Rational& by)
{
    Ser r;
    r.exact = a.exact;
    r.prec = a.prec + by;
    for (auto& [e, v] : a.c) r.c[e + by] = v;
    return r;
}

// Sum f_n w^n for n >= 0 where w has positive valuation.
Ser compose(const std::function<RatFunc(long)>& f, const Ser& w, const Ctx& cx)
{
    Ser r = Ser::constant(f(0));
    if (w.c.empty()) {
        if (!w.exact) {
            r.exact = false;
            r.prec = std::min(w.prec, cx.T);
        }
        return r;
    }
    Rational v = valuation(w);
    if (v <= 0) throw std::logic_error("compose: nonpositive valuation");
    Ser p = Ser::constant(RatFunc(1));
    for (long n = 1;; ++n) {
        if (v * n >= cx.T) {
            if (r.exact) {
                r.exact = false;
                r.prec = cx.T;
            }
            break;
        }
        p = mul(p, w, cx);
        RatFunc fn = f(n);
        if (!fn.is_zero()) r = add(r, scale(p, fn), cx);
    }
    if (!w.exact) {
        Rational pr = std::min(w.prec, cx.T);
        if (r.exact || r.prec > pr) {
            r.exact = false;
            r.prec = pr;
        }
        for (auto it = r.c.lower_bound(r.prec); it != r.c.end();) it = r.c.erase(it);
    }
    return r;
}

// Leading coefficient c, valuation v, and w with a = c x^v (1 + w).
void normalize(const Ser& a, RatFunc& c, Rational& v, Ser& w)
{
    v = valuation(a);
    c = a.c.begin()->second;
    RatFunc ic = c.inverse();
    w = Ser{};
    w.exact = a.exact;
    w.prec = a.prec - v;
    for (auto& [e, k] : a.c)
        if (e != v) w.c[e - v] = k * ic;
}

Ser inverse(const Ser& a, const Ctx& cx)
{
    if (a.c.empty()) {
        if (a.exact) throw EvalError("division by zero");
        throw PrecisionLoss{};
    }
    RatFunc c;
    Rational v;
    Ser w;
    normalize(a, c, v, w);
    Ctx inner{cx.x, cx.T + v};
    Ser g = compose([](long n) { return RatFunc(n % 2 ? -1 : 1); }, w, inner);
    return cx.truncated(shift_exp(scale(g, c.inverse()), -v));
}

// Exact alpha-th power of a coefficient, when it exists.
std::optional<RatFunc> coeff_root(const RatFunc& c, const Rational& alpha)
{
    if (alpha.get_den() == 1) return c.pow(int(alpha.get_num().get_si()));
    auto root_poly = [&](const MPoly& p) -> std::optional<MPoly> {
        if (p.size() != 1) return std::nullopt;
        const Term& t = p.terms()[0];
        unsigned long q = alpha.get_den().get_ui();
        if (t.c < 0) return std::nullopt;
        Integer rn, rd;
        if (!mpz_root(rn.get_mpz_t(), t.c.get_num_mpz_t(), q) || !mpz_root(rd.get_mpz_t(), t.c.get_den_mpz_t(), q))
            return std::nullopt;
        MPoly m(frac(rn, rd));
        const auto& vars = *p.vars();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (t.e[i] % long(q)) return std::nullopt;
            m *= MPoly::var(vars[i]).pow(unsigned(t.e[i] / long(q)));
        }
        return m;
    };
    auto n = root_poly(c.num()), d = root_poly(c.den());
    if (!n || !d) return std::nullopt;
    return RatFunc::make(*n, *d).pow(int(alpha.get_num().get_si()));
}

Ser power(const Ser& a, const RatFunc& alpha, const Ctx& cx)
{
    if (alpha.is_constant() && alpha.constant_value().get_den() == 1) {
        long n = alpha.constant_value().get_num().get_si();
        if (n == 0) return Ser::constant(RatFunc(1));
        if (a.exact && n > 0 && n <= 64) {
            Ser r = Ser::constant(RatFunc(1)), b = a;
            for (long m = n; m; m >>= 1) {
                if (m & 1) r = mul(r, b, cx);
                if (m > 1) b = mul(b, b, cx);
            }
            return r;
        }
        if (a.exact && n < 0 && a.c.size() == 1) {
            auto [e, v] = *a.c.begin();
            return Ser::monomial(e * n, v.pow(int(n)));
        }
    }
    if (a.c.empty()) {
        if (a.exact) {
            if (alpha.is_constant() && alpha.constant_value() > 0) return Ser{};
            throw EvalError("division by zero");
        }
        throw PrecisionLoss{};
    }
    RatFunc c;
    Rational v;
    Ser w;
    normalize(a, c, v, w);
    RatFunc lead;
    Rational ve = 0;
    if (alpha.is_constant()) {
        Rational al = alpha.constant_value();
        auto r = coeff_root(c, al);
        if (!r) throw EvalError("power of a non-rational leading coefficient");
        lead = *r;
        ve = v * al;
    } else {
        if (v != 0 || c != RatFunc(1)) throw EvalError("symbolic power needs a series starting with 1");
        lead = RatFunc(1);
    }
    Ctx inner{cx.x, cx.T - ve};
    Ser g = compose(
        [&](long n) {
            RatFunc b(1);
            for (long i = 0; i < n; ++i) b = b * (alpha - RatFunc(i)) / RatFunc(i + 1);
            return b;
        },
        w, inner);
    return cx.truncated(shift_exp(scale(g, lead), ve));
}

Rational factorial_q(long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return Rational(r);
}

Ser series(const Expr& e, const Ctx& cx);

Ser analytic_arg(const Expr& u, const Ctx& cx, const std::string& head)
{
    Ser s = series(u, cx);
    if (!s.c.empty() && s.c.begin()->first <= 0)
        throw EvalError(head + ": argument does not vanish at the origin");
    return s;
}

Ser series(const Expr& e, const Ctx& cx)
{
    switch (e.kind()) {
    case Kind::Num:
        return Ser::constant(RatFunc(e.value()));
    case Kind::Sym:
        if (e.name() == cx.x) return cx.truncated(Ser::monomial(1, RatFunc(1)));
        if (e.name() == "Pi") return Ser::constant(RatFunc::var(S).pow(2));
        return Ser::constant(RatFunc::var(e.name()));
    case Kind::Add: {
        Ser r;
        for (auto& a : e.args()) r = add(r, series(a, cx), cx);
        return r;
    }
    case Kind::Mul: {
        Ser r = Ser::constant(RatFunc(1));
        for (auto& a : e.args()) r = mul(r, series(a, cx), cx);
        return r;
    }
    case Kind::Pow: {
        const Expr &b = e.args()[0], &x = e.args()[1];
        if (depends_on(x, cx.x)) throw EvalError("composition not supported: " + e.str());
        RatFunc alpha;
        try {
            alpha = eval_rf(x);
        } catch (const EvalError&) {
            throw EvalError("composition not supported: " + e.str());
        }
        if (!alpha.is_constant() && !depends_on(b, cx.x)) throw EvalError("symbolic power of a constant: " + e.str());
        Ser sb = series(b, cx);
        if (alpha.is_constant() && alpha.constant_value() < 0) {
            // invert first, keeps precision bookkeeping simple
            Ser inv = inverse(sb, cx);
            return power(inv, -alpha, cx);
        }
        return power(sb, alpha, cx);
    }
    case Kind::Factorial:
    case Kind::Binomial:
    case Kind::Pochhammer:
    case Kind::Gamma:
        if (depends_on(e, cx.x)) throw EvalError("composition not supported: " + e.str());
        return Ser::constant(eval_rf(e));
    case Kind::Func: {
        const std::string& f = e.name();
        if (!depends_on(e, cx.x)) throw EvalError("transcendental constant " + e.str());
        if (f == "besselj") {
            RatFunc nuv;
            try {
                nuv = eval_rf(e.args()[0]);
            } catch (const EvalError&) {
                throw EvalError("besselj: order must be an integer for series expansion");
            }
            if (!nuv.is_constant() || nuv.constant_value().get_den() != 1)
                throw EvalError("besselj: order must be an integer for series expansion");
            long nu = nuv.constant_value().get_num().get_si();
            long sign = 1;
            if (nu < 0) {
                nu = -nu;
                if (nu % 2) sign = -1;
            }
            Ser u = analytic_arg(e.args()[1], cx, f);
            Ser h = scale(u, RatFunc(Rational(1, 2)));
            Ser h2 = mul(h, h, cx);
            Ser g = compose(
                [&](long m) {
                    return RatFunc(Rational(m % 2 ? -1 : 1) / (factorial_q(m) * factorial_q(m + nu)));
                },
                h2, cx);
            Ser r = mul(power(h, RatFunc(nu), cx), g, cx);
            return scale(r, RatFunc(sign));
        }
        const Expr& u0 = e.args()[0];
        if (f == "ln") {
            Ser a = series(u0, cx);
            RatFunc c;
            Rational v;
            Ser w;
            normalize(a, c, v, w);
            if (v != 0 || c != RatFunc(1)) throw EvalError("ln: argument must tend to 1 at the origin");
            return compose([](long n) { return n == 0 ? RatFunc(0) : RatFunc(Rational(n % 2 ? 1 : -1, n)); }, w, cx);
        }
        if (f == "exp") {
            Ser u = series(u0, cx);
            if (!u.c.empty() && u.c.begin()->first <= 0) {
                if (u.c.begin()->first < 0) throw EvalError("exp: singular argument");
                throw EvalError("exp: argument must vanish at the origin");
            }
            return compose([](long n) { return RatFunc(Rational(1) / factorial_q(n)); }, u, cx);
        }
        Ser u = analytic_arg(u0, cx, f);
        if (f == "sin")
            return compose(
                [](long n) {
                    return n % 2 ? RatFunc(Rational((n / 2) % 2 ? -1 : 1) / factorial_q(n)) : RatFunc(0);
                },
                u, cx);
        if (f == "cos")
            return compose(
                [](long n) {
                    return n % 2 ? RatFunc(0) : RatFunc(Rational((n / 2) % 2 ? -1 : 1) / factorial_q(n));
                },
                u, cx);
        if (f == "arctan")
            return compose(
                [](long n) { return n % 2 ? RatFunc(Rational((n / 2) % 2 ? -1 : 1, n)) : RatFunc(0); }, u, cx);
        if (f == "arcsin")
            return compose(
                [](long n) {
                    if (n % 2 == 0) return RatFunc(0);
                    long m = n / 2;
                    Integer p4;
                    mpz_ui_pow_ui(p4.get_mpz_t(), 4, (unsigned long)m);
                    Rational fm = factorial_q(m);
                    return RatFunc(factorial_q(2 * m) / (Rational(p4) * fm * fm * n));
                },
                u, cx);
        if (f == "erf") {
            RatFunc two_over_s = RatFunc(2) / RatFunc::var(S);
            return compose(
                [&](long n) {
                    if (n % 2 == 0) return RatFunc(0);
                    long m = n / 2;
                    return two_over_s * RatFunc(Rational(m % 2 ? -1 : 1) / (factorial_q(m) * n));
                },
                u, cx);
        }
        throw EvalError("no series rule for " + f);
    }
    }
    throw EvalError("cannot expand " + e.str());
}

}  // namespace

TaylorSeries taylor(const Expr& e, const std::string& x, int order)
{
    if (order < 0) throw std::invalid_argument("taylor: negative order");
    for (int slack = 0; slack <= 96; slack = slack ? slack * 2 : 2) {
        Ctx cx{x, Rational(order + 1 + slack)};
        Ser s;
        try {
            s = series(e, cx);
        } catch (const PrecisionLoss&) {
            continue;
        }
        if (!s.exact && s.prec < order + 1) continue;
        TaylorSeries out;
        out.var = x;
        out.coeffs.assign(order + 1, RatFunc(0));
        for (auto& [ex, c] : s.c) {
            if (ex >= order + 1) break;
            if (ex < 0) throw EvalError("singular at the origin: " + e.str());
            if (ex.get_den() != 1) throw EvalError("not a power series (fractional exponent): " + e.str());
            if (c.depends_on(S)) throw EvalError("coefficient involves sqrt(Pi): " + e.str());
            out.coeffs[ex.get_num().get_si()] = c;
        }
        return out;
    }
    throw EvalError("taylor: precision could not be reached for " + e.str());
}

}  // namespace hsum
