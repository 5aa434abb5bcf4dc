#include "hsum/hyper.hpp"

#include "hsum/factorize.hpp"

#include <algorithm>

namespace hsum {

namespace {

Rational const_term(const MPoly& p)
{
    for (auto& t : p.terms()) {
        bool zero = true;
        for (int x : t.e) zero = zero && x == 0;
        if (zero) return t.c;
    }
    return 0;
}

Integer floor_of(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

bool is_int_const(const MPoly& p)
{
    return p.is_constant() && p.constant_value().get_den() == 1 && p.constant_value().get_num().fits_slong_p();
}

std::optional<RatFunc> try_rf(const Expr& e)
{
    try {
        return eval_rf(e);
    } catch (const EvalError&) {
        return std::nullopt;
    }
}

std::optional<MPoly> try_poly(const Expr& e)
{
    auto r = try_rf(e);
    if (!r || !r->is_polynomial()) return std::nullopt;
    return r->as_polynomial().compact();
}

struct GammaAtom {
    MPoly arg;
    long e;
};

struct PowAtom {
    Expr base;
    std::optional<MPoly> poly;  // set when the base is a polynomial
    MPoly expo;
};

struct Form;
Form form_of(const Expr& e);

// Product of a rational function, GAMMA atoms with integer exponents and
// power atoms with polynomial exponents. Factorials, binomials and
// Pochhammer symbols are rewritten through GAMMA, so two forms whose
// arguments differ by integers compare up to a rational factor.
struct Form {
    RatFunc rat = RatFunc(1);
    std::map<std::string, GammaAtom> gam;
    std::map<std::string, PowAtom> pw;

    bool rational() const { return gam.empty() && pw.empty(); }

    void add_gamma(const MPoly& arg, long e)
    {
        if (e == 0) return;
        MPoly a = arg.compact();
        auto key = a.str();
        auto it = gam.find(key);
        if (it == gam.end())
            gam.emplace(key, GammaAtom{a, e});
        else
            it->second.e += e;
    }

    void add_pow(const Expr& base, const std::optional<MPoly>& poly, const MPoly& expo)
    {
        if (expo.is_zero()) return;
        std::string key = poly ? "P" + poly->str() : "E" + base.str();
        auto it = pw.find(key);
        if (it == pw.end())
            pw.emplace(key, PowAtom{base, poly, expo});
        else
            it->second.expo += expo;
    }

    void mul(const Form& o, long s = 1)
    {
        rat *= s == 1 ? o.rat : o.rat.pow(int(s));
        for (auto& [k, g] : o.gam) add_gamma(g.arg, g.e * s);
        for (auto& [k, p] : o.pw) add_pow(p.base, p.poly, p.expo * Rational(s));
    }

    Form pow(long n) const
    {
        Form f;
        f.mul(*this, n);
        return f;
    }

    Form shift(const std::string& v, long j) const
    {
        Form f;
        f.rat = rat.shift(v, j);
        for (auto& [k, g] : gam) f.add_gamma(g.arg.shift(v, j), g.e);
        for (auto& [k, p] : pw) {
            MPoly ex = p.expo.shift(v, j);
            if (p.poly)
                f.add_pow(Expr(), p.poly->shift(v, j).compact(), ex);
            else
                f.add_pow(subs(p.base, v, Expr::sym(v) + Expr(j)), std::nullopt, ex);
        }
        f.normalize();
        return f;
    }

    // Gathers GAMMA atoms of one class at the lowest shift and turns integer
    // powers of polynomial bases into rational factors.
    void normalize()
    {
        struct Cls {
            MPoly rep;
            std::vector<std::pair<long, long>> items;
        };
        std::map<std::string, Cls> cls;
        for (auto& [k, g] : gam) {
            if (g.e == 0) continue;
            Integer fl = floor_of(const_term(g.arg));
            MPoly rep = (g.arg - MPoly(Rational(fl))).compact();
            auto& c = cls[rep.str()];
            c.rep = rep;
            c.items.push_back({fl.get_si(), g.e});
        }
        gam.clear();
        for (auto& [k, c] : cls) {
            long lo = c.items[0].first, total = 0;
            for (auto& [s, e] : c.items) {
                lo = std::min(lo, s);
                total += e;
            }
            for (auto& [s, e] : c.items) {
                MPoly prod(1);
                for (long i = lo; i < s; ++i) prod *= c.rep + MPoly(i);
                rat *= RatFunc(prod).pow(int(e));
            }
            if (total == 0) continue;
            MPoly a = (c.rep + MPoly(lo)).compact();
            if (a.is_constant() && a.constant_value() > 0) {
                // numeric values: GAMMA(3) = 2, GAMMA(1/2) = Pi^(1/2)
                Form v = form_of(Expr::gamma(Expr(a.constant_value())));
                rat *= v.rat.pow(int(total));
                for (auto& [kk, p] : v.pw) add_pow(p.base, p.poly, p.expo * Rational(total));
                continue;
            }
            gam.emplace(a.str(), GammaAtom{a, total});
        }
        for (auto it = pw.begin(); it != pw.end();) {
            auto& p = it->second;
            if (p.expo.is_zero()) {
                it = pw.erase(it);
            } else if (p.poly && is_int_const(p.expo)) {
                rat *= RatFunc(*p.poly).pow(int(p.expo.constant_value().get_num().get_si()));
                it = pw.erase(it);
            } else {
                ++it;
            }
        }
    }
};

void add_integer_base(Form& f, const Integer& n, const MPoly& expo)
{
    Integer m = n;
    for (long p = 2; p < 100000 && Integer(p) * p <= m; ++p) {
        long c = 0;
        while (m % p == 0) {
            m /= p;
            ++c;
        }
        if (c) f.add_pow(Expr(p), MPoly(p), expo * Rational(c));
    }
    if (m > 1) f.add_pow(Expr(Rational(m)), MPoly(Rational(m)), expo);
}

// base^expo with a rational base, split into sign, primes and factors.
void add_rational_base(Form& f, const RatFunc& r, const MPoly& expo)
{
    auto side = [&](const MPoly& p, long s) {
        Rational c = 1;
        if (!p.is_constant()) {
            Factorization fz = factor_pretty(p);
            c = fz.content;
            for (auto& [q, m] : fz.factors) {
                MPoly pq = q.primitive();
                c *= divide_or_throw(q, pq).constant_value();
                f.add_pow(Expr(), pq.compact(), expo * Rational(m * s));
            }
        } else {
            c = p.constant_value();
        }
        if (c < 0) f.add_pow(Expr(), MPoly(-1), expo);
        Rational a = abs(c);
        if (a.get_num() != 1) add_integer_base(f, a.get_num(), expo * Rational(s));
        if (a.get_den() != 1) add_integer_base(f, a.get_den(), expo * Rational(-s));
    };
    side(r.num(), 1);
    side(r.den(), -1);
}

Form opaque(const Expr& e)
{
    Form f;
    f.add_pow(e, std::nullopt, MPoly(1));
    return f;
}

Form gamma_form(const Expr& arg, const Expr& whole, long sign)
{
    auto p = try_poly(arg);
    if (!p) return opaque(whole).pow(sign);
    Form f;
    f.add_gamma(*p, sign);
    return f;
}

std::optional<RatFunc> quotient(const Form& a, const Form& b)
{
    if (b.rat.is_zero()) throw EvalError("division by a zero term");
    Form q = a;
    q.mul(b, -1);
    q.normalize();
    if (q.rat.is_zero()) return q.rat;
    if (!q.rational()) return std::nullopt;
    return q.rat;
}

Form form_of(const Expr& e)
{
    Form f;
    switch (e.kind()) {
    case Kind::Num:
        f.rat = RatFunc(e.value());
        return f;
    case Kind::Sym:
        f.rat = RatFunc::var(e.name());
        return f;
    case Kind::Add: {
        if (auto r = try_rf(e)) {
            f.rat = *r;
            return f;
        }
        std::vector<Form> t;
        for (auto& a : e.args()) t.push_back(form_of(a));
        std::size_t ref = 0;
        while (ref < t.size() && t[ref].rat.is_zero()) ++ref;
        if (ref == t.size()) {
            f.rat = RatFunc(0);
            return f;
        }
        RatFunc s;
        for (auto& ti : t) {
            auto q = quotient(ti, t[ref]);
            if (!q) return opaque(e);
            s += *q;
        }
        f = t[ref];
        f.rat *= s;
        return f;
    }
    case Kind::Mul:
        for (auto& a : e.args()) f.mul(form_of(a));
        f.normalize();
        return f;
    case Kind::Pow: {
        const Expr &b = e.args()[0], &x = e.args()[1];
        if (x.is_integer() && x.value().get_num().fits_slong_p()) {
            f = form_of(b).pow(x.value().get_num().get_si());
            f.normalize();
            return f;
        }
        auto ex = try_poly(x);
        if (!ex) return opaque(e);
        if (auto r = try_rf(b)) {
            if (r->is_zero()) return opaque(e);
            add_rational_base(f, *r, *ex);
        } else {
            f.add_pow(b, std::nullopt, *ex);
        }
        f.normalize();
        return f;
    }
    case Kind::Factorial:
        return gamma_form(e.args()[0] + Expr(1), e, 1);
    case Kind::Gamma:
        return gamma_form(e.args()[0], e, 1);
    case Kind::Binomial: {
        const Expr &t = e.args()[0], &m = e.args()[1];
        if (m.is_integer()) {
            if (auto r = try_rf(e)) {
                f.rat = *r;
                return f;
            }
        }
        f.mul(gamma_form(t + Expr(1), e, 1));
        f.mul(gamma_form(m + Expr(1), e, -1));
        f.mul(gamma_form(t - m + Expr(1), e, -1));
        f.normalize();
        return f;
    }
    case Kind::Pochhammer: {
        const Expr &a = e.args()[0], &m = e.args()[1];
        if (m.is_integer()) {
            if (auto r = try_rf(e)) {
                f.rat = *r;
                return f;
            }
        }
        f.mul(gamma_form(a + m, e, 1));
        f.mul(gamma_form(a, e, -1));
        f.normalize();
        return f;
    }
    case Kind::Func:
        return opaque(e);
    }
    return f;
}

Expr form_to_expr(const Form& f, const std::vector<std::string>& priority)
{
    std::vector<Expr> parts{to_expr_factored(f.rat, priority)};
    for (auto& [k, g] : f.gam) parts.push_back(Expr::pow(Expr::gamma(to_expr(g.arg)), Expr(g.e)));
    // primes with a common exponent are merged back: 2^k*3^k -> 6^k
    std::map<std::string, std::pair<Expr, Rational>> merged;
    for (auto& [k, p] : f.pw) {
        Expr ex = to_expr(p.expo);
        if (p.poly && p.poly->is_constant() && p.poly->constant_value() > 0) {
            auto& m = merged[ex.str()];
            if (m.second == 0) {
                m.first = ex;
                m.second = 1;
            }
            m.second *= p.poly->constant_value();
            continue;
        }
        Expr b = p.poly ? to_expr(*p.poly) : p.base;
        parts.push_back(Expr::pow(b, ex));
    }
    for (auto& [k, m] : merged) parts.push_back(Expr::pow(Expr(m.second), m.first));
    return Expr::mul(parts);
}

bool affine_in(const Expr& u, const std::string& k)
{
    auto p = try_poly(u);
    return p && p->degree(k) <= 1;
}

void check(const Expr& e, const std::string& k)
{
    if (!depends_on(e, k)) return;
    auto bad = [&]() { throw NotHypergeometric("not a hypergeometric term in " + k + ": " + e.str()); };
    switch (e.kind()) {
    case Kind::Num:
    case Kind::Sym:
        return;
    case Kind::Add:
        if (try_rf(e)) return;
        for (auto& a : e.args()) check(a, k);
        return;
    case Kind::Mul:
        for (auto& a : e.args()) check(a, k);
        return;
    case Kind::Pow: {
        const Expr &b = e.args()[0], &x = e.args()[1];
        if (depends_on(b, k)) {
            if (!x.is_integer()) bad();
            check(b, k);
        } else if (!affine_in(x, k)) {
            bad();
        }
        return;
    }
    case Kind::Factorial:
    case Kind::Gamma:
        if (!affine_in(e.args()[0], k)) bad();
        return;
    case Kind::Binomial:
    case Kind::Pochhammer:
        for (auto& a : e.args())
            if (!affine_in(a, k)) bad();
        return;
    case Kind::Func:
        bad();
    }
}

}  // namespace

RatFunc shift_quotient(const Expr& e, const std::string& v, long j)
{
    check(e, v);
    Form f = form_of(e);
    if (f.rat.is_zero()) throw NotHypergeometric("the term is zero");
    auto q = quotient(f.shift(v, j), f);
    if (!q) throw NotHypergeometric("not a hypergeometric term in " + v + ": " + e.str());
    return *q;
}

RatFunc term_ratio(const Expr& e, const std::string& k) { return shift_quotient(e, k, 1); }

std::optional<RatFunc> rational_quotient(const Expr& a, const Expr& b)
{
    return quotient(form_of(a), form_of(b));
}

bool is_zero_term(const Expr& e) { return form_of(e).rat.is_zero(); }

Expr collect_term(const Expr& e, const std::vector<std::string>& priority)
{
    return form_to_expr(form_of(e), priority);
}

RatFunc log_derivative(const Expr& e, const std::string& x)
{
    if (!depends_on(e, x)) return RatFunc(0);
    auto fail = [&]() -> RatFunc {
        throw NotHypergeometric("logarithmic derivative in " + x + " is not rational: " + e.str());
    };
    switch (e.kind()) {
    case Kind::Num:
        return RatFunc(0);
    case Kind::Sym:
        return RatFunc::var(x).inverse();
    case Kind::Add: {
        if (auto r = try_rf(e)) return r->derivative(x) / *r;
        auto q = rational_quotient(differentiate(e, x), e);
        if (!q) fail();
        return *q;
    }
    case Kind::Mul: {
        RatFunc s;
        for (auto& a : e.args()) s += log_derivative(a, x);
        return s;
    }
    case Kind::Pow: {
        const Expr &b = e.args()[0], &ex = e.args()[1];
        if (depends_on(ex, x)) fail();
        auto c = try_rf(ex);
        if (!c) fail();
        return *c * log_derivative(b, x);
    }
    case Kind::Func:
        if (e.name() == "exp") {
            auto d = try_rf(differentiate(e.args()[0], x));
            if (!d) fail();
            return *d;
        }
        return fail();
    default:
        return fail();
    }
}

HyperTerm hyper_term(const Expr& e, const std::string& k) { return HyperTerm{k, term_ratio(e, k), e}; }

HyperTerm pfq_term(const std::vector<Expr>& upper, const std::vector<Expr>& lower, const Expr& arg,
                   const std::string& k)
{
    RatFunc kk = RatFunc::var(k), r = eval_rf(arg) / (kk + RatFunc(1));
    for (auto& a : upper) r *= kk + eval_rf(a);
    for (auto& b : lower) r /= kk + eval_rf(b);
    return HyperTerm{k, r, Expr::hyperterm(upper, lower, arg, Expr::sym(k))};
}

LinearRatio split_ratio(const RatFunc& r, const std::string& k)
{
    LinearRatio out;
    auto side = [&](const MPoly& p, std::vector<RatFunc>& roots) -> MPoly {
        LinearSplit s = linear_factors(p, k);
        if (s.rest.degree(k) > 0)
            throw NotHypergeometric("ratio has a factor that is not linear in " + k + ": " + s.rest.str());
        MPoly cont = s.content * s.rest;
        for (auto& [l, m] : s.linear) {
            auto cs = l.coeffs(k);
            Rational lead = cs[1].constant_value();
            RatFunc root = RatFunc(cs[0]) / RatFunc(lead);
            for (int i = 0; i < m; ++i) {
                roots.push_back(root);
                cont *= lead;
            }
        }
        return cont;
    };
    MPoly cn = side(r.num(), out.upper);
    MPoly cd = side(r.den(), out.lower);
    out.constant = RatFunc::make(cn, cd);
    auto less = [](const RatFunc& a, const RatFunc& b) { return to_expr(a) < to_expr(b); };
    std::sort(out.upper.begin(), out.upper.end(), less);
    std::sort(out.lower.begin(), out.lower.end(), less);
    return out;
}

PFQ sum_to_hyper(const Expr& e, const std::string& k)
{
    RatFunc r = term_ratio(e, k);
    // a(j) = 0 and a(j+1) != 0 needs a pole of the ratio at j
    std::vector<long> cand{0};
    for (auto& [l, m] : linear_factors(r.den(), k).linear) {
        auto cs = l.coeffs(k);
        if (!cs[0].is_constant()) continue;
        Rational root = -cs[0].constant_value() / cs[1].constant_value();
        if (root >= 0 && root.get_den() == 1 && root < 1000) cand.push_back(root.get_num().get_si() + 1);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    long k0 = -1;
    Expr pre;
    for (long j : cand) {
        Expr a = subs(e, k, Expr(j));
        Form f = form_of(a);
        if (f.rat.is_zero()) continue;
        k0 = j;
        pre = form_to_expr(f, {});
        break;
    }
    if (k0 < 0) throw NotHypergeometric("the term vanishes at every candidate starting index");
    LinearRatio lr = split_ratio(r.shift(k, k0), k);
    PFQ out;
    out.prefactor = pre;
    out.argument = to_expr_factored(lr.constant);
    bool have_one = false;
    for (auto& b : lr.lower) {
        if (!have_one && b == RatFunc(1)) {
            have_one = true;
            continue;
        }
        out.lower.push_back(to_expr(b));
    }
    for (auto& a : lr.upper) out.upper.push_back(to_expr(a));
    if (!have_one) out.upper.push_back(Expr(1));
    std::sort(out.upper.begin(), out.upper.end());
    std::sort(out.lower.begin(), out.lower.end());
    return out;
}

std::string PFQ::str() const
{
    auto list = [](const std::vector<Expr>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
        return s + "]";
    };
    std::string h = "Hypergeom(" + list(upper) + ", " + list(lower) + ", " + argument.str() + ")";
    if (prefactor.is_num(1)) return h;
    std::string p = prefactor.str();
    if (prefactor.kind() == Kind::Add) p = "(" + p + ")";
    return p + "*" + h;
}

}  // namespace hsum
