#include "hsum/factorize.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hsum {

namespace {

// ---------------------------------------------------------------- Z[x]

using ZPoly = std::vector<Integer>;

void trim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ZPoly& a)
{
    return int(a.size()) - 1;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

Integer zcontent(const ZPoly& a)
{
    Integer g = 0;
    for (auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zprimitive(ZPoly a)
{
    trim(a);
    if (a.empty()) return a;
    Integer g = zcontent(a);
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

// Exact division over Z; false when b does not divide a.
bool zdiv(ZPoly a, const ZPoly& b, ZPoly& q)
{
    trim(a);
    q.clear();
    if (a.empty()) return true;
    if (deg(a) < deg(b)) return false;
    q.assign(a.size() - b.size() + 1, Integer(0));
    const Integer& lb = b.back();
    for (int d = deg(a); d >= deg(b); --d) {
        if (a[d] == 0) continue;
        if (!mpz_divisible_p(a[d].get_mpz_t(), lb.get_mpz_t())) return false;
        Integer c = a[d] / lb;
        q[d - deg(b)] = c;
        for (int i = 0; i <= deg(b); ++i) a[d - deg(b) + i] -= c * b[i];
    }
    trim(a);
    trim(q);
    return a.empty();
}

ZPoly to_zpoly(const MPoly& p, const std::string& v)
{
    auto cs = p.coeffs(v);
    ZPoly z(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Rational c = cs[i].constant_value();
        if (c.get_den() != 1) throw std::logic_error("to_zpoly: non-integer coefficient");
        z[i] = c.get_num();
    }
    trim(z);
    return z;
}

MPoly from_zpoly(const ZPoly& z, const std::string& v)
{
    std::vector<MPoly> cs;
    for (auto& c : z) cs.push_back(MPoly(Rational(c)));
    return MPoly::from_coeffs(v, cs);
}

std::string univariate_var(const MPoly& p)
{
    auto used = p.used_vars();
    if (used.size() > 1) throw std::invalid_argument("expected a univariate polynomial: " + p.str());
    return used.empty() ? std::string("x") : used[0];
}

// ---------------------------------------------------------------- GF(p)[x]

using FPoly = std::vector<long>;

long mod(long a, long p)
{
    a %= p;
    return a < 0 ? a + p : a;
}

long inv_mod(long a, long p)
{
    long t = 0, nt = 1, r = p, nr = mod(a, p);
    while (nr) {
        long q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw std::logic_error("inv_mod: not invertible");
    return mod(t, p);
}

void ftrim(FPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FPoly fmul(const FPoly& a, const FPoly& b, long p)
{
    if (a.empty() || b.empty()) return {};
    FPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    ftrim(c);
    return c;
}

FPoly fsub(FPoly a, const FPoly& b, long p)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
    ftrim(a);
    return a;
}

void fdivmod(FPoly a, const FPoly& b, long p, FPoly& q, FPoly& r)
{
    ftrim(a);
    long inv = inv_mod(b.back(), p);
    int db = int(b.size()) - 1;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    for (int d = int(a.size()) - 1; d >= db; --d) {
        if (!a[d]) continue;
        long c = a[d] * inv % p;
        q[d - db] = c;
        for (int i = 0; i <= db; ++i) a[d - db + i] = mod(a[d - db + i] - c * b[i], p);
    }
    ftrim(a);
    ftrim(q);
    r = a;
}

FPoly frem(const FPoly& a, const FPoly& b, long p)
{
    FPoly q, r;
    fdivmod(a, b, p, q, r);
    return r;
}

FPoly fmonic(FPoly a, long p)
{
    if (a.empty()) return a;
    long inv = inv_mod(a.back(), p);
    for (auto& c : a) c = c * inv % p;
    return a;
}

FPoly fgcd(FPoly a, FPoly b, long p)
{
    ftrim(a);
    ftrim(b);
    while (!b.empty()) {
        FPoly r = frem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fmonic(a, p);
}

FPoly fpowmod(FPoly base, const Integer& e, const FPoly& m, long p)
{
    FPoly result{1};
    base = frem(base, m, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = frem(fmul(result, result, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = frem(fmul(result, base, p), m, p);
    }
    return result;
}

FPoly to_fpoly(const ZPoly& z, long p)
{
    FPoly f(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        Integer r = z[i] % p;
        f[i] = mod(r.get_si(), p);
    }
    ftrim(f);
    return f;
}

// Extended gcd over GF(p): s*a + t*b = 1 for coprime a, b.
void fxgcd(const FPoly& a, const FPoly& b, long p, FPoly& s, FPoly& t)
{
    FPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        FPoly q, r;
        fdivmod(r0, r1, p, q, r);
        FPoly s2 = fsub(s0, fmul(q, s1, p), p);
        FPoly t2 = fsub(t0, fmul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    long inv = inv_mod(r0.back(), p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;
    s = s0;
    t = t0;
}

// Distinct-degree then equal-degree (Cantor-Zassenhaus) factorization of
// a monic squarefree polynomial.
std::vector<FPoly> factor_mod_p(const FPoly& f, long p)
{
    std::vector<std::pair<FPoly, int>> dd;
    FPoly g = f;
    FPoly h{0, 1};
    FPoly x{0, 1};
    for (int i = 1; 2 * i <= int(g.size()) - 1; ++i) {
        h = fpowmod(h, Integer(p), g, p);
        FPoly d = fgcd(fsub(h, x, p), g, p);
        if (d.size() > 1) {
            dd.push_back({d, i});
            FPoly q, r;
            fdivmod(g, d, p, q, r);
            g = q;
            h = frem(h, g, p);
        }
    }
    if (g.size() > 1) dd.push_back({g, int(g.size()) - 1});

    std::mt19937_64 rng(0x5eed);
    std::vector<FPoly> out;
    for (auto& [poly, d] : dd) {
        std::vector<FPoly> todo{poly}, done;
        while (!todo.empty()) {
            FPoly u = todo.back();
            todo.pop_back();
            if (int(u.size()) - 1 == d) {
                done.push_back(u);
                continue;
            }
            Integer e;
            mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)p, (unsigned long)d);
            e = (e - 1) / 2;
            while (true) {
                FPoly a(u.size() - 1);
                for (auto& c : a) c = (long)(rng() % (unsigned long)p);
                ftrim(a);
                if (a.size() < 2) continue;
                FPoly b = fsub(fpowmod(a, e, u, p), FPoly{1}, p);
                FPoly w = fgcd(b, u, p);
                if (w.size() > 1 && w.size() < u.size()) {
                    FPoly q, r;
                    fdivmod(u, w, p, q, r);
                    todo.push_back(w);
                    todo.push_back(fmonic(q, p));
                    break;
                }
            }
        }
        out.insert(out.end(), done.begin(), done.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- Z/m[x]

ZPoly zmod(ZPoly a, const Integer& m)
{
    for (auto& c : a) {
        c %= m;
        if (c < 0) c += m;
    }
    trim(a);
    return a;
}

ZPoly zsym(ZPoly a, const Integer& m)
{
    for (auto& c : a) {
        c %= m;
        if (c < 0) c += m;
        if (2 * c > m) c -= m;
    }
    trim(a);
    return a;
}

ZPoly zadd(ZPoly a, const ZPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    trim(a);
    return a;
}

ZPoly zsub(ZPoly a, const ZPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Division by a monic polynomial modulo m.
void zdivmod_monic(ZPoly a, const ZPoly& b, const Integer& m, ZPoly& q, ZPoly& r)
{
    a = zmod(a, m);
    int db = deg(b);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Integer(0));
    for (int d = deg(a); d >= db; --d) {
        if (a[d] == 0) continue;
        Integer c = a[d];
        q[d - db] = c;
        for (int i = 0; i <= db; ++i) {
            a[d - db + i] -= c * b[i];
            a[d - db + i] %= m;
        }
    }
    q = zmod(q, m);
    r = zmod(a, m);
}

ZPoly from_fpoly(const FPoly& f)
{
    ZPoly z(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) z[i] = Integer(f[i]);
    return z;
}

struct Lifted {
    ZPoly g, h;
};

// Quadratic Hensel lifting of f = g*h (h monic) from p to a modulus >= bound.
Lifted hensel_lift(const ZPoly& f, const FPoly& g0, const FPoly& h0, long p, const Integer& target, Integer& m)
{
    FPoly s0, t0;
    fxgcd(g0, h0, p, s0, t0);
    // normalize degrees: s mod h, t = (1 - s g)/h
    s0 = frem(s0, h0, p);
    {
        FPoly q, r;
        fdivmod(fsub(FPoly{1}, fmul(s0, g0, p), p), h0, p, q, r);
        t0 = q;
    }
    ZPoly g = from_fpoly(g0), h = from_fpoly(h0), s = from_fpoly(s0), t = from_fpoly(t0);
    m = p;
    while (m < target) {
        Integer m2 = m * m;
        ZPoly e = zmod(zsub(f, zmul(g, h)), m2);
        ZPoly q, r;
        zdivmod_monic(zmul(s, e), h, m2, q, r);
        ZPoly gs = zmod(zadd(zadd(g, zmul(t, e)), zmul(q, g)), m2);
        ZPoly hs = zmod(zadd(h, r), m2);
        ZPoly b = zmod(zsub(zadd(zmul(s, gs), zmul(t, hs)), ZPoly{Integer(1)}), m2);
        ZPoly c, d;
        zdivmod_monic(zmul(s, b), hs, m2, c, d);
        ZPoly ss = zmod(zsub(s, d), m2);
        ZPoly ts = zmod(zsub(zsub(t, zmul(t, b)), zmul(c, gs)), m2);
        g = gs;
        h = hs;
        s = ss;
        t = ts;
        m = m2;
    }
    return {g, h};
}

Integer pow_int(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Lift the monic modular factors of f (leading coefficient lc(f)) to
// monic factors modulo M >= target. All recursion levels lift to the same
// number of quadratic steps, so M is shared.
void multi_lift(const ZPoly& f, const std::vector<FPoly>& us, long p, const Integer& target,
                std::vector<ZPoly>& out, Integer& M)
{
    if (us.size() == 1) {
        // make f monic mod M
        Integer lc = f.back() % M;
        if (lc < 0) lc += M;
        Integer inv;
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
        ZPoly u = f;
        for (auto& c : u) c = c * inv;
        out.push_back(zmod(u, M));
        return;
    }
    std::size_t half = us.size() / 2;
    std::vector<FPoly> a(us.begin(), us.begin() + half), b(us.begin() + half, us.end());
    Integer lcp = f.back() % p;
    FPoly g0{mod(lcp.get_si(), p)};
    for (auto& u : a) g0 = fmul(g0, u, p);
    FPoly h0{1};
    for (auto& u : b) h0 = fmul(h0, u, p);
    Integer m;
    Lifted l = hensel_lift(f, g0, h0, p, target, m);
    M = m;
    multi_lift(zmod(l.g, M), a, p, target, out, M);
    multi_lift(zmod(l.h, M), b, p, target, out, M);
}

// Factor a primitive squarefree polynomial with nonzero constant term.
std::vector<ZPoly> zassenhaus(const ZPoly& f0)
{
    ZPoly f = f0;
    int n = deg(f);
    if (n <= 1) return {f};
    // prime selection: smallest prime > 30 with p not dividing lc(f) and f
    // squarefree mod p.
    ZPoly df(f.size() - 1);
    for (int i = 1; i <= n; ++i) df[i - 1] = f[i] * i;
    long p = 31;
    FPoly fp;
    while (true) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime && !mpz_divisible_ui_p(f.back().get_mpz_t(), (unsigned long)p)) {
            fp = to_fpoly(f, p);
            FPoly dp = to_fpoly(df, p);
            if (fgcd(fp, dp, p).size() == 1) break;
        }
        ++p;
    }
    std::vector<FPoly> us = factor_mod_p(fmonic(fp, p), p);
    if (us.size() == 1) return {f};

    // Coefficient bound for any factor of f times |lc(f)|:
    // B = |lc| * 2^n * ceil(sqrt(n+1)) * max|f_i|; lift until p^l > 2B.
    Integer maxc = 0;
    for (auto& c : f)
        if (abs(c) > maxc) maxc = abs(c);
    Integer sq;
    mpz_sqrt(sq.get_mpz_t(), Integer(n + 1).get_mpz_t());
    if (sq * sq < n + 1) sq += 1;
    Integer B = abs(f.back()) * pow_int(Integer(2), (unsigned long)n) * sq * maxc;
    Integer target = 2 * B + 1;

    std::vector<ZPoly> lifted;
    Integer M;
    multi_lift(f, us, p, target, lifted, M);

    std::vector<ZPoly> result;
    std::vector<ZPoly> pool = lifted;
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            Integer lc = f.back();
            Integer c0 = lc;
            for (auto i : idx) c0 = (c0 * pool[i][0]) % M;
            c0 %= M;
            if (c0 < 0) c0 += M;
            if (2 * c0 > M) c0 -= M;
            bool pass = c0 != 0 && mpz_divisible_p(Integer(lc * f[0]).get_mpz_t(), c0.get_mpz_t());
            if (pass) {
                ZPoly g{lc};
                for (auto i : idx) g = zsym(zmul(g, pool[i]), M);
                g = zprimitive(g);
                ZPoly q;
                if (zdiv(f, g, q)) {
                    result.push_back(g);
                    f = zprimitive(q);
                    std::vector<ZPoly> rest;
                    for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
                        if (k < s && idx[k] == i) {
                            ++k;
                            continue;
                        }
                        rest.push_back(pool[i]);
                    }
                    pool = rest;
                    found = true;
                    break;
                }
            }
            // next combination
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == pool.size() - s + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (deg(f) > 0) result.push_back(f);
    return result;
}

bool zpoly_less(const ZPoly& a, const ZPoly& b)
{
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

}  // namespace

MPoly Factorization::expand() const
{
    MPoly acc(content);
    for (auto& [f, m] : factors) acc *= f.pow(unsigned(m));
    return acc;
}

std::string Factorization::str() const
{
    std::ostringstream os;
    bool first = true;
    auto emit_sep = [&] {
        if (!first) os << "*";
        first = false;
    };
    if (content == -1 && !factors.empty()) {
        os << "-";
    } else if (content != 1 || factors.empty()) {
        os << content.get_str();
        first = false;
    }
    for (auto& [f, m] : factors) {
        emit_sep();
        std::string s = f.str();
        bool single = f.size() == 1 && (f.lc() == 1 || f.is_constant());
        if (!single) s = "(" + s + ")";
        os << s;
        if (m != 1) os << "^" << m;
    }
    return os.str();
}

Factorization squarefree(const MPoly& p)
{
    if (p.is_zero()) throw std::invalid_argument("squarefree: zero polynomial");
    Factorization out;
    std::string v = univariate_var(p);
    if (p.is_constant()) {
        out.content = p.constant_value();
        return out;
    }
    MPoly f = p.primitive();
    MPoly df = f.derivative(v);
    MPoly a = poly_gcd(f, df);
    MPoly b = divide_or_throw(f, a);
    MPoly c = divide_or_throw(df, a);
    MPoly d = c - b.derivative(v);
    int i = 1;
    while (!b.is_constant()) {
        MPoly g = poly_gcd(b, d);
        if (!g.is_constant()) out.factors.push_back({g.primitive(), i});
        b = divide_or_throw(b, g);
        c = divide_or_throw(d, g);
        d = c - b.derivative(v);
        ++i;
    }
    MPoly e(1);
    for (auto& [g, m] : out.factors) e *= g.pow(unsigned(m));
    out.content = p.lc() / e.lc();
    return out;
}

std::vector<Rational> rational_roots(const MPoly& p)
{
    if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<Rational> roots;
    if (p.is_constant()) return roots;
    Factorization f = factor_univariate(p);
    std::string v = univariate_var(p);
    for (auto& [g, m] : f.factors) {
        if (g.degree(v) != 1) continue;
        auto cs = g.coeffs(v);
        Rational r = -cs[0].constant_value() / cs[1].constant_value();
        // verify by exact evaluation
        if (!p.subs(v, MPoly(r)).is_zero()) throw std::logic_error("rational_roots: verification failed");
        roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

Factorization factor_univariate(const MPoly& p)
{
    if (p.is_zero()) throw std::invalid_argument("factor_univariate: zero polynomial");
    std::string v = univariate_var(p);
    Factorization out;
    if (p.is_constant()) {
        out.content = p.constant_value();
        return out;
    }
    Factorization sf = squarefree(p);
    std::vector<std::pair<ZPoly, int>> all;
    for (auto& [g, m] : sf.factors) {
        ZPoly z = zprimitive(to_zpoly(g.primitive(), v));
        int xpow = 0;
        while (!z.empty() && z[0] == 0) {
            z.erase(z.begin());
            ++xpow;
        }
        if (xpow) all.push_back({ZPoly{Integer(0), Integer(1)}, m * xpow});
        if (deg(z) >= 1)
            for (auto& h : zassenhaus(z)) all.push_back({zprimitive(h), m});
    }
    std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return zpoly_less(a.first, b.first); });
    for (auto& [z, m] : all) out.factors.push_back({from_zpoly(z, v), m});
    out.content = p.lc() / out.expand().lc();
    return out;
}

std::vector<long> dispersion_set(const MPoly& q, const MPoly& r, const std::string& k)
{
    std::vector<long> out;
    if (q.degree(k) <= 0 || r.degree(k) <= 0) return out;
    std::vector<std::string> params;
    for (auto& s : q.used_vars())
        if (s != k) params.push_back(s);
    for (auto& s : r.used_vars())
        if (s != k) params.push_back(s);
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    MPoly qs = q, rs = r;
    long seed = 7919;
    for (int attempt = 0; !params.empty(); ++attempt) {
        qs = q;
        rs = r;
        for (std::size_t i = 0; i < params.size(); ++i) {
            long val = seed * long(i + 3) % 1009 + 101 + 37 * attempt;
            qs = qs.subs(params[i], MPoly(val));
            rs = rs.subs(params[i], MPoly(val));
        }
        if (qs.degree(k) == q.degree(k) && rs.degree(k) == r.degree(k)) break;
        seed += 104729;
        if (attempt > 50) throw std::runtime_error("dispersion_set: no admissible specialization");
    }
    const std::string j = "_j";
    MPoly shifted = rs.subs(k, MPoly::var(k) + MPoly::var(j));
    MPoly res = resultant(qs, shifted, k);
    if (res.is_zero()) throw std::logic_error("dispersion_set: vanishing resultant");
    if (res.is_constant()) return out;
    for (auto& root : rational_roots(res)) {
        if (root.get_den() != 1 || root < 0) continue;
        long jj = root.get_num().get_si();
        MPoly g = poly_gcd(q, r.shift(k, Rational(jj)));
        if (g.degree(k) >= 1) out.push_back(jj);
    }
    return out;
}

namespace {

std::vector<Rational> roots_at(const MPoly& p, const std::string& v, const std::vector<std::string>& params,
                               const std::vector<long>& point)
{
    MPoly s = p;
    for (std::size_t i = 0; i < params.size(); ++i) s = s.subs(params[i], MPoly(point[i]));
    if (s.is_zero() || s.degree(v) != p.degree(v)) return {};
    return rational_roots(s.compact());
}

}  // namespace

LinearSplit linear_factors(const MPoly& p, const std::string& v)
{
    LinearSplit out;
    if (p.is_zero()) throw std::invalid_argument("linear_factors: zero polynomial");
    if (!p.depends_on(v)) {
        out.content = p;
        out.rest = MPoly(1);
        return out;
    }
    out.content = content_in(p, v);
    MPoly rest = divide_or_throw(p, out.content);
    std::vector<std::string> params;
    for (auto& s : rest.used_vars())
        if (s != v) params.push_back(s);

    if (params.empty()) {
        Factorization f = factor_univariate(rest.compact());
        MPoly r(f.content);
        for (auto& [g, m] : f.factors) {
            if (g.degree(v) == 1)
                out.linear.push_back({g, m});
            else
                r *= g.pow(unsigned(m));
        }
        out.rest = r;
        return out;
    }

    // Roots affine in the parameters with a constant leading coefficient
    // in v; reconstructed from three specializations per parameter.
    MPoly lcv = rest.lead_coeff(v);
    if (lcv.is_constant()) {
        std::vector<long> base(params.size());
        for (std::size_t i = 0; i < params.size(); ++i) base[i] = 1000003 % (97 + 13 * long(i)) + 211 * long(i) + 53;
        auto r0 = roots_at(rest, v, params, base);
        std::vector<std::vector<Rational>> r1(params.size()), r2(params.size());
        for (std::size_t i = 0; i < params.size(); ++i) {
            auto pt = base;
            pt[i] += 1;
            r1[i] = roots_at(rest, v, params, pt);
            pt[i] += 1;
            r2[i] = roots_at(rest, v, params, pt);
        }
        for (auto& r : r0) {
            // slopes consistent with three collinear roots; coincidences
            // can give several, each candidate is checked by division
            std::vector<std::vector<Rational>> slopes(params.size());
            bool ok = true;
            for (std::size_t i = 0; i < params.size() && ok; ++i) {
                for (auto& s : r1[i]) {
                    Rational c = s - r;
                    if (std::find(r2[i].begin(), r2[i].end(), Rational(r + 2 * c)) != r2[i].end())
                        slopes[i].push_back(c);
                }
                ok = !slopes[i].empty();
            }
            if (!ok) continue;
            std::vector<std::size_t> pick(params.size(), 0);
            while (true) {
                MPoly beta(r);
                for (std::size_t i = 0; i < params.size(); ++i)
                    beta += MPoly(slopes[i][pick[i]]) * (MPoly::var(params[i]) - MPoly(base[i]));
                MPoly lin = (MPoly::var(v) - beta).primitive();
                int mult = 0;
                while (true) {
                    auto q = divide_exact(rest, lin);
                    if (!q) break;
                    rest = *q;
                    ++mult;
                }
                if (mult) {
                    out.linear.push_back({lin, mult});
                    break;
                }
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == slopes[i].size()) pick[i++] = 0;
                if (i == pick.size()) break;
            }
        }
    }
    out.rest = rest;
    return out;
}

namespace {

void split_pieces(const MPoly& p, const std::vector<std::string>& order, std::size_t from,
                  std::vector<std::pair<MPoly, int>>& pieces)
{
    if (p.is_constant()) return;
    auto used = p.used_vars();
    if (used.size() == 1) {
        for (auto& f : factor_univariate(p.compact()).factors) pieces.push_back(f);
        return;
    }
    std::size_t i = from;
    while (i < order.size() && !p.depends_on(order[i])) ++i;
    if (i == order.size()) {
        pieces.push_back({p.primitive(), 1});
        return;
    }
    LinearSplit ls = linear_factors(p, order[i]);
    for (auto& f : ls.linear) pieces.push_back(f);
    split_pieces(ls.content, order, 0, pieces);
    split_pieces(ls.rest, order, i + 1, pieces);
}

}  // namespace

Factorization factor_pretty(const MPoly& p0, const std::vector<std::string>& priority)
{
    Factorization out;
    if (p0.is_zero()) {
        out.content = 0;
        return out;
    }
    MPoly p = p0.compact();
    if (p.is_constant()) {
        out.content = p.constant_value();
        return out;
    }
    auto used = p.used_vars();
    if (used.size() == 1) return factor_univariate(p);
    std::vector<std::string> order;
    for (auto& s : priority)
        if (p.depends_on(s)) order.push_back(s);
    for (auto& s : used)
        if (std::find(order.begin(), order.end(), s) == order.end()) order.push_back(s);

    std::vector<std::pair<MPoly, int>> pieces;
    split_pieces(p, order, 0, pieces);
    std::vector<std::pair<MPoly, int>> merged;
    for (auto& [f, m] : pieces) {
        MPoly g = f.primitive();
        if (g.is_constant()) continue;
        bool hit = false;
        for (auto& [h, n] : merged)
            if (h == g) {
                n += m;
                hit = true;
            }
        if (!hit) merged.push_back({g, m});
    }
    std::stable_sort(merged.begin(), merged.end(), [](auto& a, auto& b) {
        if (a.first.total_degree() != b.first.total_degree()) return a.first.total_degree() < b.first.total_degree();
        return a.first.str() < b.first.str();
    });
    out.factors = merged;
    auto q = divide_exact(p, out.expand());
    if (!q || !q->is_constant()) throw std::logic_error("factor_pretty: reconstruction failed");
    out.content = q->constant_value();
    return out;
}

}  // namespace hsum
