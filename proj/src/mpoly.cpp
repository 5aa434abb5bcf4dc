#include "hsum/mpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hsum {

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational frac(const Integer& a, const Integer& b)
{
    Rational q(a, b);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text)
{
    Rational q(text);
    q.canonicalize();
    return q;
}

namespace {

std::mutex intern_mutex;
std::map<std::vector<std::string>, Vars>& intern_table()
{
    static std::map<std::vector<std::string>, Vars> t;
    return t;
}

bool grlex_greater(const Exps& a, const Exps& b)
{
    long da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

struct GrlexGreater {
    bool operator()(const Term& a, const Term& b) const { return grlex_greater(a.e, b.e); }
};

void sort_and_combine(std::vector<Term>& ts)
{
    std::sort(ts.begin(), ts.end(), GrlexGreater{});
    std::size_t out = 0;
    for (std::size_t i = 0; i < ts.size();) {
        std::size_t j = i + 1;
        Rational c = ts[i].c;
        while (j < ts.size() && ts[j].e == ts[i].e) c += ts[j++].c;
        if (sgn(c) != 0) {
            if (out != i) ts[out].e = std::move(ts[i].e);
            ts[out].c = c;
            ++out;
        }
        i = j;
    }
    ts.resize(out);
}

Integer maxnorm(const MPoly& p)
{
    Integer m = 0;
    for (auto& t : p.terms()) {
        Integer a = abs(t.c.get_num());
        if (a > m) m = a;
    }
    return m;
}

Integer symmetric_mod(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

}  // namespace

Vars intern_vars(std::vector<std::string> names)
{
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    std::lock_guard<std::mutex> lock(intern_mutex);
    auto& t = intern_table();
    auto it = t.find(names);
    if (it != t.end()) return it->second;
    auto p = std::make_shared<const std::vector<std::string>>(names);
    t.emplace(names, p);
    return p;
}

Vars empty_vars()
{
    static Vars e = intern_vars({});
    return e;
}

Vars merge_vars(const Vars& a, const Vars& b)
{
    if (a == b) return a;
    if (a->empty()) return b;
    if (b->empty()) return a;
    std::vector<std::string> u(*a);
    u.insert(u.end(), b->begin(), b->end());
    return intern_vars(std::move(u));
}

MPoly::MPoly() : vars_(empty_vars()) {}

MPoly::MPoly(long c) : MPoly(Rational(c)) {}

MPoly::MPoly(const Rational& c) : vars_(empty_vars())
{
    if (sgn(c) != 0) terms_.push_back({Exps{}, c});
}

MPoly MPoly::var(const std::string& name)
{
    MPoly p;
    p.vars_ = intern_vars({name});
    p.terms_.push_back({Exps{1}, Rational(1)});
    return p;
}

MPoly MPoly::from_terms(Vars vars, std::vector<Term> terms)
{
    MPoly p;
    p.vars_ = std::move(vars);
    for (auto& t : terms)
        if (t.e.size() != p.vars_->size()) throw std::logic_error("MPoly: exponent arity mismatch");
    sort_and_combine(terms);
    p.terms_ = std::move(terms);
    return p;
}

bool MPoly::is_constant() const
{
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int x : terms_[0].e)
        if (x) return false;
    return true;
}

Rational MPoly::constant_value() const
{
    if (terms_.empty()) return 0;
    const Term& t = terms_.back();
    for (int x : t.e)
        if (x) return 0;
    return t.c;
}

int MPoly::var_index(const std::string& v) const
{
    auto it = std::lower_bound(vars_->begin(), vars_->end(), v);
    if (it == vars_->end() || *it != v) return -1;
    return int(it - vars_->begin());
}

bool MPoly::depends_on(const std::string& v) const
{
    int i = var_index(v);
    if (i < 0) return false;
    for (auto& t : terms_)
        if (t.e[i]) return true;
    return false;
}

std::vector<std::string> MPoly::used_vars() const
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < vars_->size(); ++i) {
        for (auto& t : terms_)
            if (t.e[i]) {
                out.push_back((*vars_)[i]);
                break;
            }
    }
    return out;
}

MPoly MPoly::with_vars(const Vars& target) const
{
    if (target == vars_) return *this;
    std::vector<int> map(vars_->size());
    for (std::size_t i = 0; i < vars_->size(); ++i) {
        auto it = std::lower_bound(target->begin(), target->end(), (*vars_)[i]);
        if (it == target->end() || *it != (*vars_)[i]) {
            bool used = false;
            for (auto& t : terms_) used = used || t.e[i];
            if (used) throw std::logic_error("MPoly::with_vars: variable dropped: " + (*vars_)[i]);
            map[i] = -1;
        } else {
            map[i] = int(it - target->begin());
        }
    }
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (auto& t : terms_) {
        Exps e(target->size(), 0);
        for (std::size_t i = 0; i < map.size(); ++i)
            if (map[i] >= 0) e[map[i]] = t.e[i];
        ts.push_back({std::move(e), t.c});
    }
    // Sorted lists keep the old variables in the same relative order, so
    // the term order survives the embedding.
    MPoly p;
    p.vars_ = target;
    p.terms_ = std::move(ts);
    return p;
}

MPoly MPoly::compact() const
{
    auto used = used_vars();
    if (used.size() == vars_->size()) return *this;
    return with_vars(intern_vars(used));
}

int MPoly::degree(const std::string& v) const
{
    if (terms_.empty()) return -1;
    int i = var_index(v);
    if (i < 0) return 0;
    int d = 0;
    for (auto& t : terms_) d = std::max(d, t.e[i]);
    return d;
}

int MPoly::total_degree() const
{
    if (terms_.empty()) return -1;
    int d = 0;
    for (int x : terms_[0].e) d += x;
    return d;
}

const Rational& MPoly::lc() const
{
    if (terms_.empty()) throw std::logic_error("lc of zero polynomial");
    return terms_[0].c;
}

const Term& MPoly::lt() const
{
    if (terms_.empty()) throw std::logic_error("lt of zero polynomial");
    return terms_[0];
}

std::vector<MPoly> MPoly::coeffs(const std::string& v) const
{
    int i = var_index(v);
    if (i < 0) return terms_.empty() ? std::vector<MPoly>{} : std::vector<MPoly>{*this};
    int d = degree(v);
    std::vector<std::vector<Term>> buckets(d + 1);
    for (auto& t : terms_) {
        Term u = t;
        int k = u.e[i];
        u.e[i] = 0;
        buckets[k].push_back(std::move(u));
    }
    std::vector<MPoly> out(d + 1);
    for (int k = 0; k <= d; ++k) {
        out[k].vars_ = vars_;
        out[k].terms_ = std::move(buckets[k]);
        std::sort(out[k].terms_.begin(), out[k].terms_.end(), GrlexGreater{});
    }
    return out;
}

MPoly MPoly::from_coeffs(const std::string& v, const std::vector<MPoly>& cs)
{
    MPoly x = MPoly::var(v);
    MPoly acc;
    for (std::size_t k = cs.size(); k-- > 0;) {
        acc *= x;
        acc += cs[k];
    }
    return acc;
}

MPoly MPoly::lead_coeff(const std::string& v) const
{
    auto cs = coeffs(v);
    if (cs.empty()) return MPoly();
    return cs.back();
}

MPoly MPoly::subs(const std::string& v, const MPoly& value) const
{
    if (!depends_on(v)) return *this;
    auto cs = coeffs(v);
    MPoly acc;
    for (std::size_t k = cs.size(); k-- > 0;) {
        acc *= value;
        acc += cs[k];
    }
    return acc;
}

MPoly MPoly::shift(const std::string& v, const Rational& by) const
{
    if (sgn(by) == 0 || !depends_on(v)) return *this;
    return subs(v, MPoly::var(v) + MPoly(by));
}

MPoly MPoly::derivative(const std::string& v) const
{
    int i = var_index(v);
    if (i < 0) return MPoly();
    std::vector<Term> ts;
    for (auto& t : terms_) {
        if (!t.e[i]) continue;
        Term u = t;
        u.c *= t.e[i];
        u.e[i] -= 1;
        ts.push_back(std::move(u));
    }
    return from_terms(vars_, std::move(ts));
}

Rational MPoly::content() const
{
    if (terms_.empty()) return 0;
    Integer g = 0, l = 1;
    for (auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    }
    Rational c(g, l);
    c.canonicalize();
    return c;
}

MPoly MPoly::primitive() const
{
    if (terms_.empty()) return *this;
    Rational c = content();
    if (sgn(terms_[0].c) < 0) c = -c;
    if (c == 1) return *this;
    MPoly p = *this;
    for (auto& t : p.terms_) t.c /= c;
    return p;
}

MPoly MPoly::monic() const
{
    if (terms_.empty()) return *this;
    Rational c = terms_[0].c;
    if (c == 1) return *this;
    MPoly p = *this;
    for (auto& t : p.terms_) t.c /= c;
    return p;
}

MPoly MPoly::operator-() const
{
    MPoly p = *this;
    for (auto& t : p.terms_) t.c = -t.c;
    return p;
}

namespace {

void align(MPoly& a, MPoly& b)
{
    if (a.vars() == b.vars()) return;
    Vars u = merge_vars(a.vars(), b.vars());
    a = a.with_vars(u);
    b = b.with_vars(u);
}

std::vector<Term> merge_add(const std::vector<Term>& x, const std::vector<Term>& y, bool negate)
{
    std::vector<Term> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && grlex_greater(x[i].e, y[j].e))) {
            out.push_back(x[i++]);
        } else if (i == x.size() || grlex_greater(y[j].e, x[i].e)) {
            Term t = y[j++];
            if (negate) t.c = -t.c;
            out.push_back(std::move(t));
        } else {
            Rational c = negate ? Rational(x[i].c - y[j].c) : Rational(x[i].c + y[j].c);
            if (sgn(c) != 0) out.push_back({x[i].e, c});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MPoly& MPoly::operator+=(const MPoly& o)
{
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    MPoly b = o;
    align(*this, b);
    terms_ = merge_add(terms_, b.terms_, false);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    if (o.terms_.empty()) return *this;
    MPoly b = o;
    align(*this, b);
    terms_ = merge_add(terms_, b.terms_, true);
    return *this;
}

MPoly operator*(const MPoly& a0, const MPoly& b0)
{
    if (a0.terms_.empty() || b0.terms_.empty()) return MPoly();
    if (b0.is_constant()) return a0 * b0.terms_[0].c;
    if (a0.is_constant()) return b0 * a0.terms_[0].c;
    MPoly a = a0, b = b0;
    align(a, b);
    std::vector<Term> ts;
    ts.reserve(a.terms_.size() * b.terms_.size());
    const std::size_t n = a.vars_->size();
    for (auto& x : a.terms_)
        for (auto& y : b.terms_) {
            Exps e(n);
            for (std::size_t i = 0; i < n; ++i) e[i] = x.e[i] + y.e[i];
            ts.push_back({std::move(e), x.c * y.c});
        }
    sort_and_combine(ts);
    MPoly p;
    p.vars_ = a.vars_;
    p.terms_ = std::move(ts);
    return p;
}

MPoly& MPoly::operator*=(const MPoly& o)
{
    return *this = *this * o;
}

MPoly& MPoly::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.c *= c;
    return *this;
}

MPoly MPoly::pow(unsigned n) const
{
    MPoly result(1), base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

bool MPoly::operator==(const MPoly& o) const
{
    if (terms_.size() != o.terms_.size()) return false;
    if (vars_ == o.vars_) {
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
        return true;
    }
    return (*this - o).is_zero();
}

std::string MPoly::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        Rational c = t.c;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? "-" : "+");
        }
        first = false;
        bool has_mono = false;
        for (int x : t.e) has_mono = has_mono || x;
        bool wrote = false;
        if (c != 1 || !has_mono) {
            os << c.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < t.e.size(); ++i) {
            if (!t.e[i]) continue;
            if (wrote) os << "*";
            os << (*vars_)[i];
            if (t.e[i] != 1) os << "^" << t.e[i];
            wrote = true;
        }
    }
    return os.str();
}

std::size_t MPoly::hash() const
{
    std::size_t h = terms_.size();
    for (auto& t : terms_) {
        for (int x : t.e) h = h * 31 + std::size_t(x);
        h = h * 131 + std::hash<std::string>{}(t.c.get_str());
    }
    return h;
}

std::optional<MPoly> divide_exact(const MPoly& a0, const MPoly& b0)
{
    if (b0.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a0.is_zero()) return MPoly();
    if (b0.is_constant()) return a0 * Rational(1 / b0.constant_value());
    MPoly a = a0, b = b0;
    align(a, b);
    const std::size_t n = a.vars()->size();
    const Term& lb = b.terms()[0];
    Rational inv = 1 / lb.c;
    std::vector<Term> q;
    MPoly r = a;
    while (!r.is_zero()) {
        const Term& lr = r.terms()[0];
        Exps e(n);
        for (std::size_t i = 0; i < n; ++i) {
            e[i] = lr.e[i] - lb.e[i];
            if (e[i] < 0) return std::nullopt;
        }
        Term t{e, lr.c * inv};
        MPoly tm = MPoly::from_terms(a.vars(), {t});
        r -= tm * b;
        q.push_back(std::move(t));
    }
    return MPoly::from_terms(a.vars(), std::move(q));
}

MPoly divide_or_throw(const MPoly& a, const MPoly& b)
{
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("inexact polynomial division: (" + a.str() + ")/(" + b.str() + ")");
    return *q;
}

void divmod_univariate(const MPoly& a, const MPoly& b, const std::string& v, MPoly& q, MPoly& r)
{
    auto bc = b.coeffs(v);
    if (bc.empty()) throw std::domain_error("division by zero polynomial");
    int db = int(bc.size()) - 1;
    if (!bc[db].is_constant()) throw std::logic_error("divmod_univariate: leading coefficient not constant");
    Rational inv = 1 / bc[db].constant_value();
    auto rc = a.coeffs(v);
    std::vector<MPoly> qc(rc.size() >= bc.size() ? rc.size() - bc.size() + 1 : 0);
    for (int d = int(rc.size()) - 1; d >= db; --d) {
        if (rc[d].is_zero()) continue;
        MPoly c = rc[d] * inv;
        qc[d - db] = c;
        for (int i = 0; i <= db; ++i) rc[d - db + i] -= c * bc[i];
    }
    q = MPoly::from_coeffs(v, qc);
    rc.resize(std::min<std::size_t>(rc.size(), db));
    r = MPoly::from_coeffs(v, rc);
}

namespace {

MPoly prem(const MPoly& a, const MPoly& b, const std::string& v)
{
    auto ac = a.coeffs(v);
    auto bc = b.coeffs(v);
    int da = int(ac.size()) - 1, db = int(bc.size()) - 1;
    if (da < db) return a;
    const MPoly& l = bc[db];
    for (int d = da; d >= db; --d) {
        MPoly c = ac[d];
        for (int i = 0; i < d; ++i) ac[i] *= l;
        ac[d] = MPoly();
        if (!c.is_zero())
            for (int i = 0; i < db; ++i) ac[d - db + i] -= c * bc[i];
    }
    ac.resize(db);
    return MPoly::from_coeffs(v, ac);
}

// Smallest exponent of each variable over all terms.
Exps min_exps(const MPoly& p)
{
    Exps m = p.terms()[0].e;
    for (auto& t : p.terms())
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.e[i]);
    return m;
}

MPoly shift_down(const MPoly& p, const Exps& m)
{
    std::vector<Term> ts = p.terms();
    for (auto& t : ts)
        for (std::size_t i = 0; i < m.size(); ++i) t.e[i] -= m[i];
    return MPoly::from_terms(p.vars(), std::move(ts));
}

MPoly gcd_univariate(const MPoly& a, const MPoly& b, const std::string& v)
{
    MPoly x = a.monic(), y = b.monic();
    if (x.degree(v) < y.degree(v)) std::swap(x, y);
    while (!y.is_zero()) {
        MPoly q, r;
        divmod_univariate(x, y, v, q, r);
        x = y;
        y = r.monic();
    }
    return x.primitive();
}

MPoly gcd_primitive(const MPoly& a, const MPoly& b);

MPoly gcd_prs(const MPoly& a, const MPoly& b)
{
    auto used = a.used_vars();
    std::string v = used.front();
    MPoly ca = content_in(a, v), cb = content_in(b, v);
    MPoly c = poly_gcd(ca, cb);
    MPoly f = divide_or_throw(a, ca), g = divide_or_throw(b, cb);
    if (f.degree(v) < g.degree(v)) std::swap(f, g);
    while (!g.is_zero() && g.degree(v) > 0) {
        MPoly r = prem(f, g, v);
        f = g;
        g = r.is_zero() ? r : primitive_in(r, v);
    }
    MPoly h = g.is_zero() ? primitive_in(f, v) : MPoly(1);
    return (c * h).primitive();
}

MPoly integer_gcd_poly(const MPoly& a, const MPoly& b)
{
    // gcd over Z of two integer polynomials, sign normalized.
    Integer ca = a.content().get_num(), cb = b.content().get_num();
    Integer c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (a.is_constant() || b.is_constant()) return MPoly(Rational(c));
    return gcd_primitive(a.primitive(), b.primitive()) * Rational(c);
}

std::optional<MPoly> gcd_heuristic(const MPoly& f, const MPoly& g)
{
    auto used = f.used_vars();
    const std::string v = used.back();
    Integer bound = std::min(maxnorm(f), maxnorm(g));
    Integer xi = 2 * bound + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) > 20000) break;
        MPoly fx = f.subs(v, MPoly(Rational(xi)));
        MPoly gx = g.subs(v, MPoly(Rational(xi)));
        if (!fx.is_zero() && !gx.is_zero()) {
            MPoly hx = integer_gcd_poly(fx, gx);
            // xi-adic reconstruction of the coefficients in v.
            MPoly h;
            MPoly xv = MPoly::var(v);
            MPoly pw(1);
            int guard = 0;
            while (!hx.is_zero() && guard++ < 100000) {
                std::vector<Term> ts;
                for (auto& t : hx.terms()) {
                    Integer r = symmetric_mod(t.c.get_num(), xi);
                    if (r != 0) ts.push_back({t.e, Rational(r)});
                }
                MPoly c = MPoly::from_terms(hx.vars(), ts);
                h += c * pw;
                hx = (hx - c) * Rational(Integer(1), xi);
                pw *= xv;
            }
            if (!h.is_zero()) {
                h = h.primitive();
                if (divide_exact(f, h) && divide_exact(g, h)) return h;
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

// gcd of two integer-primitive polynomials with positive leading coefficients.
MPoly gcd_primitive(const MPoly& a0, const MPoly& b0)
{
    MPoly a = a0, b = b0;
    align(a, b);
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    Exps ma = min_exps(a), mb = min_exps(b), m(ma.size());
    bool mono = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = std::min(ma[i], mb[i]);
        mono = mono || ma[i] || mb[i];
    }
    if (mono) {
        MPoly g = gcd_primitive(shift_down(a, ma), shift_down(b, mb));
        return g * MPoly::from_terms(a.vars(), {Term{m, Rational(1)}});
    }
    auto ua = a.used_vars(), ub = b.used_vars();
    for (auto& v : ua)
        if (!b.depends_on(v)) return gcd_primitive(content_in(a, v).primitive(), b);
    for (auto& v : ub)
        if (!a.depends_on(v)) return gcd_primitive(a, content_in(b, v).primitive());
    if (a == b) return a;
    if (ua.size() == 1) return gcd_univariate(a, b, ua[0]);
    if (a.size() <= b.size()) {
        if (divide_exact(b, a)) return a;
    } else if (divide_exact(a, b)) {
        return b;
    }
    if (auto h = gcd_heuristic(a, b)) return *h;
    return gcd_prs(a, b);
}

}  // namespace

MPoly poly_gcd(const MPoly& a, const MPoly& b)
{
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    return gcd_primitive(a.primitive(), b.primitive());
}

MPoly poly_lcm(const MPoly& a, const MPoly& b)
{
    if (a.is_zero() || b.is_zero()) return MPoly();
    MPoly g = poly_gcd(a, b);
    return (divide_or_throw(a, g) * b).primitive();
}

MPoly content_in(const MPoly& a, const std::string& v)
{
    if (a.is_zero()) return a;
    auto cs = a.coeffs(v);
    std::sort(cs.begin(), cs.end(), [](const MPoly& x, const MPoly& y) { return x.size() < y.size(); });
    MPoly g;
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.primitive() : poly_gcd(g, c);
        if (g.is_constant()) return MPoly(1);
    }
    return g;
}

MPoly primitive_in(const MPoly& a, const std::string& v)
{
    if (a.is_zero()) return a;
    return divide_or_throw(a, content_in(a, v)).primitive();
}

MPoly resultant(const MPoly& a0, const MPoly& b0, const std::string& v)
{
    if (a0.is_zero() || b0.is_zero()) return MPoly();
    MPoly A = a0, B = b0;
    int s = 1;
    if (A.degree(v) < B.degree(v)) {
        std::swap(A, B);
        if ((A.degree(v) % 2) && (B.degree(v) % 2)) s = -1;
    }
    if (B.degree(v) == 0) return B.pow(A.degree(v)) * Rational(s);
    Rational ca = A.content(), cb = B.content();
    A *= Rational(1 / ca);
    B *= Rational(1 / cb);
    Rational t = 1;
    for (int i = 0; i < B.degree(v); ++i) t *= ca;
    for (int i = 0; i < A.degree(v); ++i) t *= cb;
    MPoly g(1), h(1);
    while (true) {
        int da = A.degree(v), db = B.degree(v);
        int delta = da - db;
        if ((da % 2) && (db % 2)) s = -s;
        MPoly R = prem(A, B, v);
        A = B;
        B = divide_or_throw(R, g * h.pow(delta));
        g = A.lead_coeff(v);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = divide_or_throw(g.pow(delta), h.pow(delta - 1));
        }
        if (B.is_zero()) return MPoly();
        if (B.degree(v) == 0) break;
    }
    int da = A.degree(v);
    MPoly lb = B.lead_coeff(v);
    MPoly hh;
    if (da == 0) {
        hh = h;
    } else if (da == 1) {
        hh = lb;
    } else {
        hh = divide_or_throw(lb.pow(da), h.pow(da - 1));
    }
    return hh * Rational(s * t);
}

}  // namespace hsum
