#include "hsum/expr.hpp"

#include "hsum/factorize.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hsum {

namespace {

const std::set<std::string>& unary_heads()
{
    static const std::set<std::string> s = {"exp", "ln", "sin", "cos", "arcsin", "arctan", "erf"};
    return s;
}

// Exact q-th root of a nonnegative integer, if any.
bool exact_root(const Integer& a, unsigned long q, Integer& out)
{
    if (a < 0) return false;
    mpz_class r;
    int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), q);
    if (!exact) return false;
    out = r;
    return true;
}

Rational rational_pow(const Rational& b, long e)
{
    Rational r;
    Integer n, d;
    unsigned long ae = (unsigned long)(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), b.get_num_mpz_t(), ae);
    mpz_pow_ui(d.get_mpz_t(), b.get_den_mpz_t(), ae);
    if (e < 0) std::swap(n, d);
    return frac(n, d);
}

}  // namespace

Expr::Expr() : Expr(Rational(0)) {}
Expr::Expr(long n) : Expr(Rational(n)) {}
Expr::Expr(const Rational& q) : p_(std::make_shared<const Node>(Node{Kind::Num, q, {}, {}})) {}

Expr Expr::make(Kind k, std::vector<Expr> args, Rational v, std::string name)
{
    return Expr(std::make_shared<const Node>(Node{k, std::move(v), std::move(name), std::move(args)}));
}

Kind Expr::kind() const { return p_->kind; }
const Rational& Expr::value() const { return p_->value; }
const std::string& Expr::name() const { return p_->name; }
const std::vector<Expr>& Expr::args() const { return p_->args; }

bool Expr::is_num(long v) const
{
    return kind() == Kind::Num && value() == v;
}

bool Expr::is_integer() const
{
    return kind() == Kind::Num && value().get_den() == 1;
}

int compare(const Expr& a, const Expr& b)
{
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
    case Kind::Num:
        return cmp(a.value(), b.value()) < 0 ? -1 : (a.value() == b.value() ? 0 : 1);
    case Kind::Sym:
        return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Kind::Func:
        if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
        break;
    default:
        break;
    }
    const auto &x = a.args(), &y = b.args();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (int c = compare(x[i], y[i])) return c;
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return 0;
}

bool Expr::operator==(const Expr& o) const { return p_ == o.p_ || compare(*this, o) == 0; }
bool Expr::operator<(const Expr& o) const { return compare(*this, o) < 0; }

Expr Expr::sym(const std::string& name)
{
    return make(Kind::Sym, {}, 0, name);
}

namespace {

void split_coeff(const Expr& t, Rational& c, std::vector<Expr>& rest)
{
    rest.clear();
    if (t.kind() == Kind::Mul && t.args()[0].is_num()) {
        c = t.args()[0].value();
        rest.assign(t.args().begin() + 1, t.args().end());
    } else {
        c = 1;
        rest.push_back(t);
    }
}

}  // namespace

Expr Expr::add(std::vector<Expr> terms)
{
    Rational constant = 0;
    std::vector<std::pair<Expr, Rational>> parts;
    std::vector<Expr> flat;
    for (auto& t : terms) {
        if (t.kind() == Kind::Add)
            flat.insert(flat.end(), t.args().begin(), t.args().end());
        else
            flat.push_back(t);
    }
    std::vector<Expr> rest;
    for (auto& t : flat) {
        if (t.is_num()) {
            constant += t.value();
            continue;
        }
        Rational c;
        split_coeff(t, c, rest);
        Expr r = rest.size() == 1 ? rest[0] : make(Kind::Mul, rest);
        parts.push_back({r, c});
    }
    std::sort(parts.begin(), parts.end(), [](auto& a, auto& b) { return compare(a.first, b.first) < 0; });
    std::vector<Expr> out;
    if (constant != 0) out.push_back(Expr(constant));
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        Rational c = 0;
        while (j < parts.size() && compare(parts[j].first, parts[i].first) == 0) c += parts[j++].second;
        if (c != 0) {
            const Expr& r = parts[i].first;
            if (c == 1) {
                out.push_back(r);
            } else {
                std::vector<Expr> f{Expr(c)};
                if (r.kind() == Kind::Mul)
                    f.insert(f.end(), r.args().begin(), r.args().end());
                else
                    f.push_back(r);
                out.push_back(make(Kind::Mul, f));
            }
        }
        i = j;
    }
    if (out.empty()) return Expr(0);
    if (out.size() == 1) return out[0];
    std::sort(out.begin(), out.end());
    return make(Kind::Add, out);
}

Expr Expr::mul(std::vector<Expr> factors)
{
    Rational coef = 1;
    std::vector<std::pair<Expr, Expr>> parts;
    std::vector<Expr> stack(factors.rbegin(), factors.rend());
    while (!stack.empty()) {
        Expr f = stack.back();
        stack.pop_back();
        if (f.kind() == Kind::Mul) {
            for (auto it = f.args().rbegin(); it != f.args().rend(); ++it) stack.push_back(*it);
            continue;
        }
        if (f.is_num()) {
            coef *= f.value();
            continue;
        }
        if (f.kind() == Kind::Pow)
            parts.push_back({f.args()[0], f.args()[1]});
        else
            parts.push_back({f, Expr(1)});
    }
    if (coef == 0) return Expr(0);
    std::stable_sort(parts.begin(), parts.end(), [](auto& a, auto& b) { return compare(a.first, b.first) < 0; });
    std::vector<Expr> out;
    bool again = false;
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        std::vector<Expr> es;
        while (j < parts.size() && compare(parts[j].first, parts[i].first) == 0) es.push_back(parts[j++].second);
        Expr e = es.size() == 1 ? es[0] : add(es);
        Expr p = es.size() == 1 && e.is_num(1) ? parts[i].first : pow(parts[i].first, e);
        if (p.is_num())
            coef *= p.value();
        else if (p.kind() == Kind::Mul) {
            out.push_back(p);
            again = true;
        } else
            out.push_back(p);
        i = j;
    }
    if (again) {
        out.push_back(Expr(coef));
        return mul(out);
    }
    if (coef == 0) return Expr(0);
    std::sort(out.begin(), out.end());
    if (out.empty()) return Expr(coef);
    if (coef == 1 && out.size() == 1) return out[0];
    if (coef != 1) out.insert(out.begin(), Expr(coef));
    return make(Kind::Mul, out);
}

Expr Expr::pow(const Expr& b, const Expr& e)
{
    if (e.is_num(0)) return Expr(1);
    if (e.is_num(1)) return b;
    if (b.is_num()) {
        if (b.value() == 1) return Expr(1);
        if (e.is_num()) {
            const Rational& q = e.value();
            if (b.value() == 0) {
                if (q < 0) throw EvalError("division by zero");
                return Expr(0);
            }
            if (q.get_den() == 1 && q.get_num().fits_slong_p() && abs(q.get_num()) < 100000)
                return Expr(rational_pow(b.value(), q.get_num().get_si()));
            if (q.get_den().fits_ulong_p() && q.get_num().fits_slong_p()) {
                Integer n, d;
                unsigned long den = q.get_den().get_ui();
                if (exact_root(b.value().get_num(), den, n) && exact_root(b.value().get_den(), den, d))
                    return Expr(rational_pow(frac(n, d), q.get_num().get_si()));
            }
        }
    }
    if (e.is_integer()) {
        if (b.kind() == Kind::Pow) return pow(b.args()[0], mul({b.args()[1], e}));
        if (b.kind() == Kind::Mul) {
            std::vector<Expr> f;
            for (auto& a : b.args()) f.push_back(pow(a, e));
            return mul(f);
        }
    }
    return make(Kind::Pow, {b, e});
}

Expr Expr::factorial(const Expr& a)
{
    if (a.is_integer() && a.value() >= 0 && a.value() < 2000) {
        Integer r;
        mpz_fac_ui(r.get_mpz_t(), a.value().get_num().get_ui());
        return Expr(Rational(r));
    }
    return make(Kind::Factorial, {a});
}

Expr Expr::binomial(const Expr& t, const Expr& b)
{
    if (b.is_integer()) {
        if (b.value() < 0) return Expr(0);
        if (b.value() == 0) return Expr(1);
        if (b.value() == 1) return t;
        if (t.is_num() && b.value() < 2000) {
            long m = b.value().get_num().get_si();
            Rational r = 1;
            for (long i = 0; i < m; ++i) r = r * (t.value() - i) / (i + 1);
            return Expr(r);
        }
    }
    return make(Kind::Binomial, {t, b});
}

Expr Expr::pochhammer(const Expr& a, const Expr& m)
{
    if (m.is_num(0)) return Expr(1);
    if (m.is_num(1)) return a;
    if (a.is_num() && m.is_integer() && abs(m.value()) < 2000) {
        long c = m.value().get_num().get_si();
        Rational r = 1;
        if (c > 0)
            for (long i = 0; i < c; ++i) r *= a.value() + i;
        else
            for (long i = 1; i <= -c; ++i) {
                if (a.value() - i == 0) throw EvalError("pochhammer: pole");
                r /= a.value() - i;
            }
        return Expr(r);
    }
    return make(Kind::Pochhammer, {a, m});
}

Expr Expr::gamma(const Expr& a)
{
    if (a.is_num()) {
        const Rational& v = a.value();
        if (v.get_den() == 1 && v > 0 && v < 2000) return factorial(Expr(Rational(v - 1)));
        if (v.get_den() == 1 && v <= 0) throw EvalError("gamma: pole at nonpositive integer");
        if (v.get_den() == 2 && v > 0 && v < 2000) {
            // gamma(n+1/2) = (2n)!/(4^n n!) sqrt(Pi)
            long n = Rational(v - Rational(1, 2)).get_num().get_si();
            Integer f2, f1, p4;
            mpz_fac_ui(f2.get_mpz_t(), 2 * n);
            mpz_fac_ui(f1.get_mpz_t(), n);
            mpz_ui_pow_ui(p4.get_mpz_t(), 4, n);
            return mul({Expr(frac(f2, p4 * f1)), pow(sym("Pi"), Expr(Rational(1, 2)))});
        }
    }
    return make(Kind::Gamma, {a});
}

Expr Expr::func(const std::string& name, std::vector<Expr> args)
{
    if (name == "sqrt") {
        if (args.size() != 1) throw std::invalid_argument("sqrt expects 1 argument");
        return pow(args[0], Expr(Rational(1, 2)));
    }
    if (unary_heads().count(name)) {
        if (args.size() != 1) throw std::invalid_argument(name + " expects 1 argument");
        const Expr& u = args[0];
        if (u.is_num(0)) {
            if (name == "exp" || name == "cos") return Expr(1);
            if (name != "ln") return Expr(0);
        }
        if (name == "ln" && u.is_num(1)) return Expr(0);
        if (name == "exp" && u.kind() == Kind::Func && u.name() == "ln") return u.args()[0];
        return make(Kind::Func, std::move(args), 0, name);
    }
    if (name == "besselj") {
        if (args.size() != 2) throw std::invalid_argument("besselj expects 2 arguments");
        if (args[1].is_num(0) && args[0].is_integer()) return Expr(args[0].is_num(0) ? 1 : 0);
        return make(Kind::Func, std::move(args), 0, name);
    }
    throw std::invalid_argument("unknown function: " + name);
}

Expr Expr::hyperterm(const std::vector<Expr>& upper, const std::vector<Expr>& lower, const Expr& arg,
                     const Expr& k)
{
    std::vector<Expr> f;
    for (auto& a : upper) f.push_back(pochhammer(a, k));
    for (auto& b : lower) f.push_back(pow(pochhammer(b, k), Expr(-1)));
    f.push_back(pow(arg, k));
    f.push_back(pow(factorial(k), Expr(-1)));
    return mul(f);
}

Expr Expr::operator-() const
{
    return mul({Expr(-1), *this});
}

// ---------------------------------------------------------------- printing

namespace {

enum Prec { P_ADD = 1, P_MUL = 2, P_POW = 3, P_ATOM = 4 };

std::string print(const Expr& e, int ctx);

bool is_negative(const Expr& t)
{
    if (t.is_num()) return t.value() < 0;
    return t.kind() == Kind::Mul && t.args()[0].is_num() && t.args()[0].value() < 0;
}

std::string wrap(const std::string& s, bool paren)
{
    return paren ? "(" + s + ")" : s;
}

int prec_of(const Expr& e)
{
    switch (e.kind()) {
    case Kind::Num:
        if (e.value() < 0) return P_ADD;
        return e.value().get_den() == 1 ? P_ATOM : P_MUL;
    case Kind::Sym:
    case Kind::Binomial:
    case Kind::Pochhammer:
    case Kind::Gamma:
    case Kind::Func:
        return P_ATOM;
    case Kind::Factorial:
        return P_POW;
    case Kind::Pow:
        if (is_negative(e.args()[1])) return P_MUL;
        if (e.args()[1].is_num(0) || (e.args()[1].is_num() && e.args()[1].value() == Rational(1, 2)))
            return P_ATOM;
        return P_POW;
    case Kind::Mul:
        return is_negative(e) ? P_ADD : P_MUL;
    case Kind::Add:
        return P_ADD;
    }
    return P_ATOM;
}

std::string print_mul(const Rational& coef, const std::vector<Expr>& factors)
{
    std::vector<Expr> num, den;
    for (auto& f : factors) {
        if (f.kind() == Kind::Pow && is_negative(f.args()[1]))
            den.push_back(Expr::pow(f.args()[0], -f.args()[1]));
        else
            num.push_back(f);
    }
    std::ostringstream os;
    if (coef < 0) os << "-";
    Integer p = abs(coef.get_num()), q = coef.get_den();
    bool first = true;
    if (p != 1 || num.empty()) {
        os << p.get_str();
        first = false;
    }
    for (auto& f : num) {
        if (!first) os << "*";
        first = false;
        os << wrap(print(f, P_MUL), prec_of(f) < P_MUL);
    }
    std::vector<std::string> ds;
    if (q != 1) ds.push_back(q.get_str());
    for (auto& f : den) ds.push_back(wrap(print(f, P_MUL), prec_of(f) < P_MUL));
    if (!ds.empty()) {
        os << "/";
        bool single = ds.size() == 1 && (q != 1 || prec_of(den[0]) >= P_POW || prec_of(den[0]) < P_MUL);
        if (!single) os << "(";
        for (std::size_t i = 0; i < ds.size(); ++i) os << (i ? "*" : "") << ds[i];
        if (!single) os << ")";
    }
    return os.str();
}

std::string print(const Expr& e, int)
{
    switch (e.kind()) {
    case Kind::Num:
        return to_string(e.value());
    case Kind::Sym:
        return e.name();
    case Kind::Add: {
        // constant last, and a positive term first when there is one
        std::vector<Expr> t = e.args();
        if (t[0].is_num()) std::rotate(t.begin(), t.begin() + 1, t.end());
        if (is_negative(t[0])) {
            auto it = std::find_if(t.begin(), t.end(), [](const Expr& x) { return !is_negative(x); });
            if (it != t.end()) std::rotate(t.begin(), it, it + 1);
        }
        std::string s = print(t[0], P_ADD);
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (is_negative(t[i]))
                s += " - " + print(-t[i], P_ADD);
            else
                s += " + " + print(t[i], P_ADD);
        }
        return s;
    }
    case Kind::Mul: {
        Rational c = 1;
        std::vector<Expr> f = e.args();
        if (f[0].is_num()) {
            c = f[0].value();
            f.erase(f.begin());
        }
        return print_mul(c, f);
    }
    case Kind::Pow: {
        const Expr &b = e.args()[0], &x = e.args()[1];
        if (is_negative(x)) return print_mul(1, {e});
        if (x.is_num() && x.value() == Rational(1, 2)) return "sqrt(" + print(b, 0) + ")";
        bool pb = prec_of(b) < P_ATOM;
        bool px = !(x.kind() == Kind::Sym || (x.is_integer() && x.value() >= 0));
        return wrap(print(b, P_POW), pb) + "^" + wrap(print(x, P_POW), px);
    }
    case Kind::Factorial: {
        const Expr& a = e.args()[0];
        bool bare = a.kind() == Kind::Sym || (a.is_integer() && a.value() >= 0);
        return wrap(print(a, 0), !bare) + "!";
    }
    case Kind::Binomial:
        return "binomial(" + print(e.args()[0], 0) + ", " + print(e.args()[1], 0) + ")";
    case Kind::Pochhammer:
        return "pochhammer(" + print(e.args()[0], 0) + ", " + print(e.args()[1], 0) + ")";
    case Kind::Gamma:
        return "GAMMA(" + print(e.args()[0], 0) + ")";
    case Kind::Func: {
        std::string s = e.name() + "(";
        for (std::size_t i = 0; i < e.args().size(); ++i) s += (i ? ", " : "") + print(e.args()[i], 0);
        return s + ")";
    }
    }
    return "?";
}

}  // namespace

std::string Expr::str() const
{
    return print(*this, 0);
}

// ---------------------------------------------------------------- structure

namespace {

void collect_symbols(const Expr& e, std::set<std::string>& out)
{
    if (e.kind() == Kind::Sym) out.insert(e.name());
    for (auto& a : e.args()) collect_symbols(a, out);
}

Expr rebuild(const Expr& e, std::vector<Expr> a)
{
    switch (e.kind()) {
    case Kind::Num:
    case Kind::Sym:
        return e;
    case Kind::Add:
        return Expr::add(std::move(a));
    case Kind::Mul:
        return Expr::mul(std::move(a));
    case Kind::Pow:
        return Expr::pow(a[0], a[1]);
    case Kind::Factorial:
        return Expr::factorial(a[0]);
    case Kind::Binomial:
        return Expr::binomial(a[0], a[1]);
    case Kind::Pochhammer:
        return Expr::pochhammer(a[0], a[1]);
    case Kind::Gamma:
        return Expr::gamma(a[0]);
    case Kind::Func:
        return Expr::func(e.name(), std::move(a));
    }
    return e;
}

}  // namespace

bool depends_on(const Expr& e, const std::string& v)
{
    if (e.kind() == Kind::Sym) return e.name() == v;
    for (auto& a : e.args())
        if (depends_on(a, v)) return true;
    return false;
}

std::vector<std::string> symbols(const Expr& e)
{
    std::set<std::string> s;
    collect_symbols(e, s);
    return {s.begin(), s.end()};
}

Expr subs(const Expr& e, const std::map<std::string, Expr>& values)
{
    if (e.kind() == Kind::Sym) {
        auto it = values.find(e.name());
        return it == values.end() ? e : it->second;
    }
    if (e.args().empty()) return e;
    std::vector<Expr> a;
    a.reserve(e.args().size());
    for (auto& c : e.args()) a.push_back(subs(c, values));
    return rebuild(e, std::move(a));
}

Expr subs(const Expr& e, const std::string& v, const Expr& value)
{
    return subs(e, std::map<std::string, Expr>{{v, value}});
}

Expr to_expr(const MPoly& p)
{
    std::vector<Expr> terms;
    const auto& vars = *p.vars();
    for (auto& t : p.terms()) {
        std::vector<Expr> f{Expr(t.c)};
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (t.e[i]) f.push_back(Expr::pow(Expr::sym(vars[i]), Expr(long(t.e[i]))));
        terms.push_back(Expr::mul(f));
    }
    return Expr::add(terms);
}

Expr to_expr(const RatFunc& r)
{
    return to_expr(r.num()) / to_expr(r.den());
}

namespace {

Expr factored(const MPoly& p, const std::vector<std::string>& priority)
{
    Factorization f = factor_pretty(p, priority);
    std::vector<Expr> parts{Expr(f.content)};
    for (auto& [g, m] : f.factors) parts.push_back(Expr::pow(to_expr(g), Expr(long(m))));
    return Expr::mul(parts);
}

}  // namespace

Expr to_expr_factored(const RatFunc& r, const std::vector<std::string>& priority)
{
    if (r.is_zero()) return Expr(0);
    return factored(r.num(), priority) / factored(r.den(), priority);
}

}  // namespace hsum
