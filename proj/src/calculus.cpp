#include "hsum/expr.hpp"

namespace hsum {

namespace {

const Expr& arg0(const Expr& e) { return e.args()[0]; }

Expr half() { return Expr(Rational(1, 2)); }

}  // namespace

Expr differentiate(const Expr& e, const std::string& v)
{
    if (!depends_on(e, v)) return Expr(0);
    switch (e.kind()) {
    case Kind::Num:
        return Expr(0);
    case Kind::Sym:
        return Expr(1);
    case Kind::Add: {
        std::vector<Expr> t;
        for (auto& a : e.args()) t.push_back(differentiate(a, v));
        return Expr::add(t);
    }
    case Kind::Mul: {
        std::vector<Expr> t;
        const auto& f = e.args();
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (!depends_on(f[i], v)) continue;
            std::vector<Expr> p{differentiate(f[i], v)};
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != i) p.push_back(f[j]);
            t.push_back(Expr::mul(p));
        }
        return Expr::add(t);
    }
    case Kind::Pow: {
        const Expr &b = e.args()[0], &x = e.args()[1];
        if (!depends_on(x, v)) return Expr::mul({x, Expr::pow(b, x - Expr(1)), differentiate(b, v)});
        return e * (differentiate(x, v) * Expr::func("ln", {b}) + x * differentiate(b, v) / b);
    }
    case Kind::Factorial:
    case Kind::Binomial:
    case Kind::Pochhammer:
    case Kind::Gamma:
        throw EvalError("cannot differentiate " + e.str() + " with respect to " + v);
    case Kind::Func: {
        const std::string& f = e.name();
        if (f == "besselj") {
            const Expr &nu = e.args()[0], &u = e.args()[1];
            if (depends_on(nu, v)) throw EvalError("cannot differentiate besselj with respect to its order");
            Expr d = Expr::func("besselj", {nu - Expr(1), u}) - Expr::func("besselj", {nu + Expr(1), u});
            return half() * d * differentiate(u, v);
        }
        const Expr& u = arg0(e);
        Expr du = differentiate(u, v);
        if (f == "exp") return e * du;
        if (f == "ln") return du / u;
        if (f == "sin") return Expr::func("cos", {u}) * du;
        if (f == "cos") return -Expr::func("sin", {u}) * du;
        if (f == "arcsin") return Expr::pow(Expr(1) - u * u, Expr(Rational(-1, 2))) * du;
        if (f == "arctan") return du / (Expr(1) + u * u);
        if (f == "erf")
            return Expr::mul({Expr(2), Expr::pow(Expr::sym("Pi"), Expr(Rational(-1, 2))),
                              Expr::func("exp", {-(u * u)}), du});
        throw EvalError("no derivative rule for " + f);
    }
    }
    return Expr(0);
}

namespace {

long as_long(const Rational& q, const char* what)
{
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw EvalError(std::string(what) + ": integer argument required");
    return q.get_num().get_si();
}

Rational rpow(const Rational& b, const Rational& e)
{
    if (e.get_den() == 1) {
        long n = as_long(e, "power");
        if (b == 0 && n < 0) throw EvalError("division by zero");
        Integer num, den;
        unsigned long a = (unsigned long)(n < 0 ? -n : n);
        mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), a);
        mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), a);
        return n < 0 ? frac(den, num) : frac(num, den);
    }
    if (b < 0) throw EvalError("power: negative base with fractional exponent");
    unsigned long q = e.get_den().get_ui();
    Integer rn, rd;
    if (!mpz_root(rn.get_mpz_t(), b.get_num_mpz_t(), q) || !mpz_root(rd.get_mpz_t(), b.get_den_mpz_t(), q))
        throw EvalError("power: value is not rational");
    return rpow(frac(rn, rd), Rational(e.get_num()));
}

}  // namespace

Rational eval_at(const Expr& e, const std::map<std::string, Rational>& b)
{
    switch (e.kind()) {
    case Kind::Num:
        return e.value();
    case Kind::Sym: {
        auto it = b.find(e.name());
        if (it == b.end()) throw EvalError("unbound symbol " + e.name());
        return it->second;
    }
    case Kind::Add: {
        Rational s = 0;
        for (auto& a : e.args()) s += eval_at(a, b);
        return s;
    }
    case Kind::Mul: {
        Rational s = 1;
        for (auto& a : e.args()) {
            s *= eval_at(a, b);
            if (s == 0) return s;
        }
        return s;
    }
    case Kind::Pow:
        return rpow(eval_at(e.args()[0], b), eval_at(e.args()[1], b));
    case Kind::Factorial: {
        long n = as_long(eval_at(arg0(e), b), "factorial");
        if (n < 0) throw EvalError("factorial of a negative integer");
        Integer r;
        mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
        return Rational(r);
    }
    case Kind::Binomial: {
        Rational t = eval_at(e.args()[0], b);
        long m = as_long(eval_at(e.args()[1], b), "binomial");
        if (m < 0) return 0;
        Rational r = 1;
        for (long i = 0; i < m; ++i) r = r * (t - i) / (i + 1);
        return r;
    }
    case Kind::Pochhammer: {
        Rational a = eval_at(e.args()[0], b);
        long m = as_long(eval_at(e.args()[1], b), "pochhammer");
        Rational r = 1;
        for (long i = 0; i < m; ++i) r *= a + i;
        for (long i = 1; i <= -m; ++i) {
            if (a - i == 0) throw EvalError("pochhammer: pole");
            r /= a - i;
        }
        return r;
    }
    case Kind::Gamma: {
        Rational a = eval_at(arg0(e), b);
        long n = as_long(a, "GAMMA");
        if (n <= 0) throw EvalError("GAMMA: pole");
        Integer r;
        mpz_fac_ui(r.get_mpz_t(), (unsigned long)(n - 1));
        return Rational(r);
    }
    case Kind::Func: {
        std::vector<Expr> vals;
        for (auto& a : e.args()) vals.push_back(Expr(eval_at(a, b)));
        Expr r = Expr::func(e.name(), vals);
        if (r.is_num()) return r.value();
        throw EvalError("transcendental value " + r.str());
    }
    }
    throw EvalError("cannot evaluate");
}

RatFunc eval_rf(const Expr& e)
{
    switch (e.kind()) {
    case Kind::Num:
        return RatFunc(e.value());
    case Kind::Sym:
        return RatFunc::var(e.name());
    case Kind::Add: {
        RatFunc s;
        for (auto& a : e.args()) s += eval_rf(a);
        return s;
    }
    case Kind::Mul: {
        RatFunc s(1);
        for (auto& a : e.args()) s *= eval_rf(a);
        return s;
    }
    case Kind::Pow: {
        const Expr& x = e.args()[1];
        if (!x.is_integer()) throw EvalError("not rational: " + e.str());
        return eval_rf(e.args()[0]).pow(int(as_long(x.value(), "power")));
    }
    case Kind::Binomial: {
        const Expr& m = e.args()[1];
        if (!m.is_integer()) throw EvalError("not rational: " + e.str());
        long mm = as_long(m.value(), "binomial");
        if (mm < 0) return RatFunc(0);
        RatFunc t = eval_rf(e.args()[0]), r(1);
        for (long i = 0; i < mm; ++i) r = r * (t - RatFunc(i)) / RatFunc(i + 1);
        return r;
    }
    case Kind::Pochhammer: {
        const Expr& m = e.args()[1];
        if (!m.is_integer()) throw EvalError("not rational: " + e.str());
        long mm = as_long(m.value(), "pochhammer");
        RatFunc a = eval_rf(e.args()[0]), r(1);
        for (long i = 0; i < mm; ++i) r *= a + RatFunc(i);
        for (long i = 1; i <= -mm; ++i) r /= a - RatFunc(i);
        return r;
    }
    default:
        throw EvalError("not rational: " + e.str());
    }
}

}  // namespace hsum
