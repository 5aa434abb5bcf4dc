#include "hsum/ratfunc.hpp"

#include <stdexcept>

namespace hsum {

RatFunc::RatFunc() : num_(), den_(1) {}
RatFunc::RatFunc(long c) : RatFunc(Rational(c)) {}
RatFunc::RatFunc(const Rational& c) : RatFunc(make_coprime(MPoly(c), MPoly(1))) {}
RatFunc::RatFunc(const MPoly& p) : RatFunc(make_coprime(p, MPoly(1))) {}

RatFunc RatFunc::var(const std::string& name)
{
    return RatFunc(MPoly::var(name));
}

RatFunc RatFunc::make_coprime(const MPoly& num, const MPoly& den)
{
    if (den.is_zero()) throw std::domain_error("division by zero");
    RatFunc r;
    if (num.is_zero()) return r;
    Rational cn = num.content(), cd = den.content();
    Rational f = cn / cd;
    if (sgn(den.lc()) < 0) f = -f;
    r.num_ = num * Rational(f.get_num() / cn);
    r.den_ = den * Rational(f.get_den() / cd);
    if (sgn(den.lc()) < 0) r.den_ = -r.den_;
    return r;
}

RatFunc RatFunc::make(const MPoly& num, const MPoly& den)
{
    if (den.is_zero()) throw std::domain_error("division by zero");
    if (num.is_zero()) return RatFunc();
    if (den.is_constant() || num.is_constant()) return make_coprime(num, den);
    MPoly g = poly_gcd(num, den);
    if (g.is_constant()) return make_coprime(num, den);
    return make_coprime(divide_or_throw(num, g), divide_or_throw(den, g));
}

RatFunc ratfunc_normalize(const MPoly& num, const MPoly& den)
{
    return RatFunc::make(num, den);
}

Rational RatFunc::constant_value() const
{
    if (!is_constant()) throw std::logic_error("RatFunc is not constant: " + str());
    return num_.constant_value() / den_.constant_value();
}

MPoly RatFunc::as_polynomial() const
{
    if (!is_polynomial()) throw std::logic_error("RatFunc is not a polynomial: " + str());
    return num_ * Rational(1 / den_.constant_value());
}

bool RatFunc::depends_on(const std::string& v) const
{
    return num_.depends_on(v) || den_.depends_on(v);
}

std::vector<std::string> RatFunc::used_vars() const
{
    auto a = num_.used_vars(), b = den_.used_vars();
    a.insert(a.end(), b.begin(), b.end());
    return *intern_vars(a);
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const
{
    if (is_zero()) throw std::domain_error("division by zero");
    return make_coprime(den_, num_);
}

RatFunc RatFunc::pow(int n) const
{
    if (n < 0) return inverse().pow(-n);
    RatFunc r;
    r.num_ = num_.pow(unsigned(n));
    r.den_ = den_.pow(unsigned(n));
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc::make(a.num_ + b.num_, a.den_);
    if (a.den_.is_constant() && b.den_.is_constant())
        return RatFunc::make_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    MPoly g = poly_gcd(a.den_, b.den_);
    MPoly ad = divide_or_throw(a.den_, g), bd = divide_or_throw(b.den_, g);
    MPoly num = a.num_ * bd + b.num_ * ad;
    if (num.is_zero()) return RatFunc();
    MPoly den = ad * b.den_;
    if (g.is_constant()) return RatFunc::make_coprime(num, den);
    MPoly h = poly_gcd(num, g);
    if (h.is_constant()) return RatFunc::make_coprime(num, den);
    return RatFunc::make_coprime(divide_or_throw(num, h), divide_or_throw(den, h));
}

RatFunc operator-(const RatFunc& a, const RatFunc& b)
{
    return a + (-b);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b)
{
    if (a.is_zero() || b.is_zero()) return RatFunc();
    MPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!an.is_constant() && !bd.is_constant()) {
        MPoly g = poly_gcd(an, bd);
        if (!g.is_constant()) {
            an = divide_or_throw(an, g);
            bd = divide_or_throw(bd, g);
        }
    }
    if (!bn.is_constant() && !ad.is_constant()) {
        MPoly g = poly_gcd(bn, ad);
        if (!g.is_constant()) {
            bn = divide_or_throw(bn, g);
            ad = divide_or_throw(ad, g);
        }
    }
    return RatFunc::make_coprime(an * bn, ad * bd);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b)
{
    return a * b.inverse();
}

RatFunc subs_poly(const MPoly& p, const std::string& v, const RatFunc& value)
{
    if (!p.depends_on(v)) return RatFunc(p);
    if (value.is_polynomial()) return RatFunc(p.subs(v, value.as_polynomial()));
    // Horner over the common denominator: p(N/D) = sum c_i N^i D^(d-i) / D^d.
    auto cs = p.coeffs(v);
    int d = int(cs.size()) - 1;
    MPoly acc;
    MPoly npow(1);
    std::vector<MPoly> dpow(d + 1, MPoly(1));
    for (int i = 1; i <= d; ++i) dpow[i] = dpow[i - 1] * value.den();
    for (int i = 0; i <= d; ++i) {
        if (!cs[i].is_zero()) acc += cs[i] * npow * dpow[d - i];
        npow *= value.num();
    }
    return RatFunc::make(acc, dpow[d]);
}

RatFunc RatFunc::subs(const std::string& v, const RatFunc& value) const
{
    if (!depends_on(v)) return *this;
    return subs_poly(num_, v, value) / subs_poly(den_, v, value);
}

RatFunc RatFunc::shift(const std::string& v, const Rational& by) const
{
    if (!depends_on(v)) return *this;
    // A shift is an automorphism, so the result stays reduced.
    return make_coprime(num_.shift(v, by), den_.shift(v, by));
}

RatFunc RatFunc::derivative(const std::string& v) const
{
    if (!depends_on(v)) return RatFunc();
    MPoly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    return make(n, den_ * den_);
}

std::string RatFunc::str() const
{
    if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
    std::string n = num_.str(), d = den_.str();
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace hsum
