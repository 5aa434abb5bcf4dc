#pragma once

#include "hsum/mpoly.hpp"

namespace hsum {

// Reduced fraction num/den. Both parts carry integer coefficients with no
// common integer factor and the denominator has a positive leading
// coefficient.
class RatFunc {
public:
    RatFunc();
    RatFunc(long c);
    RatFunc(const Rational& c);
    RatFunc(const MPoly& p);
    static RatFunc var(const std::string& name);
    // Full normalization (gcd cancellation).
    static RatFunc make(const MPoly& num, const MPoly& den);
    // Caller guarantees gcd(num, den) = 1; only scaling and sign are fixed.
    static RatFunc make_coprime(const MPoly& num, const MPoly& den);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    Rational constant_value() const;
    MPoly as_polynomial() const;
    bool depends_on(const std::string& v) const;
    std::vector<std::string> used_vars() const;

    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(int n) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc subs(const std::string& v, const RatFunc& value) const;
    RatFunc shift(const std::string& v, const Rational& by) const;
    RatFunc derivative(const std::string& v) const;

    std::string str() const;

private:
    MPoly num_, den_;
};

RatFunc ratfunc_normalize(const MPoly& num, const MPoly& den);

// Substitutes v -> value into a polynomial, producing a rational function.
RatFunc subs_poly(const MPoly& p, const std::string& v, const RatFunc& value);

}  // namespace hsum
