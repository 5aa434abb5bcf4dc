#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hsum {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);
// Canonicalized a/b.
Rational frac(const Integer& a, const Integer& b);
Rational parse_rational(const std::string& text);

// Variable lists are interned: equal lists share one allocation, so
// comparing two lists is a pointer comparison.
using Vars = std::shared_ptr<const std::vector<std::string>>;
Vars intern_vars(std::vector<std::string> names);
Vars empty_vars();
Vars merge_vars(const Vars& a, const Vars& b);

using Exps = boost::container::small_vector<int, 6>;

struct Term {
    Exps e;
    Rational c;
};

// Sparse polynomial over Q. Terms are kept in strictly decreasing
// graded-lex order with respect to the variable list (sorted by name).
class MPoly {
public:
    MPoly();
    MPoly(long c);
    MPoly(const Rational& c);
    static MPoly var(const std::string& name);
    static MPoly from_terms(Vars vars, std::vector<Term> terms);

    const Vars& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;
    bool depends_on(const std::string& v) const;
    std::vector<std::string> used_vars() const;
    int var_index(const std::string& v) const;

    MPoly with_vars(const Vars& target) const;
    MPoly compact() const;

    int degree(const std::string& v) const;
    int total_degree() const;
    const Rational& lc() const;
    const Term& lt() const;

    // Coefficients with respect to v, index = power of v.
    std::vector<MPoly> coeffs(const std::string& v) const;
    static MPoly from_coeffs(const std::string& v, const std::vector<MPoly>& cs);
    MPoly lead_coeff(const std::string& v) const;

    MPoly subs(const std::string& v, const MPoly& value) const;
    MPoly shift(const std::string& v, const Rational& by) const;
    MPoly derivative(const std::string& v) const;

    Rational content() const;
    // Integer primitive form with positive leading coefficient.
    MPoly primitive() const;
    MPoly monic() const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const Rational& c);
    MPoly pow(unsigned n) const;

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
    friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }

    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    std::string str() const;
    std::size_t hash() const;

private:
    Vars vars_;
    std::vector<Term> terms_;
};

// Exact quotient a/b, or nothing when b does not divide a.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);
MPoly divide_or_throw(const MPoly& a, const MPoly& b);

// Univariate division with remainder over Q in v; b must be nonzero.
void divmod_univariate(const MPoly& a, const MPoly& b, const std::string& v,
                       MPoly& q, MPoly& r);

MPoly poly_gcd(const MPoly& a, const MPoly& b);
MPoly poly_lcm(const MPoly& a, const MPoly& b);
// Content with respect to v (a polynomial free of v) and the matching
// primitive part.
MPoly content_in(const MPoly& a, const std::string& v);
MPoly primitive_in(const MPoly& a, const std::string& v);

MPoly resultant(const MPoly& a, const MPoly& b, const std::string& v);

}  // namespace hsum
