#pragma once

#include "hsum/hyper.hpp"
#include "hsum/operators.hpp"

namespace hsum {

struct NotHolonomic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Catalog: exp, sin, cos, arcsin, arctan, erf, ln, besselj (params = {order}),
// power (params = {exponent}).
DiffEq base_de(const std::string& head, const std::string& x, const std::vector<Expr>& params = {});

DiffEq de_plus_de(const DiffEq& a, const DiffEq& b);
DiffEq de_times_de(const DiffEq& a, const DiffEq& b);
// Annihilator of f(y(x)) where y^m = r(x) and L annihilates f.
DiffEq algebraic_substitute(const DiffEq& L, int m, const RatFunc& r);

// Structural closure only.
DiffEq closure_de(const Expr& e, const std::string& x);
// Closure followed by an order-minimizing search certified by the zero test.
DiffEq simple_de(const Expr& e, const std::string& x, const std::string& func = "F", bool minimize = true);

// Recurrence of the Maclaurin coefficients: the equation for x^k, with
// a(k+j) terms. Shifts start at a(k) when some term has a negative shift.
Recurrence de_to_re(const DiffEq& L, const std::string& func = "a", const std::string& k = "k");

// Number of leading Taylor coefficients that determine every solution
// analytic at 0.
long zero_test_bound(const DiffEq& L);
// e == 0, given that L annihilates e.
bool holonomic_zero_test(const DiffEq& L, const Expr& e);

struct FormalPowerSeries {
    std::string var;
    int m = 1;
    int s = 0;
    HyperTerm term;  // coefficient of x^(m k + s)
    std::vector<std::pair<int, RatFunc>> exceptional;
    RatFunc c0;  // coefficient of x^s
    Expr expr() const;  // the summand c_k x^(m k + s)
    std::string str() const;
    // coefficient of x^i
    RatFunc coefficient(int i) const;
};

FormalPowerSeries fps(const Expr& e, const std::string& x);

}  // namespace hsum
