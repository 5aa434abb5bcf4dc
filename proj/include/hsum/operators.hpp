#pragma once

#include "hsum/expr.hpp"

namespace hsum {

// sum_j coeffs[j](n) * S(n+j) = 0
struct Recurrence {
    std::string func = "S", var = "n";
    std::vector<MPoly> coeffs;

    int order() const { return int(coeffs.size()) - 1; }
    // factored coefficients, highest shift first
    std::string str() const;
    std::string str_expanded() const;
    bool operator==(const Recurrence& o) const { return coeffs == o.coeffs; }
};

// sum_j coeffs[j](x) * D^j F(x) = 0
struct DiffEq {
    std::string func = "F", var = "x";
    std::vector<MPoly> coeffs;

    int order() const { return int(coeffs.size()) - 1; }
    std::string str() const;
    std::string str_expanded() const;
    bool operator==(const DiffEq& o) const { return coeffs == o.coeffs; }
};

// Clears denominators, removes the common polynomial factor and makes the
// highest nonzero coefficient have a positive leading coefficient.
// cancel_common divides out the polynomial gcd, otherwise only the rational content
std::vector<MPoly> normalize_operator(const std::vector<RatFunc>& c, bool cancel_common = true);

// Checks the recurrence on a sequence: sum_j c_j(n0+i) s[i+j] for each
// window, with the other symbols bound as given.
bool satisfies(const Recurrence& re, const std::vector<Rational>& s, long n0,
               const std::map<std::string, Rational>& bindings = {});

// Applies the operator to a truncated power series; returns the
// coefficients that are fully determined by the input.
std::vector<RatFunc> apply(const DiffEq& de, const std::vector<RatFunc>& series);

}  // namespace hsum
