#pragma once

#include "hsum/gosper.hpp"
#include "hsum/operators.hpp"

namespace hsum {

struct NoRecurrence : std::runtime_error {
    int order_max;
    NoRecurrence(const std::string& what, int order_max) : std::runtime_error(what), order_max(order_max) {}
};

// Parameterized telescoping of F * sum_j sigma_j R_j. In the discrete case
// G(k+1) - G(k) = F(k) * sum_j sigma_j R_j(k); in the continuous case
// dG/dt = F * sum_j sigma_j R_j. In both G = multiplier * F.
struct Telescoped {
    std::vector<RatFunc> sigma;
    RatFunc multiplier;
};
std::optional<Telescoped> telescope_discrete(const RatFunc& ratio, const std::vector<RatFunc>& R, const std::string& k,
                                             std::size_t fixed);
std::optional<Telescoped> telescope_continuous(const RatFunc& logder, const std::vector<RatFunc>& R,
                                               const std::string& t, std::size_t fixed);

struct SumRecursion {
    Recurrence rec;
    // G(n,k+1) - G(n,k) = F(n,k) + sum_{j>=1} sigma[j] F(n+j,k), G = multiplier*F
    std::vector<RatFunc> sigma;
    RatFunc multiplier;
};
SumRecursion sum_recursion(const Expr& F, const std::string& k, const std::string& n, const std::string& func = "S",
                           int order_max = 6);

struct ClosedForm {
    Expr value;
    RatFunc ratio;  // value(n+1)/value(n)
    long n0 = 0;
    Rational initial;
    Recurrence rec;
};
ClosedForm closedform(const Expr& F, const std::string& k, const std::string& n, int order_max = 6);

// Hypergeometric term in n from its ratio and its value at n0, written with
// Pochhammer symbols and factorials.
Expr term_from_ratio(const RatFunc& ratio, const std::string& n, long n0, const RatFunc& initial);

struct SumDiffEq {
    DiffEq de;
    // G(x,k+1) - G(x,k) = sum_j sigma[j] d^j/dx^j F(x,k), G = multiplier*F
    std::vector<RatFunc> sigma;
    RatFunc multiplier;
};
SumDiffEq sum_diffeq(const Expr& F, const std::string& k, const std::string& x, const std::string& func = "F",
                     int order_max = 6);

struct IntRecursion {
    Recurrence rec;
    // dG/dt = sum_j sigma[j] F(t,k+j), G = multiplier*F; the recurrence holds
    // for the integral when G vanishes at both ends
    std::vector<RatFunc> sigma;
    RatFunc multiplier;
};
IntRecursion int_recursion(const Expr& F, const std::string& t, const std::string& k, const std::string& func = "B",
                           int order_max = 6);

// Sum over the natural support of a terminating sum at concrete values.
Rational definite_sum(const Expr& F, const std::string& k, const std::map<std::string, Rational>& bindings,
                      long kmax = 1000);

}  // namespace hsum
