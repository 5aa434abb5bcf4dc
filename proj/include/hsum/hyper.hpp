#pragma once

#include "hsum/expr.hpp"

#include <optional>

namespace hsum {

struct NotHypergeometric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HyperTerm {
    std::string var;
    RatFunc ratio;  // a(var+1)/a(var)
    Expr display;
};

struct PFQ {
    std::vector<Expr> upper, lower;
    Expr argument;
    Expr prefactor = Expr(1);
    std::string str() const;
};

// a(k+1)/a(k), reduced.
RatFunc term_ratio(const Expr& e, const std::string& k);
// e(v+j)/e(v) for any integer j.
RatFunc shift_quotient(const Expr& e, const std::string& v, long j);
// a/b when it is a rational function of the symbols.
std::optional<RatFunc> rational_quotient(const Expr& a, const Expr& b);
// (de/dx)/e; throws NotHypergeometric when not rational.
RatFunc log_derivative(const Expr& e, const std::string& x);
// True when e is identically zero as a product of hypergeometric atoms.
bool is_zero_term(const Expr& e);
// e with its gamma-type atoms collected: rational part factored, then
// remaining GAMMA and power atoms.
Expr collect_term(const Expr& e, const std::vector<std::string>& priority = {});

HyperTerm hyper_term(const Expr& e, const std::string& k);
HyperTerm pfq_term(const std::vector<Expr>& upper, const std::vector<Expr>& lower, const Expr& arg,
                   const std::string& k);
PFQ sum_to_hyper(const Expr& e, const std::string& k);

// Splits a ratio C*prod(k+a_i)/prod(k+b_j) over Q(params); throws when a
// factor is not linear in k.
struct LinearRatio {
    RatFunc constant;
    std::vector<RatFunc> upper, lower;  // a_i, b_j with multiplicity
};
LinearRatio split_ratio(const RatFunc& r, const std::string& k);

}  // namespace hsum
