#pragma once

#include "hsum/mpoly.hpp"

#include <utility>
#include <vector>

namespace hsum {

struct Factorization {
    Rational content = 1;
    std::vector<std::pair<MPoly, int>> factors;

    MPoly expand() const;
    std::string str() const;
};

// Yun decomposition of a univariate polynomial into pairwise coprime
// squarefree parts.
Factorization squarefree(const MPoly& p);

// Rational roots of a univariate polynomial over Q, ascending.
std::vector<Rational> rational_roots(const MPoly& p);

// Complete factorization over Q of a parameter-free univariate polynomial.
Factorization factor_univariate(const MPoly& p);

// Nonnegative j with deg_k gcd(q(k), r(k+j)) >= 1, ascending.
std::vector<long> dispersion_set(const MPoly& q, const MPoly& r, const std::string& k);

// Factors of p of the form (c*v + beta) with c rational and beta affine in
// the remaining variables. The product of content, linear factors and rest
// equals p; `content` is free of v.
struct LinearSplit {
    MPoly content;
    std::vector<std::pair<MPoly, int>> linear;
    MPoly rest;
};
LinearSplit linear_factors(const MPoly& p, const std::string& v);

// Best-effort factorization for display: full factorization when p is
// univariate over Q, otherwise content extraction and linear splitting,
// variable by variable in the given priority order.
Factorization factor_pretty(const MPoly& p, const std::vector<std::string>& priority = {});

}  // namespace hsum
