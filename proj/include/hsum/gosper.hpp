#pragma once

#include "hsum/hyper.hpp"

namespace hsum {

// ratio(k) = (p(k+1)/p(k)) * (q(k+1)/r(k+1)) with gcd(q(k), r(k+j)) = 1
// for all j >= 0.
struct PQR {
    MPoly p, q, r;
};
PQR gosper_pqr(const RatFunc& ratio, const std::string& k);

// Upper bound for deg f in p(k) = q(k+1) f(k) - r(k) f(k-1); -1 when no
// polynomial solution can exist.
long degree_bound(const PQR& t, const std::string& k);

struct GosperResult {
    bool found = false;
    std::string var;
    PQR pqr;
    long bound = -1;
    RatFunc f;  // polynomial in k over Q(params)
    // s(k) = multiplier(k) * a(k) = r(k) f(k-1) / p(k) * a(k)
    RatFunc multiplier;
    Expr antidifference;
};

GosperResult gosper(const HyperTerm& a);
GosperResult gosper(const Expr& a, const std::string& k);

}  // namespace hsum
