#pragma once

#include "hsum/operators.hpp"

namespace hsum {

struct RatioSolutionSet {
    std::vector<RatFunc> ratios;  // S(n+1)/S(n), sorted by display
    std::vector<std::string> warnings;
    std::string str() const;
};

// Hypergeometric solutions of a recurrence with coefficients in Q[n].
RatioSolutionSet rec_hyper(const Recurrence& re);

// True when S(n+j) = S(n) prod_{i<j} ratio(n+i) annihilates re exactly.
bool annihilates(const Recurrence& re, const RatFunc& ratio);

// Reads "c_J(n)*S(n+J) + ... + c_0(n)*S(n) = 0"; shifts may be negative
// and the window is moved to start at S(n).
Recurrence parse_recurrence(const std::string& text, const std::string& func = "S", const std::string& var = "n");

}  // namespace hsum
