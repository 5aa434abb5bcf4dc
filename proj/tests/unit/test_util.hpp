#pragma once

#include "hsum/mpoly.hpp"

#include <random>
#include <string>
#include <vector>

namespace testutil {

inline hsum::MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg, int nterms)
{
    std::uniform_int_distribution<int> coef(-6, 6), deg(0, max_deg);
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    hsum::MPoly p;
    for (int t = 0; t < nterms; ++t) {
        hsum::MPoly m(long(coef(rng)));
        int dg = deg(rng);
        for (int i = 0; i < dg; ++i) m *= hsum::MPoly::var(vars[pick(rng)]);
        p += m;
    }
    return p;
}

}  // namespace testutil
