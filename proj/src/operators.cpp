#include "hsum/operators.hpp"

#include <functional>

namespace hsum {

std::vector<MPoly> normalize_operator(const std::vector<RatFunc>& c, bool cancel_common)
{
    MPoly den(1);
    for (auto& x : c)
        if (!x.is_zero()) den = poly_lcm(den, x.den());
    std::vector<MPoly> out;
    MPoly g = cancel_common ? MPoly() : MPoly(1);
    for (auto& x : c) {
        MPoly p = x.is_zero() ? MPoly() : divide_or_throw(den, x.den()) * x.num();
        if (cancel_common) g = poly_gcd(g, p);
        out.push_back(p);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    if (out.empty()) return out;
    // one rational content over all coefficients, via a fresh variable
    MPoly all;
    MPoly z = MPoly::var("_z");
    for (std::size_t j = 0; j < out.size(); ++j) all += divide_or_throw(out[j], g) * z.pow(unsigned(j));
    Rational ct = all.content();
    MPoly top = divide_or_throw(out.back(), g);
    if (top.lc() < 0) ct = -ct;
    for (auto& p : out) p = (divide_or_throw(p, g) * Rational(1 / ct)).compact();
    return out;
}

namespace {

std::string paren(const Expr& e)
{
    std::string s = e.str();
    return e.kind() == Kind::Add ? "(" + s + ")" : s;
}

// "c*S(n+j)" terms joined with signs
std::string join_terms(const std::vector<MPoly>& coeffs, const std::function<std::string(int)>& head,
                       const std::string& var, bool factored)
{
    std::string s;
    for (int j = int(coeffs.size()) - 1; j >= 0; --j) {
        if (coeffs[j].is_zero()) continue;
        Expr c = factored ? to_expr_factored(RatFunc(coeffs[j]), {var}) : to_expr(coeffs[j]);
        bool neg = false;
        if (c.is_num() && c.value() < 0) neg = true;
        if (c.kind() == Kind::Mul && c.args()[0].is_num() && c.args()[0].value() < 0) neg = true;
        if (neg) c = -c;
        std::string t = c.is_num(1) ? head(j) : paren(c) + "*" + head(j);
        if (s.empty())
            s = (neg ? "-" : "") + t;
        else
            s += (neg ? " - " : " + ") + t;
    }
    return (s.empty() ? "0" : s) + " = 0";
}

std::string shift_head(const std::string& f, const std::string& v, int j)
{
    return f + "(" + v + (j ? " + " + std::to_string(j) : "") + ")";
}

std::string diff_head(const std::string& f, const std::string& v, int j)
{
    if (j <= 3) return f + std::string(j, '\'') + "(" + v + ")";
    return f + "^(" + std::to_string(j) + ")(" + v + ")";
}

}  // namespace

std::string Recurrence::str() const
{
    return join_terms(coeffs, [&](int j) { return shift_head(func, var, j); }, var, true);
}

std::string Recurrence::str_expanded() const
{
    return join_terms(coeffs, [&](int j) { return shift_head(func, var, j); }, var, false);
}

std::string DiffEq::str() const
{
    return join_terms(coeffs, [&](int j) { return diff_head(func, var, j); }, var, true);
}

std::string DiffEq::str_expanded() const
{
    return join_terms(coeffs, [&](int j) { return diff_head(func, var, j); }, var, false);
}

bool satisfies(const Recurrence& re, const std::vector<Rational>& s, long n0,
               const std::map<std::string, Rational>& bindings)
{
    int J = re.order();
    for (std::size_t i = 0; i + J < s.size(); ++i) {
        std::map<std::string, Rational> b = bindings;
        b[re.var] = n0 + long(i);
        Rational acc = 0;
        for (int j = 0; j <= J; ++j) acc += eval_at(to_expr(re.coeffs[j]), b) * s[i + j];
        if (acc != 0) return false;
    }
    return true;
}

std::vector<RatFunc> apply(const DiffEq& de, const std::vector<RatFunc>& series)
{
    // coefficient lists of each derivative
    std::vector<std::vector<RatFunc>> d{series};
    for (int j = 1; j <= de.order(); ++j) {
        const auto& prev = d.back();
        std::vector<RatFunc> nx;
        for (std::size_t i = 1; i < prev.size(); ++i) nx.push_back(prev[i] * RatFunc(long(i)));
        d.push_back(nx);
    }
    std::size_t len = d.back().size();
    std::vector<RatFunc> out(len);
    for (int j = 0; j <= de.order(); ++j) {
        auto pc = de.coeffs[j].coeffs(de.var);
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t p = 0; p < pc.size() && p <= i; ++p)
                if (!pc[p].is_zero()) out[i] += RatFunc(pc[p]) * d[j][i - p];
    }
    return out;
}

}  // namespace hsum
