#include "hsum/petkovsek.hpp"

#include "hsum/factorize.hpp"
#include "hsum/matrix.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace hsum {

namespace {

std::vector<MPoly> monic_divisors(const MPoly& p)
{
    Factorization f = factor_univariate(p);
    std::vector<MPoly> out{MPoly(1)};
    for (auto& [g, e] : f.factors) {
        MPoly m = g * Rational(1 / g.lc());
        std::vector<MPoly> next;
        for (auto& d : out) {
            MPoly x = d;
            for (int i = 0; i <= e; ++i) {
                next.push_back(x);
                x *= m;
            }
        }
        out = std::move(next);
    }
    return out;
}

MPoly shifted_product(const MPoly& f, const std::string& n, long from, long to)
{
    MPoly out(1);
    for (long i = from; i < to; ++i) out *= f.shift(n, i);
    return out;
}

Rational coeff_of(const MPoly& p, const std::string& n, int m)
{
    auto c = p.coeffs(n);
    return m < int(c.size()) ? c[m].constant_value() : Rational(0);
}

// Largest possible degree of a polynomial solution of sum_j Q_j c(n+j) = 0,
// or -1 when only c = 0 is possible.
long poly_degree_bound(const std::vector<MPoly>& Q, const std::string& n)
{
    std::size_t d = Q.size() - 1;
    std::vector<MPoly> q(d + 1);
    for (std::size_t j = 0; j <= d; ++j) {
        Integer b = 1;
        for (std::size_t i = 0; i <= j; ++i) {
            q[i] += Q[j] * Rational(b);
            b = b * Integer(j - i) / Integer(i + 1);
        }
    }
    bool any = false;
    int top = 0;
    for (std::size_t i = 0; i <= d; ++i)
        if (!q[i].is_zero()) {
            int v = q[i].degree(n) - int(i);
            top = any ? std::max(top, v) : v;
            any = true;
        }
    if (!any) return -1;
    // sum of lc(q_i) x(x-1)...(x-i+1) over the extremal i
    MPoly x = MPoly::var("x"), poly;
    for (std::size_t i = 0; i <= d; ++i) {
        if (q[i].is_zero() || q[i].degree(n) - int(i) != top) continue;
        MPoly ff(1);
        for (std::size_t l = 0; l < i; ++l) ff *= x - MPoly(Rational(long(l)));
        poly += ff * q[i].lc();
    }
    long best = -1;
    if (poly.is_zero()) return -1;
    for (auto& r : rational_roots(poly))
        if (r >= 0 && r.get_den() == 1) best = std::max(best, r.get_num().get_si());
    return best;
}

std::vector<MPoly> polynomial_solutions(const std::vector<MPoly>& Q, const std::string& n)
{
    long N = poly_degree_bound(Q, n);
    if (N < 0) return {};
    MPoly nn = MPoly::var(n);
    std::vector<MPoly> cols;
    int rows = 1;
    for (long l = 0; l <= N; ++l) {
        MPoly c;
        for (std::size_t j = 0; j < Q.size(); ++j) c += Q[j] * (nn + MPoly(Rational(long(j)))).pow(unsigned(l));
        if (!c.is_zero()) rows = std::max(rows, c.degree(n) + 1);
        cols.push_back(c);
    }
    Matrix A(rows, N + 1);
    for (long l = 0; l <= N; ++l) {
        auto cc = cols[l].coeffs(n);
        for (int i = 0; i < int(cc.size()); ++i) A(i, l) = RatFunc(cc[i]);
    }
    std::vector<MPoly> out;
    for (auto& v : nullspace(A)) {
        MPoly c;
        for (long l = N; l >= 0; --l) c = c * nn + v[l].as_polynomial();
        out.push_back(c);
    }
    return out;
}

std::string display(const RatFunc& r, const std::string& n) { return to_expr_factored(r, {n}).str(); }

}  // namespace

bool annihilates(const Recurrence& re, const RatFunc& ratio)
{
    RatFunc s, prod(1);
    for (std::size_t j = 0; j < re.coeffs.size(); ++j) {
        s += RatFunc(re.coeffs[j]) * prod;
        prod *= ratio.shift(re.var, long(j));
    }
    return s.is_zero();
}

RatioSolutionSet rec_hyper(const Recurrence& input)
{
    const std::string& n = input.var;
    Recurrence re = input;
    for (auto& c : re.coeffs)
        for (auto& v : c.used_vars())
            if (v != n) throw std::domain_error("recurrence coefficients with parameters are not supported (" + v + ")");
    while (!re.coeffs.empty() && re.coeffs.back().is_zero()) re.coeffs.pop_back();
    long lead_zeros = 0;
    while (lead_zeros < long(re.coeffs.size()) && re.coeffs[lead_zeros].is_zero()) ++lead_zeros;
    if (lead_zeros) {
        std::vector<MPoly> c;
        for (std::size_t j = lead_zeros; j < re.coeffs.size(); ++j) c.push_back(re.coeffs[j].shift(n, -lead_zeros));
        re.coeffs = c;
    }
    if (re.order() < 1) throw std::invalid_argument("recurrence must have order at least 1");
    const long d = re.order();
    RatioSolutionSet out;
    std::set<std::string> seen_warnings;
    std::vector<std::pair<std::string, RatFunc>> found;
    auto add = [&](const RatFunc& r) {
        std::string key = display(r, n);
        for (auto& f : found)
            if (f.second == r) return;
        found.push_back({key, r});
    };
    auto As = monic_divisors(re.coeffs[0]);
    auto Bs = monic_divisors(re.coeffs[d].shift(n, 1 - d));
    MPoly zz = MPoly::var("z");
    for (auto& A : As)
        for (auto& B : Bs) {
            std::vector<MPoly> P(d + 1);
            int m = 0;
            for (long j = 0; j <= d; ++j) {
                P[j] = re.coeffs[j] * shifted_product(A, n, 0, j) * shifted_product(B, n, j, d);
                if (!P[j].is_zero()) m = std::max(m, P[j].degree(n));
            }
            MPoly zpoly;
            for (long j = 0; j <= d; ++j) zpoly += zz.pow(unsigned(j)) * coeff_of(P[j], n, m);
            for (auto& [g, e] : factor_univariate(zpoly).factors)
                if (g.degree("z") > 1) {
                    std::string w = "skipped non-rational z roots of " + to_expr(g).str();
                    if (seen_warnings.insert(w).second) out.warnings.push_back(w);
                }
            for (auto& z : rational_roots(zpoly)) {
                if (z == 0) continue;
                std::vector<MPoly> Q(d + 1);
                Rational zp = 1;
                for (long j = 0; j <= d; ++j) {
                    Q[j] = P[j] * zp;
                    zp *= z;
                }
                for (auto& c : polynomial_solutions(Q, n)) {
                    RatFunc r = RatFunc(z) * RatFunc::make(A, B) * RatFunc::make(c.shift(n, 1), c);
                    if (!annihilates(re, r)) throw std::logic_error("hypergeometric solution check failed");
                    add(r);
                }
            }
        }
    std::sort(found.begin(), found.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& f : found) out.ratios.push_back(f.second);
    return out;
}

std::string RatioSolutionSet::str() const
{
    std::string s = "{";
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (i) s += ", ";
        s += to_expr_factored(ratios[i]).str();
    }
    return s + "}";
}

Recurrence parse_recurrence(const std::string& text, const std::string& func, const std::string& var)
{
    std::string lhs = text, rhs = "0";
    if (auto eq = text.find('='); eq != std::string::npos) {
        lhs = text.substr(0, eq);
        rhs = text.substr(eq + 1);
    }
    auto is_ident = [](char c) { return std::isalnum((unsigned char)c) || c == '_'; };
    // replace func(arg) by placeholder symbols
    std::map<long, std::string> names;
    auto rewrite = [&](const std::string& s) {
        std::string out;
        std::size_t i = 0;
        while (i < s.size()) {
            bool at = s.compare(i, func.size(), func) == 0 && (i == 0 || !is_ident(s[i - 1]));
            std::size_t j = i + func.size();
            while (at && j < s.size() && s[j] == ' ') ++j;
            if (!at || j >= s.size() || s[j] != '(' || (i + func.size() < s.size() && is_ident(s[i + func.size()]))) {
                out += s[i++];
                continue;
            }
            int depth = 0;
            std::size_t k = j;
            for (; k < s.size(); ++k) {
                if (s[k] == '(') ++depth;
                if (s[k] == ')' && --depth == 0) break;
            }
            if (k == s.size()) throw ParseError("unbalanced parentheses after " + func, j, {});
            RatFunc shift = eval_rf(parse(s.substr(j + 1, k - j - 1))) - RatFunc::var(var);
            if (!shift.is_constant() || shift.constant_value().get_den() != 1)
                throw ParseError(func + " must be applied to " + var + " plus an integer", j, {});
            long sh = shift.constant_value().get_num().get_si();
            std::string name = "hsumshift" + std::to_string(sh < 0 ? -sh : sh) + (sh < 0 ? "m" : "p");
            names[sh] = name;
            out += " " + name + " ";
            i = k + 1;
        }
        return out;
    };
    Expr e = parse(rewrite(lhs)) - parse(rewrite(rhs));
    if (names.empty()) throw ParseError("no occurrence of " + func + "(" + var + "+j)", 0, {});
    RatFunc r = eval_rf(e), rest = r;
    for (auto& [sh, name] : names) rest = rest.subs(name, RatFunc());
    if (!rest.is_zero()) throw ParseError("recurrence is not homogeneous", 0, {});
    long lo = names.begin()->first, hi = names.rbegin()->first;
    std::vector<RatFunc> c(hi - lo + 1);
    for (auto& [sh, name] : names) {
        RatFunc coef = r.derivative(name);
        for (auto& [s2, n2] : names)
            if (coef.depends_on(n2)) throw ParseError("recurrence is not linear in " + func, 0, {});
        c[sh - lo] = coef.shift(var, -lo);
    }
    Recurrence re;
    re.func = func;
    re.var = var;
    re.coeffs = normalize_operator(c);
    return re;
}

}  // namespace hsum
