#include "hsum/zeilberger.hpp"

#include "hsum/factorize.hpp"
#include "hsum/matrix.hpp"

#include <algorithm>

namespace hsum {

namespace {

struct System {
    std::vector<MPoly> cols;  // one polynomial in the main variable per unknown
    MPoly rhs;
};

// Solves sum_u x_u cols[u] = rhs coefficientwise in v.
std::optional<std::vector<RatFunc>> solve_coefficients(const System& s, const std::string& v)
{
    int rows = s.rhs.is_zero() ? 0 : s.rhs.degree(v) + 1;
    std::vector<std::vector<MPoly>> cc;
    for (auto& c : s.cols) {
        if (!c.is_zero()) rows = std::max(rows, c.degree(v) + 1);
        cc.push_back(c.coeffs(v));
    }
    Matrix A(rows, s.cols.size());
    std::vector<RatFunc> b(rows);
    auto rc = s.rhs.coeffs(v);
    for (int i = 0; i < rows; ++i) {
        if (i < int(rc.size())) b[i] = RatFunc(rc[i]);
        for (std::size_t j = 0; j < cc.size(); ++j)
            if (i < int(cc[j].size())) A(i, j) = RatFunc(cc[j][i]);
    }
    LinearSolution sol = fraction_free_solve(A, b);
    if (sol.kind == SolveKind::Inconsistent) return std::nullopt;
    return sol.particular;
}

std::vector<long> nonneg_integer_roots(const MPoly& p, const std::string& v)
{
    std::vector<long> out;
    if (p.is_zero() || p.degree(v) < 1) return out;
    for (auto& [l, m] : linear_factors(p, v).linear) {
        auto cs = l.coeffs(v);
        if (!cs[0].is_constant()) continue;
        Rational root = -cs[0].constant_value() / cs[1].constant_value();
        if (root >= 0 && root.get_den() == 1 && root.get_num().fits_slong_p()) out.push_back(root.get_num().get_si());
    }
    std::sort(out.begin(), out.end());
    return out;
}

void common_denominator(const std::vector<RatFunc>& R, MPoly& D, std::vector<MPoly>& N)
{
    D = MPoly(1);
    for (auto& r : R) D = poly_lcm(D, r.den());
    N.clear();
    for (auto& r : R) N.push_back(divide_or_throw(D, r.den()) * r.num());
}

Recurrence make_recurrence(const std::vector<RatFunc>& sigma, const std::string& func, const std::string& var)
{
    Recurrence re;
    re.func = func;
    re.var = var;
    re.coeffs = normalize_operator(sigma);
    return re;
}

}  // namespace

std::optional<Telescoped> telescope_discrete(const RatFunc& ratio, const std::vector<RatFunc>& R, const std::string& k,
                                             std::size_t fixed)
{
    MPoly D;
    std::vector<MPoly> N;
    common_denominator(R, D, N);
    RatFunc rho_u = ratio * RatFunc(D) / RatFunc(D.shift(k, 1));
    PQR t = gosper_pqr(rho_u, k);
    int m = 0;
    for (auto& x : N)
        if (!x.is_zero()) m = std::max(m, x.degree(k));
    MPoly kk = MPoly::var(k);
    long d = degree_bound(PQR{t.p * kk.pow(unsigned(m)), t.q, t.r}, k);
    System s;
    for (std::size_t j = 0; j < N.size(); ++j)
        if (j != fixed) s.cols.push_back(t.p * N[j]);
    MPoly Q = t.q.shift(k, 1);
    for (long i = 0; i <= d; ++i) s.cols.push_back(t.r * (kk - MPoly(1)).pow(unsigned(i)) - Q * kk.pow(unsigned(i)));
    s.rhs = -(t.p * N[fixed]);
    auto x = solve_coefficients(s, k);
    if (!x) return std::nullopt;
    Telescoped out;
    std::size_t u = 0;
    for (std::size_t j = 0; j < N.size(); ++j) out.sigma.push_back(j == fixed ? RatFunc(1) : (*x)[u++]);
    RatFunc f, kr = RatFunc::var(k);
    for (long i = d; i >= 0; --i) f = f * kr + (*x)[u + i];
    out.multiplier = RatFunc(t.r) * f.shift(k, -1) / (RatFunc(t.p) * RatFunc(D));
    RatFunc lhs = out.multiplier.shift(k, 1) * ratio - out.multiplier, rhs;
    for (std::size_t j = 0; j < R.size(); ++j) rhs += out.sigma[j] * R[j];
    if (lhs != rhs) throw std::logic_error("telescoping certificate check failed");
    return out;
}

std::optional<Telescoped> telescope_continuous(const RatFunc& logder, const std::vector<RatFunc>& R,
                                               const std::string& t, std::size_t fixed)
{
    MPoly D;
    std::vector<MPoly> N;
    common_denominator(R, D, N);
    RatFunc Lu = logder - RatFunc(D.derivative(t)) / RatFunc(D);
    MPoly p0(1), q = Lu.num(), r = Lu.den();
    // move factors g^i with g | q - i r' into p0
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [g, mult] : factor_pretty(r, {t}).factors) {
            if (g.degree(t) != 1) continue;
            auto cs = g.coeffs(t);
            RatFunc t0 = -RatFunc(cs[0]) / RatFunc(cs[1]);
            RatFunc den = subs_poly(r.derivative(t), t, t0);
            if (den.is_zero()) continue;
            RatFunc i = subs_poly(q, t, t0) / den;
            if (!i.is_constant()) continue;
            Rational iv = i.constant_value();
            if (iv <= 0 || iv.get_den() != 1) continue;
            long n = iv.get_num().get_si();
            MPoly rt = divide_or_throw(r, g);
            q = divide_or_throw(q - g.derivative(t) * rt * iv, g);
            r = rt;
            p0 *= g.pow(unsigned(n));
            changed = true;
            break;
        }
    }
    MPoly qr = q + r.derivative(t);
    int dp = p0.degree(t), m = 0;
    for (auto& x : N)
        if (!x.is_zero()) m = std::max(m, x.degree(t));
    dp += m;
    int alpha = qr.is_zero() ? -1 : qr.degree(t), beta = r.degree(t) - 1;
    long d;
    if (alpha > beta)
        d = dp - alpha;
    else if (alpha < beta)
        d = dp - beta;
    else {
        d = dp - alpha;
        RatFunc d0 = -RatFunc(qr.lead_coeff(t)) / RatFunc(r.lead_coeff(t));
        if (d0.is_constant()) {
            Rational v = d0.constant_value();
            if (v >= 0 && v.get_den() == 1 && v > d) d = v.get_num().get_si();
        }
    }
    System s;
    for (std::size_t j = 0; j < N.size(); ++j)
        if (j != fixed) s.cols.push_back(-(p0 * N[j]));
    MPoly tt = MPoly::var(t);
    for (long i = 0; i <= d; ++i) {
        MPoly c = qr * tt.pow(unsigned(i));
        if (i > 0) c += r * tt.pow(unsigned(i - 1)) * Rational(i);
        s.cols.push_back(c);
    }
    s.rhs = p0 * N[fixed];
    auto x = solve_coefficients(s, t);
    if (!x) return std::nullopt;
    Telescoped out;
    std::size_t u = 0;
    for (std::size_t j = 0; j < N.size(); ++j) out.sigma.push_back(j == fixed ? RatFunc(1) : (*x)[u++]);
    RatFunc f, tr = RatFunc::var(t);
    for (long i = d; i >= 0; --i) f = f * tr + (*x)[u + i];
    out.multiplier = RatFunc(r) * f / (RatFunc(p0) * RatFunc(D));
    RatFunc lhs = out.multiplier.derivative(t) + out.multiplier * logder, rhs;
    for (std::size_t j = 0; j < R.size(); ++j) rhs += out.sigma[j] * R[j];
    if (lhs != rhs) throw std::logic_error("continuous telescoping certificate check failed");
    return out;
}

SumRecursion sum_recursion(const Expr& F, const std::string& k, const std::string& n, const std::string& func,
                           int order_max)
{
    RatFunc rho = term_ratio(F, k);
    std::vector<RatFunc> R{RatFunc(1)};
    for (int J = 1; J <= order_max; ++J) {
        R.push_back(shift_quotient(F, n, J));
        if (auto res = telescope_discrete(rho, R, k, 0))
            return SumRecursion{make_recurrence(res->sigma, func, n), res->sigma, res->multiplier};
    }
    throw NoRecurrence("no recurrence of order <= " + std::to_string(order_max) + " found", order_max);
}

Rational definite_sum(const Expr& F, const std::string& k, const std::map<std::string, Rational>& bindings, long kmax)
{
    RatFunc rho = term_ratio(F, k);
    for (auto& [v, q] : bindings) rho = rho.subs(v, RatFunc(q));
    auto poles = nonneg_integer_roots(rho.den(), k);
    Rational s = 0;
    auto b = bindings;
    for (long j = 0; j <= kmax; ++j) {
        b[k] = j;
        Rational a = eval_at(F, b);
        s += a;
        if (a == 0 && (poles.empty() || poles.back() < j)) return s;
    }
    throw EvalError("sum does not terminate within " + std::to_string(kmax) + " terms");
}

namespace {

bool integer_constant(const RatFunc& d, long& out)
{
    if (!d.is_constant()) return false;
    Rational v = d.constant_value();
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return false;
    out = v.get_num().get_si();
    return true;
}

// a is a constant that makes pochhammer(a, N) vanish or blow up
bool nonpositive_integer(const RatFunc& a)
{
    long v;
    return integer_constant(a, v) && v <= 0;
}

bool half_integer(const RatFunc& a, long& j)
{
    if (!a.is_constant() || a.constant_value().get_den() != 2) return false;
    Rational v = a.constant_value() - Rational(1, 2);
    j = v.get_num().get_si();
    return true;
}

Expr fact(const Expr& e) { return Expr::factorial(e); }

struct TermParts {
    RatFunc R = RatFunc(1);  // rational factor in N, value 1 at N = 0
    long fours = 0;          // extra 4^(fours N)
    std::vector<Expr> num, den;
};

}  // namespace

Expr term_from_ratio(const RatFunc& ratio, const std::string& n, long n0, const RatFunc& initial)
{
    LinearRatio lr = split_ratio(ratio.shift(n, n0), n);
    Expr N = Expr::sym(n);
    RatFunc Nr = RatFunc::var(n);
    TermParts t;
    auto& up = lr.upper;
    auto& lo = lr.lower;
    // pochhammer(a, N) / pochhammer(a + d, N) for integer d is rational in N
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < up.size() && !again; ++i)
            for (std::size_t j = 0; j < lo.size() && !again; ++j) {
                long d;
                if (!integer_constant(lo[j] - up[i], d) || d == 0 || d > 30 || d < -30) continue;
                RatFunc a = up[i], b = lo[j], f(1);
                bool ok = true;
                if (d > 0) {
                    for (long s = 0; s < d; ++s) {
                        ok = ok && !nonpositive_integer(a + RatFunc(s));
                        f *= (a + RatFunc(s)) / (Nr + a + RatFunc(s));
                    }
                } else {
                    for (long s = 0; s < -d; ++s) {
                        ok = ok && !nonpositive_integer(b + RatFunc(s));
                        f *= (Nr + b + RatFunc(s)) / (b + RatFunc(s));
                    }
                }
                if (!ok) continue;
                t.R *= f;
                up.erase(up.begin() + i);
                lo.erase(lo.begin() + j);
                again = true;
            }
    }
    auto place = [&](const RatFunc& p, bool upper) {
        auto& same = upper ? t.num : t.den;
        auto& other = upper ? t.den : t.num;
        long m, j;
        if (integer_constant(p, m) && m > 0) {
            same.push_back(fact(N + Expr(m - 1)));
            if (m > 2) other.push_back(fact(Expr(m - 1)));
            return;
        }
        if (half_integer(p, j)) {
            RatFunc q = p;
            if (j < 0) {
                RatFunc f(1);
                for (long s = 0; s < -j; ++s) f *= (p + RatFunc(s)) / (Nr + p + RatFunc(s));
                t.R *= upper ? f : f.inverse();
                j = 0;
            }
            t.fours += upper ? -1 : 1;
            if (j == 0) {
                same.push_back(fact(Expr(2) * N));
                other.push_back(fact(N));
            } else {
                same.push_back(fact(Expr(2) * N + Expr(2 * j - 1)));
                other.push_back(fact(N + Expr(j - 1)));
                Integer a, b;
                mpz_fac_ui(a.get_mpz_t(), (unsigned long)(j - 1));
                mpz_fac_ui(b.get_mpz_t(), (unsigned long)(2 * j - 1));
                RatFunc c = RatFunc(Rational(a) / Rational(b));
                t.R *= upper ? c : c.inverse();
            }
            return;
        }
        same.push_back(Expr::pochhammer(to_expr(p), N));
    };
    for (auto& p : up) place(p, true);
    for (auto& p : lo) place(p, false);
    std::vector<Expr> parts{to_expr_factored(initial * t.R, {n})};
    RatFunc cst = lr.constant;
    if (cst.is_constant()) {
        Rational base = cst.constant_value();
        Integer p4;
        mpz_pow_ui(p4.get_mpz_t(), Integer(4).get_mpz_t(), (unsigned long)(t.fours < 0 ? -t.fours : t.fours));
        base *= t.fours >= 0 ? Rational(p4) : Rational(1) / Rational(p4);
        if (base < 0) {
            parts.push_back(Expr::pow(Expr(-1), N));
            base = -base;
        }
        if (base.get_num() != 1) parts.push_back(Expr::pow(Expr(Rational(base.get_num())), N));
        if (base.get_den() != 1) parts.push_back(Expr::pow(Expr(Rational(base.get_den())), -N));
    } else {
        parts.push_back(Expr::pow(to_expr_factored(cst), N));
        if (t.fours) parts.push_back(Expr::pow(Expr(4), Expr(t.fours) * N));
    }
    for (auto& x : t.num) parts.push_back(x);
    for (auto& x : t.den) parts.push_back(Expr::pow(x, Expr(-1)));
    Expr out = Expr::mul(parts);
    return n0 ? subs(out, n, N - Expr(n0)) : out;
}

ClosedForm closedform(const Expr& F, const std::string& k, const std::string& n, int order_max)
{
    SumRecursion sr = sum_recursion(F, k, n, "S", order_max);
    if (sr.rec.order() != 1)
        throw NoRecurrence("the recurrence has order " + std::to_string(sr.rec.order()) + ": " + sr.rec.str(), order_max);
    ClosedForm out;
    out.rec = sr.rec;
    out.ratio = -RatFunc(sr.rec.coeffs[0]) / RatFunc(sr.rec.coeffs[1]);
    auto poles = nonneg_integer_roots(sr.rec.coeffs[1], n);
    out.n0 = poles.empty() ? 0 : poles.back() + 1;
    // initial value as an exact rational function of the parameters
    Expr Fn0 = subs(F, n, Expr(out.n0));
    RatFunc rho = term_ratio(Fn0, k);
    auto kp = nonneg_integer_roots(rho.den(), k);
    RatFunc s;
    for (long j = 0;; ++j) {
        if (j > 1000) throw EvalError("initial sum does not terminate");
        auto a = rational_quotient(subs(Fn0, k, Expr(j)), Expr(1));
        if (!a) throw EvalError("initial value is not rational: " + subs(Fn0, k, Expr(j)).str());
        s += *a;
        if (a->is_zero() && (kp.empty() || kp.back() < j)) break;
    }
    out.value = term_from_ratio(out.ratio, n, out.n0, s);
    if (s.is_constant()) out.initial = s.constant_value();
    return out;
}

SumDiffEq sum_diffeq(const Expr& F, const std::string& k, const std::string& x, const std::string& func, int order_max)
{
    RatFunc rho = term_ratio(F, k), L = log_derivative(F, x);
    std::vector<RatFunc> R{RatFunc(1)};
    for (int J = 1; J <= order_max; ++J) {
        R.push_back(R.back().derivative(x) + R.back() * L);
        if (auto res = telescope_discrete(rho, R, k, J)) {
            DiffEq de;
            de.func = func;
            de.var = x;
            de.coeffs = normalize_operator(res->sigma);
            return SumDiffEq{de, res->sigma, res->multiplier};
        }
    }
    throw NoRecurrence("no differential equation of order <= " + std::to_string(order_max) + " found", order_max);
}

IntRecursion int_recursion(const Expr& F, const std::string& t, const std::string& k, const std::string& func,
                           int order_max)
{
    if (!depends_on(F, k)) throw NoRecurrence("the integrand does not depend on " + k, order_max);
    RatFunc L = log_derivative(F, t);
    std::vector<RatFunc> R{RatFunc(1)};
    for (int J = 1; J <= order_max; ++J) {
        R.push_back(shift_quotient(F, k, J));
        if (auto res = telescope_continuous(L, R, t, 0))
            return IntRecursion{make_recurrence(res->sigma, func, k), res->sigma, res->multiplier};
    }
    throw NoRecurrence("no recurrence of order <= " + std::to_string(order_max) + " found", order_max);
}

}  // namespace hsum
