#include "hsum/matrix.hpp"

#include <stdexcept>

namespace hsum {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFunc(1);
    return m;
}

namespace {

struct Echelon {
    std::vector<std::vector<MPoly>> m;
    std::vector<std::size_t> pivots;
    MPoly last = MPoly(1);
    int sign = 1;
};

// Rows scaled to polynomial entries; returns the product of the scale
// factors so determinants can be corrected.
RatFunc clear_rows(const Matrix& A, const std::vector<RatFunc>* rhs, std::vector<std::vector<MPoly>>& out)
{
    RatFunc scale(1);
    std::size_t w = A.cols() + (rhs ? 1 : 0);
    out.assign(A.rows(), std::vector<MPoly>(w));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        MPoly l(1);
        Integer dl = 1;
        for (std::size_t j = 0; j < w; ++j) {
            const RatFunc& e = j < A.cols() ? A(i, j) : (*rhs)[i];
            if (e.is_zero()) continue;
            if (!e.den().is_constant()) l = poly_lcm(l, e.den());
            Integer d = e.den().content().get_num();
            mpz_lcm(dl.get_mpz_t(), dl.get_mpz_t(), d.get_mpz_t());
        }
        MPoly mult = l * Rational(dl);
        for (std::size_t j = 0; j < w; ++j) {
            const RatFunc& e = j < A.cols() ? A(i, j) : (*rhs)[i];
            if (e.is_zero()) continue;
            out[i][j] = divide_or_throw(mult * e.num(), e.den());
        }
        scale *= RatFunc(mult);
    }
    return scale;
}

// Fraction-free elimination over the first `ncols` columns. With `jordan`
// the entries above each pivot are cleared as well; every pivot entry then
// equals the last pivot.
Echelon eliminate(std::vector<std::vector<MPoly>> m, std::size_t ncols, bool jordan)
{
    Echelon e;
    std::size_t r = 0;
    const std::size_t nrows = m.size();
    const std::size_t w = nrows ? m[0].size() : 0;
    MPoly prev(1);
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        // sparsest nonzero entry as pivot
        std::size_t p = nrows;
        for (std::size_t i = r; i < nrows; ++i)
            if (!m[i][c].is_zero() && (p == nrows || m[i][c].size() < m[p][c].size())) p = i;
        if (p == nrows) continue;
        if (p != r) {
            std::swap(m[p], m[r]);
            e.sign = -e.sign;
        }
        const MPoly piv = m[r][c];
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r) continue;
            if (i < r && !jordan) continue;
            const MPoly f = m[i][c];
            for (std::size_t j = 0; j < w; ++j) {
                if (j == c) continue;
                if (i < r && j < c && m[i][j].is_zero()) continue;
                MPoly v = piv * m[i][j];
                if (!f.is_zero() && !m[r][j].is_zero()) v -= f * m[r][j];
                m[i][j] = prev.is_constant() ? v * Rational(1 / prev.constant_value()) : divide_or_throw(v, prev);
            }
            m[i][c] = MPoly();
        }
        prev = piv;
        e.pivots.push_back(c);
        ++r;
    }
    e.last = prev;
    e.m = std::move(m);
    return e;
}

}  // namespace

LinearSolution fraction_free_solve(const Matrix& A, const std::vector<RatFunc>& rhs)
{
    if (rhs.size() != A.rows()) throw std::invalid_argument("fraction_free_solve: dimension mismatch");
    std::vector<std::vector<MPoly>> m;
    clear_rows(A, &rhs, m);
    const std::size_t n = A.cols();
    Echelon e = eliminate(std::move(m), n, true);
    LinearSolution sol;
    std::size_t rk = e.pivots.size();
    for (std::size_t i = rk; i < A.rows(); ++i)
        if (!e.m[i][n].is_zero()) {
            sol.kind = SolveKind::Inconsistent;
            return sol;
        }
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) sol.free_columns.push_back(c);
    sol.kind = sol.free_columns.empty() ? SolveKind::Unique : SolveKind::Parametric;
    sol.particular.assign(n, RatFunc());
    for (std::size_t i = 0; i < rk; ++i)
        sol.particular[e.pivots[i]] = RatFunc::make(e.m[i][n], e.last);
    for (auto f : sol.free_columns) {
        std::vector<RatFunc> v(n);
        v[f] = RatFunc(1);
        for (std::size_t i = 0; i < rk; ++i)
            if (!e.m[i][f].is_zero()) v[e.pivots[i]] = RatFunc::make(-e.m[i][f], e.last);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

std::vector<std::vector<RatFunc>> nullspace(const Matrix& A)
{
    std::vector<RatFunc> zero(A.rows());
    return fraction_free_solve(A, zero).nullspace;
}

RatFunc determinant(const Matrix& A)
{
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant: matrix not square");
    if (A.rows() == 0) return RatFunc(1);
    std::vector<std::vector<MPoly>> m;
    RatFunc scale = clear_rows(A, nullptr, m);
    Echelon e = eliminate(std::move(m), A.cols(), false);
    if (e.pivots.size() < A.rows()) return RatFunc();
    return RatFunc(e.last * Rational(e.sign)) / scale;
}

std::size_t rank(const Matrix& A)
{
    std::vector<std::vector<MPoly>> m;
    clear_rows(A, nullptr, m);
    return eliminate(std::move(m), A.cols(), false).pivots.size();
}

}  // namespace hsum
