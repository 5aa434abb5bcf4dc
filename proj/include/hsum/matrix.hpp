#pragma once

#include "hsum/ratfunc.hpp"

#include <vector>

namespace hsum {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RatFunc& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const RatFunc& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RatFunc> a_;
};

enum class SolveKind { Unique, Parametric, Inconsistent };

struct LinearSolution {
    SolveKind kind = SolveKind::Inconsistent;
    // Particular solution with every free variable set to zero.
    std::vector<RatFunc> particular;
    // One basis vector per free column, in column order.
    std::vector<std::size_t> free_columns;
    std::vector<std::vector<RatFunc>> nullspace;
};

LinearSolution fraction_free_solve(const Matrix& A, const std::vector<RatFunc>& rhs);
std::vector<std::vector<RatFunc>> nullspace(const Matrix& A);
RatFunc determinant(const Matrix& A);
std::size_t rank(const Matrix& A);

}  // namespace hsum
