#pragma once

#include "tqroots/precision.hpp"

#include <cstddef>
#include <vector>

namespace tqroots {

/// Row-major square matrix of Reals.
class DenseMatrix {
public:
    explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n, Real(0)) {}

    std::size_t size() const { return n_; }
    Real& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<Real> a_;
};

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// Throws std::domain_error on an exactly singular pivot.
std::vector<Real> lu_solve(DenseMatrix a, std::vector<Real> b);

}  // namespace tqroots
