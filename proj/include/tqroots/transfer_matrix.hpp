#pragma once

#include "tqroots/complex.hpp"
#include "tqroots/homogeneous_bethe.hpp"

#include <vector>

namespace tqroots {

/// Evaluates the ground-state transfer-matrix eigenvalue t(z) through the
/// homogeneous T-Q relation
///   t(z) q(z) = (z + i/2)^n q(z - i) + (z - i/2)^n q(z + i),
/// never through polynomial coefficients.
class TransferEvaluator {
public:
    explicit TransferEvaluator(HomogeneousSolution source);

    const HomogeneousSolution& source() const { return source_; }
    int n() const { return source_.n; }
    unsigned precision_bits() const { return source_.precision_bits; }

    /// q(z) = prod_k (z - lambda_k).
    Complex q(const Complex& z) const;

    /// t(z). Throws NearRootDivision when z lies within (1+|z|) 2^(-bits/2)
    /// of a Bethe root, where the quotient has lost half its digits.
    Complex t(const Complex& z) const;

    /// t(i y) for real y; real by symmetry. The imaginary part is checked
    /// against 2^(-bits+20) relative to |t| and SymmetryViolation is raised
    /// if it exceeds that.
    Real t_imag_axis(const Real& y) const;

private:
    HomogeneousSolution source_;
};

/// Real grid values needed by the linear system: t((2k+1)i/2) for
/// k = 1..n/2-2 followed by t(0) as the last element.
struct TransferGrid {
    int n = 0;
    unsigned precision_bits = 0;
    std::vector<Real> band;  // band[k-1] = t((2k+1)i/2)
    Real at_zero;
};

/// n must equal ev.n().
TransferGrid t_grid(const TransferEvaluator& ev, int n);

}  // namespace tqroots
