#pragma once

#include "tqroots/complex.hpp"
#include "tqroots/inhomogeneous_qsolver.hpp"

#include <optional>
#include <vector>

namespace tqroots {

/// The n roots u_i of the inhomogeneous Q polynomial, closed under negation
/// and (to classify_tol) conjugation, with +-i/2 always present.
struct InhomogeneousSolution {
    int n = 0;
    std::vector<Complex> roots;
    std::vector<Real> residuals;  // residuals[i] belongs to roots[i]
    unsigned precision_bits = 0;
    unsigned aberth_iterations = 0;

    Real max_residual() const;
};

/// Monomial coefficients c_0..c_K (ascending) of P(w) with Q~(z) = P(z^2).
/// Interpolates at the K grid nodes plus w = 0 and checks that the recovered
/// leading coefficient is 1 to 2^(-bits/4) (IllConditionedInterpolation
/// otherwise); the returned c_K is exactly 1.
std::vector<Real> even_coefficients(const QGridValues& g);

/// Horner evaluation of an ascending-coefficient polynomial.
Complex horner(const std::vector<Real>& coeffs, const Complex& x);

/// Roots of P(w) by Aberth-Ehrlich at working precision, each polished by
/// Newton on the barycentric Q~, mapped back to +-sqrt(w), completed with
/// +-i/2 and certified against the inhomogeneous Bethe equations.
InhomogeneousSolution find_roots(const QGridValues& g, const PrecisionConfig& cfg,
                                 const std::optional<InhomogeneousSolution>& warm_start = std::nullopt);

/// Relative defect of the inhomogeneous Bethe equation at root k,
///   (u-i/2)^n prod(u-u_j+i) - (u+i/2)^n prod(u-u_j-i) = -4i (u^2+1/4)^n,
/// divided by the largest of the three terms (0 if all vanish). The right
/// side carries the factor -i that follows from the inhomogeneous T-Q
/// equation at a zero of Q.
Real inhomo_bethe_residual(const std::vector<Complex>& roots, int n, int k);
Real inhomo_bethe_residual(const InhomogeneousSolution& sol, int k);

/// The same defect with a caller-chosen right-side phase (for comparing
/// conventions); `rhs_phase` multiplies 4(u^2+1/4)^n.
Real inhomo_bethe_residual_with_phase(const std::vector<Complex>& roots, int n, int k, const Complex& rhs_phase);

/// Expand prod_i (x - r_i) into ascending monomial coefficients.
std::vector<Complex> expand_from_roots(const std::vector<Complex>& roots);

}  // namespace tqroots
