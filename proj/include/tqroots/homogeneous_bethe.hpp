#pragma once

#include "tqroots/complex.hpp"
#include "tqroots/precision.hpp"

#include <optional>
#include <vector>

namespace tqroots {

/// Ground-state solution of the homogeneous XXX Bethe equations for a chain
/// of length n (a multiple of 4): m = n/2 real roots, symmetric under
/// lambda -> -lambda, stored in ascending order.
///
/// quantum_numbers follow J_j = 2(j - 1 - n) for j = 1..m. J_1 selects the
/// largest root, so quantum_numbers[j] belongs to roots[m - 1 - j].
struct HomogeneousSolution {
    int n = 0;
    int m = 0;
    std::vector<Real> roots;
    std::vector<long> quantum_numbers;
    Real max_residual;
    unsigned precision_bits = 0;
    unsigned iterations = 0;

    /// The n/4 positive roots, ascending.
    std::vector<Real> positive_roots() const;
};

/// Throws InvalidChainLength unless n is a positive multiple of 4.
void require_multiple_of_four(int n);

/// J_j = 2(j - 1 - n), j = 1..n/2.
std::vector<long> ground_state_quantum_numbers(int n);

/// Solve the real-arctangent form of the logarithmic Bethe equations for the
/// ground state by Newton-Raphson on the n/4 positive roots. Negative roots
/// are exact mirrors.
///
/// A warm start from a smaller chain is remapped by interpolating its roots
/// in the arctan(2 lambda) variable over the normalized root index.
HomogeneousSolution solve_ground_state(int n, const PrecisionConfig& cfg,
                                       const std::optional<HomogeneousSolution>& warm_start = std::nullopt);

/// Relative defect of the product-form Bethe equation at root k (0-based):
/// (LHS - RHS) / (|LHS| + |RHS|).
Complex bethe_residual(const HomogeneousSolution& sol, int k);

/// Same defect for an explicit root list.
Complex bethe_residual(const std::vector<Real>& roots, int n, int k);

/// max_k |bethe_residual|; zero for the empty (no-magnon) root set, which
/// has no equations to violate.
Real max_bethe_residual(const std::vector<Real>& roots, int n);

}  // namespace tqroots
