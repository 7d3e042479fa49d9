#pragma once

#include "tqroots/complex.hpp"
#include "tqroots/transfer_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tqroots {

// The inhomogeneous Q(z) of degree n factors as (z^2 + 1/4) Q~(z) with Q~ even
// and monic of degree n - 2. Q~ is represented by its real values
//   v_k = Q~((2k+1) i / 2),  k = 1..K,  K = n/2 - 1,
// which solve a tridiagonal band plus one dense closing row (the reduced T-Q
// equation at lambda = 0). In the variable w = z^2 the nodes are the real
// points W_k = -(2k+1)^2 / 4 and Q~(z) = P(w) with P monic of degree K.

enum class SolveMethod { shooting, dense_lu };

std::string to_string(SolveMethod m);
SolveMethod solve_method_from_string(const std::string& s);

/// Row k (1-based, k = 1..K-1) of the band:
///   diag v_k + sub v_{k-1} + super v_{k+1} = rhs.
/// Row 1 is the bidiagonal first row (sub = 0).
struct BandRow {
    Real sub;
    Real diag;
    Real super;
    Real rhs;
};

struct QLinearSystem {
    int n = 0;
    unsigned precision_bits = 0;
    std::vector<BandRow> band;      // K - 1 rows
    std::vector<Real> closing;      // K coefficients of the dense row
    Real closing_rhs;               // sum closing[j] v_j = closing_rhs
    Real closing_constant;          // the row's constant term before moving it: t(0)2^n L(0) - 6 L(-1) - 2^(4-n)

    int unknowns() const { return n / 2 - 1; }
};

struct QGridValues {
    int n = 0;
    std::vector<Real> values;  // values[k-1] = Q~((2k+1)i/2)
    unsigned precision_bits = 0;
    SolveMethod solve_method = SolveMethod::shooting;
    Real closure_residual;      // relative defect of the closing row
    Real max_band_residual;     // relative defect over the band rows
};

/// Barycentric data for the reduced nodes: W_k and 1 / prod_{m != k}(W_k - W_m).
struct ReducedNodes {
    std::vector<Real> nodes;
    std::vector<Real> weights;

    explicit ReducedNodes(int n);
    /// L(w) = prod_k (w - W_k).
    Real ell(const Real& w) const;
    Complex ell(const Complex& w) const;
};

/// Assemble the band and the dense closing row. Requires n a multiple of 4;
/// for n = 4 the band is empty and the closing row alone fixes v_1.
QLinearSystem build_system(const TransferGrid& tg, int n);

/// Solve by shooting (every unknown affine in v_1, then the closing row). In
/// dense_lu mode a full LU solve is also done and must agree with shooting to
/// relative 2^(-bits/4) per component; the LU values are returned.
QGridValues solve_grid(const QLinearSystem& sys, const PrecisionConfig& cfg,
                       SolveMethod method = SolveMethod::shooting);

/// Relative defects of a candidate solution against each row of the system.
Real band_residual(const QLinearSystem& sys, const std::vector<Real>& v);
Real closing_residual(const QLinearSystem& sys, const std::vector<Real>& v);

/// Evaluator for Q~ and Q from grid values through the barycentric form
///   Q~(z) = L(w) [1 + sum_k v_k w_k / (w - W_k)],  w = z^2.
class ReducedQ {
public:
    explicit ReducedQ(QGridValues grid);

    const QGridValues& grid() const { return grid_; }
    const ReducedNodes& nodes() const { return nodes_; }
    int n() const { return grid_.n; }

    /// P(w) = Q~(sqrt(w)).
    Complex p(const Complex& w) const;
    Real p(const Real& w) const;
    /// Newton correction P(w)/P'(w), evaluated without forming P'.
    Complex newton_step(const Complex& w) const;

    Complex qtilde(const Complex& z) const;
    Complex q(const Complex& z) const;

private:
    QGridValues grid_;
    ReducedNodes nodes_;
    std::vector<Real> c_;  // v_k * weight_k
};

Complex qtilde_eval(const QGridValues& g, const Complex& z);
Complex q_eval_inhomo(const QGridValues& g, const Complex& z);

/// |t Q + (l+i/2)^n Q(l-i) + (l-i/2)^n Q(l+i) - 4(l^2+1/4)^n| divided by the
/// largest of the four terms; 0 when every term vanishes.
Real tq_residual(const ReducedQ& rq, const TransferEvaluator& ev, const Complex& lambda);
Real tq_residual(const QGridValues& g, const TransferEvaluator& ev, const Complex& lambda);

}  // namespace tqroots
