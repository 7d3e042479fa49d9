#include "tqroots/transfer_matrix.hpp"

#include "tqroots/errors.hpp"

#include <stdexcept>
#include <string>

namespace tqroots {

namespace mp = boost::multiprecision;

TransferEvaluator::TransferEvaluator(HomogeneousSolution source) : source_(std::move(source)) {}

Complex TransferEvaluator::q(const Complex& z) const {
    WorkingPrecision wp(source_.precision_bits);
    Complex acc(1);
    for (const auto& r : source_.roots) acc *= z - Complex(r);
    return acc;
}

Complex TransferEvaluator::t(const Complex& z) const {
    WorkingPrecision wp(source_.precision_bits);
    const Complex half_i(Real(0), Real(0.5));
    const Complex one_i(Real(0), Real(1));
    const auto n = static_cast<unsigned>(source_.n);
    Complex a = ipow(z + half_i, n) * q(z - one_i);
    Complex b = ipow(z - half_i, n) * q(z + one_i);
    // Near a root both numerator and q vanish and the quotient keeps only
    // the digits left after that cancellation.
    const Real guard = (1 + abs(z)) * pow2(-static_cast<long>(source_.precision_bits) / 2);
    for (const auto& r : source_.roots)
        if (abs(z - Complex(r)) < guard) throw NearRootDivision("t(z) evaluated too close to a Bethe root");
    Complex qz = q(z);
    return (a + b) / qz;
}

Real TransferEvaluator::t_imag_axis(const Real& y) const {
    Complex v = t(Complex(Real(0), y));
    Real bound = rmax(Real(1), Real(mp::abs(v.re))) * pow2(-static_cast<long>(source_.precision_bits) + 20);
    if (mp::abs(v.im) > bound)
        throw SymmetryViolation("t on the imaginary axis has a non-vanishing imaginary part");
    return v.re;
}

TransferGrid t_grid(const TransferEvaluator& ev, int n) {
    if (n != ev.n()) throw std::invalid_argument("t_grid: n does not match the evaluator");
    WorkingPrecision wp(ev.precision_bits());
    TransferGrid g;
    g.n = n;
    g.precision_bits = ev.precision_bits();
    for (int k = 1; k <= n / 2 - 2; ++k) g.band.push_back(ev.t_imag_axis(Real(2 * k + 1) / 2));
    g.at_zero = ev.t_imag_axis(Real(0));
    return g;
}

}  // namespace tqroots
