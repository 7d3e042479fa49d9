#include "tqroots/precision.hpp"
#include "tqroots/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace tqroots {

namespace mp = boost::multiprecision;

unsigned digits10_for_bits(unsigned bits) {
    // Smallest d whose Boost bit conversion is >= bits.
    auto d = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
    while (d > 1 && mp::detail::digits10_2_2(d - 1) >= bits) --d;
    while (mp::detail::digits10_2_2(d) < bits) ++d;
    return d;
}

unsigned serialization_digits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 5;
}

WorkingPrecision::WorkingPrecision(unsigned bits)
    : bits_(bits), previous_digits_(mp::mpfr_float::default_precision()) {
    mp::mpfr_float::default_precision(digits10_for_bits(bits));
}

WorkingPrecision::~WorkingPrecision() { mp::mpfr_float::default_precision(previous_digits_); }

PrecisionConfig PrecisionConfig::for_bits(unsigned bits) {
    WorkingPrecision wp(bits);
    PrecisionConfig cfg;
    cfg.bits = bits;
    cfg.newton_tol = pow2(-static_cast<long>(bits / 2));
    cfg.classify_tol = pow2(-static_cast<long>(bits / 8));
    return cfg;
}

PrecisionConfig PrecisionConfig::homogeneous_default(int n) {
    return for_bits(static_cast<unsigned>(std::max(256, 16 * n)));
}

PrecisionConfig PrecisionConfig::automatic(int n) {
    return for_bits(static_cast<unsigned>(std::max(512, 16 * n)));
}

PrecisionConfig PrecisionConfig::escalated() const {
    auto next = static_cast<unsigned>(std::ceil(bits * escalation_factor));
    PrecisionConfig cfg = for_bits(std::max(next, bits + 1));
    cfg.max_iterations = max_iterations;
    cfg.escalation_factor = escalation_factor;
    return cfg;
}

void PrecisionConfig::validate() const {
    if (bits < 64) throw std::invalid_argument("precision bits must be >= 64");
    if (!(newton_tol > 0)) throw std::invalid_argument("newton_tol must be positive");
    if (!(classify_tol > 0)) throw std::invalid_argument("classify_tol must be positive");
    if (!(escalation_factor > 1.0)) throw std::invalid_argument("escalation_factor must exceed 1");
    if (max_iterations == 0) throw std::invalid_argument("max_iterations must be positive");
}

Real pow2(long e) { return mp::ldexp(Real(1), static_cast<int>(e)); }

Real at_working_precision(const Real& x) {
    Real y;
    mpfr_set(y.backend().data(), x.backend().data(), MPFR_RNDN);
    return y;
}

std::string to_decimal(const Real& x, unsigned bits) {
    WorkingPrecision wp(bits);
    return at_working_precision(x).str(static_cast<std::streamsize>(serialization_digits(bits)), std::ios_base::scientific);
}

Real parse_real(const std::string& s) { return Real(s); }

double log2_abs(const Real& x) {
    if (x == 0) return -1e300;
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x.backend().data(), MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

// complex.hpp

Complex& Complex::operator/=(const Complex& o) {
    // Smith's algorithm is unnecessary with MPFR's exponent range.
    Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}

Real abs(const Complex& z) { return mp::hypot(z.re, z.im); }

Complex sqrt(const Complex& z) {
    if (z.is_zero()) return {};
    Real m = abs(z);
    Real r = mp::sqrt((m + mp::abs(z.re)) / 2);
    if (z.re >= 0) return {r, z.im / (2 * r)};
    Real i = z.im < 0 ? Real(-r) : r;
    return {mp::abs(z.im) / (2 * r), i};
}

Complex ipow(Complex z, unsigned k) {
    Complex acc(1);
    while (k) {
        if (k & 1u) acc *= z;
        k >>= 1u;
        if (k) z *= z;
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << (z.im < 0 ? " - " : " + ") << mp::abs(z.im) << "i)";
}

}  // namespace tqroots
