#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace tqroots {

/// Arbitrary-precision real. Expression templates are disabled so that
/// `auto` and temporaries behave like ordinary values.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Decimal digits handed to MPFR so that the mantissa holds at least `bits`.
unsigned digits10_for_bits(unsigned bits);

/// Significant digits used when serializing a value computed at `bits`.
unsigned serialization_digits(unsigned bits);

/// RAII guard that sets the process-wide default MPFR precision.
///
/// Every Real created while the guard is alive (including temporaries of
/// arithmetic) carries the requested precision. Guards nest; the previous
/// setting is restored on destruction. The default precision is global state,
/// so concurrent solves at different precisions must not share a process.
class WorkingPrecision {
public:
    explicit WorkingPrecision(unsigned bits);
    ~WorkingPrecision();
    WorkingPrecision(const WorkingPrecision&) = delete;
    WorkingPrecision& operator=(const WorkingPrecision&) = delete;

    unsigned bits() const { return bits_; }

private:
    unsigned bits_;
    unsigned previous_digits_;
};

/// Precision and tolerance settings shared by every solver stage.
struct PrecisionConfig {
    unsigned bits = 512;
    Real newton_tol;
    unsigned max_iterations = 200;
    Real classify_tol;
    double escalation_factor = 2.0;

    /// Defaults derived from `bits`: newton_tol = 2^(-bits/2),
    /// classify_tol = 2^(-bits/8).
    static PrecisionConfig for_bits(unsigned bits);

    /// Homogeneous-solver default, max(256, 16 n) bits.
    static PrecisionConfig homogeneous_default(int n);

    /// Pipeline default ("auto"), max(512, 16 n) bits.
    static PrecisionConfig automatic(int n);

    /// Same tolerances policy at bits multiplied by escalation_factor.
    PrecisionConfig escalated() const;

    /// Throws std::invalid_argument unless bits >= 64, tolerances > 0 and
    /// escalation_factor > 1.
    void validate() const;
};

/// 2^e as a Real at the current working precision.
Real pow2(long e);

inline Real rmax(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real rmin(const Real& a, const Real& b) { return b < a ? b : a; }

/// x rounded to the current working precision. Copies of a Real keep the
/// source's precision, so values carried over from a more precise run must
/// pass through this to take part in a lower-precision solve.
Real at_working_precision(const Real& x);

/// Decimal scientific string with serialization_digits(bits) digits, taken
/// from x rounded to `bits` (parsing it back at `bits` recovers that value).
std::string to_decimal(const Real& x, unsigned bits);

/// Parse a decimal string at the current working precision.
Real parse_real(const std::string& s);

inline double to_double(const Real& x) { return x.convert_to<double>(); }

/// log2|x|, or a large negative number for x == 0.
double log2_abs(const Real& x);

}  // namespace tqroots
