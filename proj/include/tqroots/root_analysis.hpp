#pragma once

#include "tqroots/homogeneous_bethe.hpp"
#include "tqroots/root_finder.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tqroots {

enum class RootFamily { real, imaginary, arc };

std::string to_string(RootFamily f);
RootFamily root_family_from_string(const std::string& s);

/// Threefold family split of one inhomogeneous solution.
struct RootFamilies {
    std::vector<RootFamily> labels;  // parallel to InhomogeneousSolution::roots
    std::vector<Complex> real;       // ascending by real part
    std::vector<Complex> imaginary;  // ascending by imaginary part
    std::vector<Complex> arc;
};

struct StringStats {
    std::vector<Real> gaps;  // consecutive imaginary-part gaps, bottom to top
    std::optional<Real> interior_deviation;  // max |gap - 1| excluding one gap at each end
    std::optional<Real> end_deviation;       // max |gap - 1| over the two end gaps
};

struct LimitProbes {
    std::optional<Real> min_arc_modulus;
    std::optional<Real> min_arc_height;     // smallest |Im u| among arc roots
    std::optional<Complex> arc_ratio;       // q^C(l+i)/q^C(l)
    std::optional<Complex> string_ratio;    // q^I(l+i)/q^I(l), actual imaginary roots
    std::optional<Complex> inhomogeneous_term;  // 4(l^2+1/4)^n / (q^I(l) q^C(l))
};

struct RootFamilyReport {
    int n = 0;
    int n_real = 0;
    int n_imag = 0;
    int n_arc = 0;
    StringStats string;
    std::optional<Real> max_real_deviation;  // against the homogeneous roots
    LimitProbes probes;
    Complex ratio_probe;  // q^I(0.1+i)/q^I(0.1)
    bool structural_anomaly = false;
    std::string anomaly;
};

/// Label roots: real iff |Im| < tol; imaginary iff (|Re| < tol and |Im| >= tol)
/// or u = +-i/2; arc otherwise. Throws AmbiguousClassification when either
/// coordinate of a root lies within a factor 10 of tol.
RootFamilies split_families(const InhomogeneousSolution& sol, const Real& classify_tol);

/// Classification plus string and limit diagnostics. A real-family count
/// other than n/2, an arc count not divisible by 4, or a family count sum
/// other than n is flagged as a structural anomaly (not thrown).
RootFamilyReport classify(const InhomogeneousSolution& sol, const PrecisionConfig& cfg,
                          const HomogeneousSolution* hom = nullptr);

/// Gap statistics of an imaginary string. Fewer than two roots yields no gaps;
/// interior/end deviations need at least 3 gaps.
StringStats string_structure(std::vector<Complex> imaginary_roots);

/// max |u^r_j - lambda_j| pairing sorted real-family roots with the sorted
/// homogeneous roots. CountMismatch if the counts differ.
Real compare_real_to_homogeneous(const std::vector<Real>& real_roots, const HomogeneousSolution& hom);
Real compare_real_to_homogeneous(const InhomogeneousSolution& sol, const HomogeneousSolution& hom,
                                 const Real& classify_tol);

/// Ideal string lambda_b = -i n_i/2 + (b-1) i, b = 1..n_i: the ratio
/// q^I(l - i)/q^I(l) telescopes to (l - i n_i/2)/(l + i n_i/2).
Complex string_ratio(long n_i, const Complex& lambda);
/// The same ratio as an explicit product over the string sites.
Complex string_ratio_direct(long n_i, const Complex& lambda);

/// Limit diagnostics at the probe point lambda.
LimitProbes arc_and_limit_probes(const InhomogeneousSolution& sol, const RootFamilies& fam,
                                 const Complex& lambda);

struct NiViolation {
    int n = 0;
    std::string what;
};

struct BoundReport {
    std::vector<NiViolation> violations;
    int checked = 0;
    bool ok() const { return violations.empty(); }
};

/// n/8 <= N_I <= n/8 + 9/2 for n <= 300, and N_I(n+8) >= N_I(n).
BoundReport check_ni_bounds(const std::vector<RootFamilyReport>& sweep);

}  // namespace tqroots
