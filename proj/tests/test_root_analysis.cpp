#include "tqroots/errors.hpp"
#include "tqroots/pipeline/sweep.hpp"
#include "tqroots/root_analysis.hpp"

#include <doctest.h>

#include <boost/multiprecision/mpfr.hpp>

using namespace tqroots;
namespace mp = boost::multiprecision;

namespace {

InhomogeneousSolution synthetic(int n, std::vector<Complex> roots) {
    InhomogeneousSolution s;
    s.n = n;
    s.roots = std::move(roots);
    s.residuals.assign(s.roots.size(), Real(0));
    s.precision_bits = 256;
    return s;
}

Complex c(const char* re, const char* im) { return Complex(Real(re), Real(im)); }

RootFamilyReport report_with(int n, int n_imag) {
    RootFamilyReport r;
    r.n = n;
    r.n_real = n / 2;
    r.n_imag = n_imag;
    r.n_arc = n - n / 2 - n_imag;
    return r;
}

}  // namespace

TEST_CASE("family split") {
    WorkingPrecision wp(256);
    const auto cfg = PrecisionConfig::for_bits(256);
    const auto sol = synthetic(8, {c("-0.7", "0"), c("0.7", "0"), c("-0.1", "0"), c("0.1", "0"), c("0", "0.5"),
                                   c("0", "-0.5"), c("0", "1.5"), c("0", "-1.5")});
    const RootFamilies f = split_families(sol, cfg.classify_tol);
    CHECK(f.real.size() == 4);
    CHECK(f.imaginary.size() == 4);
    CHECK(f.arc.empty());
    CHECK(f.labels[0] == RootFamily::real);
    CHECK(f.labels[4] == RootFamily::imaginary);
    CHECK(f.real.front().re < f.real.back().re);
    CHECK(f.imaginary.front().im < f.imaginary.back().im);
    CHECK(root_family_from_string(to_string(RootFamily::arc)) == RootFamily::arc);

    const auto arcs = synthetic(4, {c("1", "2"), c("-1", "2"), c("1", "-2"), c("-1", "-2")});
    CHECK(split_families(arcs, cfg.classify_tol).arc.size() == 4);
}

TEST_CASE("a root within a factor 10 of the tolerance is ambiguous") {
    WorkingPrecision wp(256);
    const auto cfg = PrecisionConfig::for_bits(256);
    const Complex near(Real("0.3"), cfg.classify_tol * 2);
    CHECK_THROWS_AS(split_families(synthetic(4, {near}), cfg.classify_tol), AmbiguousClassification);
    const Complex clear(Real("0.3"), cfg.classify_tol / 100);
    CHECK_NOTHROW(split_families(synthetic(4, {clear}), cfg.classify_tol));
}

TEST_CASE("structural anomalies are flagged, not thrown") {
    WorkingPrecision wp(256);
    const auto cfg = PrecisionConfig::for_bits(256);
    // Only one real root for n=4.
    const auto odd = synthetic(4, {c("0.3", "0"), c("0", "0.5"), c("0", "-0.5"), c("0", "2.5")});
    const RootFamilyReport r = classify(odd, cfg);
    CHECK(r.structural_anomaly);
    CHECK_FALSE(r.anomaly.empty());
}

TEST_CASE("string gap statistics") {
    WorkingPrecision wp(256);
    std::vector<Complex> string;
    for (int b = 0; b < 7; ++b) string.push_back(Complex(Real(0), Real(-3) + Real(b)));
    const StringStats s = string_structure(string);
    REQUIRE(s.gaps.size() == 6);
    for (const auto& g : s.gaps) CHECK(g == 1);
    REQUIRE(s.interior_deviation);
    CHECK(*s.interior_deviation == 0);
    CHECK(*s.end_deviation == 0);

    const StringStats pair = string_structure({Complex(Real(0), Real("0.5")), Complex(Real(0), Real("-0.5"))});
    CHECK_FALSE(pair.interior_deviation);
    CHECK_FALSE(pair.end_deviation);
    CHECK(string_structure({}).gaps.empty());
}

TEST_CASE("string ratio identities") {
    WorkingPrecision wp(256);
    const Complex one(Real(1));
    const Complex minus_i(Real(0), Real(-1));
    CHECK(abs(string_ratio(2, one) - minus_i) < pow2(-250));
    CHECK(abs(string_ratio_direct(2, one) - minus_i) < pow2(-250));
    CHECK(abs(string_ratio(1000000, Complex(Real("0.1"))) + Complex(1)) < Real("1e-5"));
    for (long ni : {1L, 2L, 7L, 50L}) CHECK(string_ratio(ni, Complex(0)) == Complex(-1));
    for (long ni = 1; ni <= 12; ++ni) {
        const Complex l(Real("0.37"), Real("0.21"));
        CHECK(abs(string_ratio(ni, l) - string_ratio_direct(ni, l)) < pow2(-240));
    }
}

TEST_CASE("real roots against the homogeneous roots") {
    WorkingPrecision wp(512);
    const auto rec4 = solve_chain(4, 512);
    CHECK(compare_real_to_homogeneous(rec4.homogeneous.roots, rec4.homogeneous) == 0);
    const Real d4 = compare_real_to_homogeneous(rec4.inhomogeneous, rec4.homogeneous,
                                                PrecisionConfig::for_bits(512).classify_tol);
    CHECK(d4 > Real("0.01"));
    CHECK(d4 < Real(1));
    CHECK(*rec4.report.max_real_deviation == d4);
    CHECK_THROWS_AS(compare_real_to_homogeneous(std::vector<Real>{Real(1)}, rec4.homogeneous), CountMismatch);
}

TEST_CASE("classification of pipeline runs") {
    SUBCASE("n=4") {
        const auto rec = solve_chain(4, 512);
        CHECK(rec.report.n_real == 2);
        CHECK(rec.report.n_imag == 2);
        CHECK(rec.report.n_arc == 0);
        CHECK_FALSE(rec.report.structural_anomaly);
        CHECK_FALSE(rec.report.probes.min_arc_modulus);
    }
    SUBCASE("n=44 reaches the upper bound") {
        const auto rec = solve_chain(44, 704);
        CHECK(rec.report.n_imag == 10);
        CHECK(rec.report.n_real == 22);
        CHECK(rec.report.n_arc % 4 == 0);
    }
}

TEST_CASE("n=128 string: interior gaps near 1, ends further off") {
    const auto rec = solve_chain(128, 2048);
    const StringStats& s = rec.report.string;
    REQUIRE(s.interior_deviation);
    CHECK(*s.interior_deviation < Real("0.05"));
    CHECK(*s.end_deviation > *s.interior_deviation);
}

TEST_CASE("bound checks") {
    std::vector<RootFamilyReport> good;
    for (auto [n, ni] : std::vector<std::pair<int, int>>{{4, 2}, {12, 2}, {20, 6}, {44, 10}})
        good.push_back(report_with(n, ni));
    CHECK(check_ni_bounds(good).ok());
    CHECK(check_ni_bounds(good).checked > 0);

    auto dropping = good;
    dropping.push_back(report_with(28, 4));  // N_I(28) < N_I(20)
    const BoundReport drop = check_ni_bounds(dropping);
    REQUIRE_FALSE(drop.ok());
    CHECK(drop.violations.front().n == 28);

    CHECK_FALSE(check_ni_bounds({report_with(64, 6)}).ok());   // below 64/8
    CHECK_FALSE(check_ni_bounds({report_with(16, 8)}).ok());   // above 16/8 + 9/2
    CHECK(check_ni_bounds({report_with(16, 6)}).ok());
}
