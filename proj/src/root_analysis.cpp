#include "tqroots/root_analysis.hpp"

#include "tqroots/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tqroots {

namespace mp = boost::multiprecision;

std::string to_string(RootFamily f) {
    switch (f) {
        case RootFamily::real: return "real";
        case RootFamily::imaginary: return "imaginary";
        case RootFamily::arc: return "arc";
    }
    return "?";
}

RootFamily root_family_from_string(const std::string& s) {
    if (s == "real") return RootFamily::real;
    if (s == "imaginary") return RootFamily::imaginary;
    if (s == "arc") return RootFamily::arc;
    throw std::invalid_argument("unknown root family: " + s);
}

namespace {

bool ambiguous(const Real& x, const Real& tol) {
    Real a = mp::abs(x);
    return a >= tol / 10 && a <= tol * 10;
}

bool is_fixed_root(const Complex& u) { return u.re == 0 && mp::abs(u.im) == Real(0.5); }

Complex product_ratio(const std::vector<Complex>& roots, const Complex& lambda, const Complex& shift) {
    Complex num(1);
    Complex den(1);
    for (const auto& r : roots) {
        num *= lambda + shift - r;
        den *= lambda - r;
    }
    return num / den;
}

Complex product(const std::vector<Complex>& roots, const Complex& lambda) {
    Complex acc(1);
    for (const auto& r : roots) acc *= lambda - r;
    return acc;
}

}  // namespace

RootFamilies split_families(const InhomogeneousSolution& sol, const Real& classify_tol) {
    WorkingPrecision wp(sol.precision_bits);
    RootFamilies fam;
    fam.labels.reserve(sol.roots.size());
    for (const auto& u : sol.roots) {
        if (!is_fixed_root(u) && (ambiguous(u.re, classify_tol) || ambiguous(u.im, classify_tol)))
            throw AmbiguousClassification("root within a factor 10 of classify_tol for n=" + std::to_string(sol.n));
        RootFamily f;
        if (is_fixed_root(u))
            f = RootFamily::imaginary;
        else if (mp::abs(u.im) < classify_tol)
            f = RootFamily::real;
        else if (mp::abs(u.re) < classify_tol)
            f = RootFamily::imaginary;
        else
            f = RootFamily::arc;
        fam.labels.push_back(f);
        switch (f) {
            case RootFamily::real: fam.real.push_back(u); break;
            case RootFamily::imaginary: fam.imaginary.push_back(u); break;
            case RootFamily::arc: fam.arc.push_back(u); break;
        }
    }
    std::sort(fam.real.begin(), fam.real.end(), [](const Complex& a, const Complex& b) { return a.re < b.re; });
    std::sort(fam.imaginary.begin(), fam.imaginary.end(),
              [](const Complex& a, const Complex& b) { return a.im < b.im; });
    return fam;
}

StringStats string_structure(std::vector<Complex> imaginary_roots) {
    StringStats st;
    std::sort(imaginary_roots.begin(), imaginary_roots.end(),
              [](const Complex& a, const Complex& b) { return a.im < b.im; });
    for (std::size_t i = 1; i < imaginary_roots.size(); ++i)
        st.gaps.push_back(imaginary_roots[i].im - imaginary_roots[i - 1].im);
    if (st.gaps.size() >= 3) {
        Real interior(0);
        for (std::size_t i = 1; i + 1 < st.gaps.size(); ++i) interior = rmax(interior, Real(mp::abs(st.gaps[i] - 1)));
        st.interior_deviation = interior;
        st.end_deviation = rmax(Real(mp::abs(st.gaps.front() - 1)), Real(mp::abs(st.gaps.back() - 1)));
    }
    return st;
}

Real compare_real_to_homogeneous(const std::vector<Real>& real_roots, const HomogeneousSolution& hom) {
    if (static_cast<int>(real_roots.size()) != hom.m)
        throw CountMismatch("real-family count " + std::to_string(real_roots.size()) + " differs from homogeneous m=" +
                            std::to_string(hom.m));
    std::vector<Real> a = real_roots;
    std::vector<Real> b = hom.roots;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    Real worst(0);
    for (std::size_t j = 0; j < a.size(); ++j) worst = rmax(worst, Real(mp::abs(a[j] - b[j])));
    return worst;
}

Real compare_real_to_homogeneous(const InhomogeneousSolution& sol, const HomogeneousSolution& hom,
                                 const Real& classify_tol) {
    RootFamilies fam = split_families(sol, classify_tol);
    std::vector<Real> re;
    for (const auto& u : fam.real) re.push_back(u.re);
    return compare_real_to_homogeneous(re, hom);
}

Complex string_ratio(long n_i, const Complex& lambda) {
    const Complex half_len(Real(0), Real(n_i) / 2);
    return (lambda - half_len) / (lambda + half_len);
}

Complex string_ratio_direct(long n_i, const Complex& lambda) {
    std::vector<Complex> sites;
    sites.reserve(static_cast<std::size_t>(n_i));
    for (long b = 1; b <= n_i; ++b) sites.emplace_back(Real(0), -Real(n_i) / 2 + (b - 1));
    return product_ratio(sites, lambda, Complex(Real(0), Real(-1)));
}

LimitProbes arc_and_limit_probes(const InhomogeneousSolution& sol, const RootFamilies& fam, const Complex& lambda) {
    WorkingPrecision wp(sol.precision_bits);
    LimitProbes p;
    const Complex shift(Real(0), Real(1));
    if (!fam.arc.empty()) {
        Real mod = abs(fam.arc.front());
        Real height = mp::abs(fam.arc.front().im);
        for (const auto& u : fam.arc) {
            mod = rmin(mod, abs(u));
            height = rmin(height, Real(mp::abs(u.im)));
        }
        p.min_arc_modulus = mod;
        p.min_arc_height = height;
        p.arc_ratio = product_ratio(fam.arc, lambda, shift);
    }
    if (!fam.imaginary.empty()) p.string_ratio = product_ratio(fam.imaginary, lambda, shift);
    Complex denom = product(fam.imaginary, lambda) * product(fam.arc, lambda);
    if (!denom.is_zero())
        p.inhomogeneous_term =
            Real(4) * ipow(lambda * lambda + Complex(Real(0.25)), static_cast<unsigned>(sol.n)) / denom;
    return p;
}

RootFamilyReport classify(const InhomogeneousSolution& sol, const PrecisionConfig& cfg, const HomogeneousSolution* hom) {
    WorkingPrecision wp(sol.precision_bits);
    RootFamilies fam = split_families(sol, cfg.classify_tol);
    RootFamilyReport rep;
    rep.n = sol.n;
    rep.n_real = static_cast<int>(fam.real.size());
    rep.n_imag = static_cast<int>(fam.imaginary.size());
    rep.n_arc = static_cast<int>(fam.arc.size());
    rep.string = string_structure(fam.imaginary);

    const Complex probe(Real("0.1"));
    rep.probes = arc_and_limit_probes(sol, fam, probe);
    if (rep.probes.string_ratio) rep.ratio_probe = *rep.probes.string_ratio;

    std::vector<std::string> problems;
    if (rep.n_real + rep.n_imag + rep.n_arc != sol.n) problems.emplace_back("family counts do not sum to n");
    if (rep.n_real != sol.n / 2) problems.push_back("n_real=" + std::to_string(rep.n_real) + " differs from n/2");
    if (rep.n_arc % 4 != 0) problems.push_back("n_arc=" + std::to_string(rep.n_arc) + " not divisible by 4");
    if (hom && rep.n_real == hom->m) {
        std::vector<Real> re;
        for (const auto& u : fam.real) re.push_back(u.re);
        rep.max_real_deviation = compare_real_to_homogeneous(re, *hom);
    }
    if (!problems.empty()) {
        rep.structural_anomaly = true;
        for (const auto& s : problems) rep.anomaly += (rep.anomaly.empty() ? "" : "; ") + s;
    }
    return rep;
}

BoundReport check_ni_bounds(const std::vector<RootFamilyReport>& sweep) {
    BoundReport out;
    std::map<int, int> by_n;
    for (const auto& r : sweep) {
        by_n[r.n] = r.n_imag;
        if (r.n > 300) continue;
        ++out.checked;
        // n/8 <= N_I <= n/8 + 9/2, compared in units of 1/8 to stay exact
        const int ni8 = 8 * r.n_imag;
        if (ni8 < r.n) out.violations.push_back({r.n, "N_I below n/8"});
        if (ni8 > r.n + 36) out.violations.push_back({r.n, "N_I above n/8 + 9/2"});
    }
    for (const auto& [n, ni] : by_n) {
        auto next = by_n.find(n + 8);
        if (next != by_n.end() && next->second < ni)
            out.violations.push_back({n + 8, "N_I decreased relative to n=" + std::to_string(n)});
    }
    return out;
}

}  // namespace tqroots
