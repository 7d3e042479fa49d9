#include "tqroots/root_finder.hpp"

#include "tqroots/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tqroots {

namespace mp = boost::multiprecision;

Real InhomogeneousSolution::max_residual() const {
    Real worst(0);
    for (const auto& r : residuals) worst = rmax(worst, r);
    return worst;
}

std::vector<Real> even_coefficients(const QGridValues& g) {
    WorkingPrecision wp(g.precision_bits);
    ReducedQ rq(g);
    const auto& nodes = rq.nodes().nodes;
    const std::size_t k_max = nodes.size();

    std::vector<Real> x;
    std::vector<Real> dd;
    x.reserve(k_max + 1);
    dd.reserve(k_max + 1);
    x.push_back(Real(0));
    dd.push_back(rq.p(Real(0)));
    for (std::size_t k = 0; k < k_max; ++k) {
        x.push_back(nodes[k]);
        dd.push_back(g.values[k]);
    }
    // Newton divided differences in place: dd[i] = f[x_0..x_i].
    for (std::size_t level = 1; level <= k_max; ++level)
        for (std::size_t i = k_max; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - level]);

    const Real lead_error = mp::abs(dd[k_max] - 1);
    if (lead_error > pow2(-static_cast<long>(g.precision_bits / 4)))
        throw IllConditionedInterpolation("recovered leading coefficient deviates from 1 by " +
                                          lead_error.str(6, std::ios_base::scientific));
    dd[k_max] = 1;

    // Newton form -> monomial, ascending.
    std::vector<Real> coeffs{dd[k_max]};
    for (std::size_t i = k_max; i-- > 0;) {
        std::vector<Real> next(coeffs.size() + 1, Real(0));
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            next[j + 1] += coeffs[j];
            next[j] -= coeffs[j] * x[i];
        }
        next[0] += dd[i];
        coeffs = std::move(next);
    }
    coeffs.back() = 1;
    return coeffs;
}

Complex horner(const std::vector<Real>& coeffs, const Complex& x) {
    Complex acc;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + Complex(coeffs[i]);
    return acc;
}

namespace {

// p/p' by simultaneous Horner.
Complex horner_ratio(const std::vector<Real>& coeffs, const Complex& x) {
    Complex p;
    Complex dp;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        dp = dp * x + p;
        p = p * x + Complex(coeffs[i]);
    }
    if (dp.is_zero()) return p;
    return p / dp;
}

std::vector<Complex> circle_guesses(const std::vector<Real>& coeffs) {
    const std::size_t k_max = coeffs.size() - 1;
    double radius = 0;
    for (std::size_t j = 1; j <= k_max; ++j) {
        double mag = log2_abs(coeffs[k_max - j]);
        if (mag < -1e200) continue;
        radius = std::max(radius, std::exp2(mag / static_cast<double>(j)));
    }
    radius = std::max(radius, 1.0);
    std::vector<Complex> w;
    const double two_pi = 6.283185307179586;
    for (std::size_t j = 0; j < k_max; ++j) {
        double angle = two_pi * static_cast<double>(j) / static_cast<double>(k_max) + 0.4;
        w.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
    }
    return w;
}

// Images w = u^2 of one member of each +-u pair of a smaller solution, with
// off-band roots stretched by (n/n_prev)^2; missing slots go on an outer ring.
std::vector<Complex> warm_guesses(const InhomogeneousSolution& prev, int n, std::size_t k_max) {
    const Real quarter(0.25);
    std::vector<Complex> w;
    const double stretch = std::pow(static_cast<double>(n) / prev.n, 2.0);
    double outer = 1.0;
    for (const auto& stored : prev.roots) {
        const Complex u(at_working_precision(stored.re), at_working_precision(stored.im));
        bool representative = u.re > 0 || (u.re == 0 && u.im > 0) ||
                              (mp::abs(u.re) < mp::abs(u.im) * Real(1e-30) && u.im > 0);
        if (!representative) continue;
        Complex sq = u * u;
        if (abs(sq + Complex(quarter)) < Real(1e-12)) continue;  // the fixed +-i/2 pair
        double mag = to_double(abs(sq));
        if (mag > 4.0) sq *= Real(stretch);
        outer = std::max(outer, to_double(abs(sq)));
        w.push_back(std::move(sq));
    }
    if (w.size() > k_max) w.resize(k_max);
    const double two_pi = 6.283185307179586;
    for (std::size_t j = 0; w.size() < k_max; ++j) {
        double angle = two_pi * static_cast<double>(j) / 7.0 + 0.4;
        w.emplace_back(1.1 * outer * std::cos(angle), 1.1 * outer * std::sin(angle));
    }
    // Leave the real axis and break conjugate symmetry so simultaneous
    // iteration can split pairs.
    for (std::size_t j = 0; j < w.size(); ++j) {
        double rot = 1e-3 * static_cast<double>(j + 1) / static_cast<double>(w.size());
        w[j] *= Complex(std::cos(rot), std::sin(rot));
        w[j] += Complex(0.0, 1e-4 * static_cast<double>(j + 1));
    }
    return w;
}

unsigned aberth(const std::vector<Real>& coeffs, std::vector<Complex>& w, const Real& tol, unsigned max_iter) {
    const std::size_t k_max = w.size();
    for (unsigned it = 1; it <= max_iter; ++it) {
        std::vector<Complex> corr(k_max);
        Real worst(0);
        for (std::size_t i = 0; i < k_max; ++i) {
            Complex ratio = horner_ratio(coeffs, w[i]);
            Complex sum;
            for (std::size_t j = 0; j < k_max; ++j)
                if (j != i) sum += Complex(1) / (w[i] - w[j]);
            corr[i] = ratio / (Complex(1) - ratio * sum);
            worst = rmax(worst, Real(abs(corr[i]) / rmax(Real(1), abs(w[i]))));
        }
        for (std::size_t i = 0; i < k_max; ++i) w[i] -= corr[i];
        if (worst < tol) return it;
    }
    return 0;
}

Complex polish(const ReducedQ& rq, Complex w, unsigned bits, unsigned max_iter) {
    const Real tol = pow2(-static_cast<long>(bits) + 8);
    for (unsigned it = 0; it < max_iter; ++it) {
        Complex step = rq.newton_step(w);
        w -= step;
        if (abs(step) <= tol * rmax(Real(1), abs(w))) break;
    }
    return w;
}

bool lex_less(const Complex& a, const Complex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

}  // namespace

InhomogeneousSolution find_roots(const QGridValues& g, const PrecisionConfig& cfg,
                                 const std::optional<InhomogeneousSolution>& warm_start) {
    cfg.validate();
    WorkingPrecision wp(cfg.bits);
    const int n = g.n;
    std::vector<Real> coeffs = even_coefficients(g);
    const std::size_t k_max = coeffs.size() - 1;

    std::vector<Complex> w;
    if (warm_start && warm_start->n > 0 && warm_start->n < n)
        w = warm_guesses(*warm_start, n, k_max);
    else
        w = circle_guesses(coeffs);

    const Real tol = pow2(-static_cast<long>(cfg.bits / 2));
    const unsigned limit = std::max(cfg.max_iterations * 10, static_cast<unsigned>(50 * k_max));
    unsigned iterations = aberth(coeffs, w, tol, limit);
    if (iterations == 0)
        throw NonConvergence("Aberth-Ehrlich iteration did not converge for n=" + std::to_string(n));

    ReducedQ rq(g);
    for (auto& x : w) x = polish(rq, x, cfg.bits, cfg.max_iterations);

    for (std::size_t i = 0; i < k_max; ++i) {
        if (abs(w[i] + Complex(Real(0.25))) < cfg.classify_tol)
            throw MultiplicityCollision("a reduced root coincides with the fixed pair +-i/2");
        for (std::size_t j = i + 1; j < k_max; ++j)
            if (abs(w[i] - w[j]) < cfg.classify_tol * rmax(Real(1), abs(w[i])))
                throw MultiplicityCollision("reduced roots " + std::to_string(i) + " and " + std::to_string(j) +
                                            " coincide for n=" + std::to_string(n));
    }

    InhomogeneousSolution sol;
    sol.n = n;
    sol.precision_bits = cfg.bits;
    sol.aberth_iterations = iterations;
    for (const auto& x : w) {
        Complex z = sqrt(x);
        sol.roots.push_back(z);
        sol.roots.push_back(-z);
    }
    sol.roots.emplace_back(Real(0), Real(0.5));
    sol.roots.emplace_back(Real(0), Real(-0.5));
    std::sort(sol.roots.begin(), sol.roots.end(), lex_less);

    const Real threshold = pow2(-static_cast<long>(cfg.bits / 8));
    sol.residuals.reserve(sol.roots.size());
    for (int k = 0; k < n; ++k) {
        sol.residuals.push_back(inhomo_bethe_residual(sol.roots, n, k));
        if (!(sol.residuals.back() < threshold))
            throw RootCertificationFailure("root " + std::to_string(k) + " fails certification for n=" +
                                           std::to_string(n) + " at " + std::to_string(cfg.bits) + " bits");
    }
    return sol;
}

Real inhomo_bethe_residual_with_phase(const std::vector<Complex>& roots, int n, int k, const Complex& rhs_phase) {
    const Complex half_i(Real(0), Real(0.5));
    const Complex one_i(Real(0), Real(1));
    const Complex& u = roots[k];
    const auto un = static_cast<unsigned>(n);
    Complex plus = ipow(u - half_i, un);
    Complex minus = ipow(u + half_i, un);
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (static_cast<int>(j) == k) continue;
        Complex d = u - roots[j];
        plus *= d + one_i;
        minus *= d - one_i;
    }
    Complex rhs = rhs_phase * (Real(4) * ipow(u * u + Complex(Real(0.25)), un));
    Real scale = rmax(rmax(abs(plus), abs(minus)), abs(rhs));
    if (scale == 0) return Real(0);
    return abs(plus - minus - rhs) / scale;
}

Real inhomo_bethe_residual(const std::vector<Complex>& roots, int n, int k) {
    return inhomo_bethe_residual_with_phase(roots, n, k, Complex(Real(0), Real(-1)));
}

Real inhomo_bethe_residual(const InhomogeneousSolution& sol, int k) {
    WorkingPrecision wp(sol.precision_bits);
    return inhomo_bethe_residual(sol.roots, sol.n, k);
}

std::vector<Complex> expand_from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex(1)};
    for (const auto& r : roots) {
        std::vector<Complex> next(c.size() + 1);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= c[j] * r;
        }
        c = std::move(next);
    }
    return c;
}

}  // namespace tqroots
