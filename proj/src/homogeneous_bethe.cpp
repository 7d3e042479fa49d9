#include "tqroots/homogeneous_bethe.hpp"

#include "tqroots/dense_lu.hpp"
#include "tqroots/errors.hpp"

#include <algorithm>
#include <string>

namespace tqroots {

namespace mp = boost::multiprecision;

namespace {

// Positive roots are indexed j = 1..h with x_1 the largest. The equation for
// x_j is
//   2n atan(2 x_j) = (m - 2j + 1) pi + 2 sum_{k != j} atan(x_j - x_k)
//                                    + 2 sum_k atan(x_j + x_k)
// where the second sum runs over the mirrored negative roots.
struct LogBetheSystem {
    int n;
    int m;
    int h;
    Real pi;

    std::vector<Real> residual(const std::vector<Real>& x) const {
        std::vector<Real> f(h);
        for (int j = 0; j < h; ++j) {
            Real s = 2 * n * mp::atan(2 * x[j]) - (m - 2 * (j + 1) + 1) * pi;
            for (int k = 0; k < h; ++k) {
                if (k != j) s -= 2 * mp::atan(x[j] - x[k]);
                s -= 2 * mp::atan(x[j] + x[k]);
            }
            f[j] = std::move(s);
        }
        return f;
    }

    DenseMatrix jacobian(const std::vector<Real>& x) const {
        DenseMatrix jac(h);
        for (int j = 0; j < h; ++j) {
            Real diag = 4 * n / (1 + 4 * x[j] * x[j]) - 4 / (1 + 4 * x[j] * x[j]);
            for (int k = 0; k < h; ++k) {
                if (k == j) continue;
                Real dm = x[j] - x[k];
                Real dp = x[j] + x[k];
                Real gm = 2 / (1 + dm * dm);
                Real gp = 2 / (1 + dp * dp);
                diag -= gm + gp;
                jac(j, k) = gm - gp;
            }
            jac(j, j) = std::move(diag);
        }
        return jac;
    }
};

Real max_abs(const std::vector<Real>& v) {
    Real r(0);
    for (const auto& x : v) r = rmax(r, Real(mp::abs(x)));
    return r;
}

// Interpolate a smaller chain's positive roots onto h new slots in the
// theta = atan(2x) variable, using normalized positions (j - 1/2)/h.
std::vector<Real> remap_warm_start(const HomogeneousSolution& prev, int h) {
    std::vector<Real> old = prev.positive_roots();
    for (auto& r : old) r = at_working_precision(r);
    std::reverse(old.begin(), old.end());  // largest first, matching slot order
    const int ho = static_cast<int>(old.size());
    std::vector<Real> theta(ho);
    for (int i = 0; i < ho; ++i) theta[i] = mp::atan(2 * old[i]);

    std::vector<Real> x(h);
    for (int j = 0; j < h; ++j) {
        // position in old index space (0-based, fractional)
        Real pos = (Real(j) + Real(0.5)) * ho / h - Real(0.5);
        Real th;
        if (ho == 1) {
            th = theta[0];
        } else {
            int lo = static_cast<int>(mp::floor(pos).convert_to<long>());
            lo = std::clamp(lo, 0, ho - 2);
            Real frac = pos - lo;
            th = theta[lo] + frac * (theta[lo + 1] - theta[lo]);
        }
        Real pi = mp::atan(Real(1)) * 4;
        th = rmax(Real(1e-6), rmin(th, pi / 2 - Real(1e-6)));
        x[j] = mp::tan(th) / 2;
    }
    return x;
}

}  // namespace

std::vector<Real> HomogeneousSolution::positive_roots() const {
    return {roots.begin() + m / 2, roots.end()};
}

void require_multiple_of_four(int n) {
    if (n <= 0 || n % 4 != 0)
        throw InvalidChainLength("chain length must be a positive multiple of 4, got " + std::to_string(n));
}

std::vector<long> ground_state_quantum_numbers(int n) {
    require_multiple_of_four(n);
    std::vector<long> j_numbers;
    for (int j = 1; j <= n / 2; ++j) j_numbers.push_back(2L * (j - 1 - n));
    return j_numbers;
}

HomogeneousSolution solve_ground_state(int n, const PrecisionConfig& cfg,
                                       const std::optional<HomogeneousSolution>& warm_start) {
    require_multiple_of_four(n);
    cfg.validate();
    WorkingPrecision wp(cfg.bits);

    const int m = n / 2;
    const int h = n / 4;
    LogBetheSystem sys{n, m, h, mp::atan(Real(1)) * 4};

    std::vector<Real> x(h);
    if (warm_start && warm_start->n < n && warm_start->n > 0) {
        x = remap_warm_start(*warm_start, h);
    } else {
        // Non-interacting phases for the same quantum numbers.
        for (int j = 1; j <= h; ++j) x[j - 1] = mp::tan(sys.pi * (m - 2 * j + 1) / (2 * n)) / 2;
    }

    std::vector<Real> f = sys.residual(x);
    Real fnorm = max_abs(f);
    unsigned it = 0;
    bool converged = false;
    for (; it < cfg.max_iterations; ++it) {
        std::vector<Real> neg_f(h);
        for (int j = 0; j < h; ++j) neg_f[j] = -f[j];
        std::vector<Real> dx = lu_solve(sys.jacobian(x), neg_f);

        Real scale(1);
        std::vector<Real> trial(h);
        std::vector<Real> ftrial;
        Real tnorm;
        for (int halving = 0; halving <= 10; ++halving) {
            for (int j = 0; j < h; ++j) trial[j] = x[j] + scale * dx[j];
            ftrial = sys.residual(trial);
            tnorm = max_abs(ftrial);
            if (tnorm <= fnorm) break;
            scale /= 2;
        }
        Real step = max_abs(dx) * scale;
        x = std::move(trial);
        f = std::move(ftrial);
        fnorm = tnorm;
        if (step < cfg.newton_tol) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged)
        throw NonConvergence("homogeneous Newton did not converge for n=" + std::to_string(n) + " in " +
                             std::to_string(cfg.max_iterations) + " iterations");

    std::sort(x.begin(), x.end());
    for (int j = 0; j < h; ++j) {
        if (x[j] < cfg.newton_tol || (j > 0 && x[j] - x[j - 1] < cfg.newton_tol))
            throw DegenerateRoots("homogeneous roots collide for n=" + std::to_string(n));
    }

    HomogeneousSolution sol;
    sol.n = n;
    sol.m = m;
    sol.precision_bits = cfg.bits;
    sol.iterations = it;
    sol.quantum_numbers = ground_state_quantum_numbers(n);
    sol.roots.reserve(m);
    for (int j = h - 1; j >= 0; --j) sol.roots.push_back(-x[j]);
    for (int j = 0; j < h; ++j) sol.roots.push_back(x[j]);
    sol.max_residual = max_bethe_residual(sol.roots, n);
    if (!(sol.max_residual < cfg.newton_tol))
        throw NonConvergence("homogeneous residual above newton_tol for n=" + std::to_string(n));
    return sol;
}

Complex bethe_residual(const std::vector<Real>& roots, int n, int k) {
    const Complex half_i(Real(0), Real(0.5));
    const Complex one_i(Real(0), Real(1));
    const Complex lk(roots[k]);
    Complex lhs = ipow(lk + half_i, static_cast<unsigned>(n));
    Complex rhs = ipow(lk - half_i, static_cast<unsigned>(n));
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (static_cast<int>(j) == k) continue;
        Complex d(roots[k] - roots[j]);
        lhs *= d - one_i;
        rhs *= d + one_i;
    }
    Real denom = abs(lhs) + abs(rhs);
    if (denom == 0) return {};
    return (lhs - rhs) / denom;
}

Complex bethe_residual(const HomogeneousSolution& sol, int k) { return bethe_residual(sol.roots, sol.n, k); }

Real max_bethe_residual(const std::vector<Real>& roots, int n) {
    Real worst(0);
    for (int k = 0; k < static_cast<int>(roots.size()); ++k) worst = rmax(worst, abs(bethe_residual(roots, n, k)));
    return worst;
}

}  // namespace tqroots
