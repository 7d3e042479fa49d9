#pragma once

// Brute-force reference computations used only by the tests. Everything here
// works on explicit monomial coefficients in z and shares no code path with
// the library beyond the Real/Complex arithmetic types.

#include "tqroots/complex.hpp"

#include <stdexcept>
#include <vector>

namespace oracle {

using tqroots::Complex;
using tqroots::Real;
using Poly = std::vector<Complex>;  // ascending coefficients

inline Poly mul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, Complex(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline Poly add(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Complex(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

inline Poly scale(Poly a, const Complex& s) {
    for (auto& c : a) c *= s;
    return a;
}

inline Poly power(const Poly& a, unsigned k) {
    Poly r{Complex(1)};
    for (unsigned i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

inline Complex eval(const Poly& p, const Complex& z) {
    Complex acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

inline Complex eval_derivative(const Poly& p, const Complex& z) {
    Complex acc(0);
    for (std::size_t i = p.size(); i-- > 1;) acc = acc * z + Real(static_cast<long>(i)) * p[i];
    return acc;
}

/// p(z + a) by repeated synthetic substitution.
inline Poly shift(const Poly& p, const Complex& a) {
    Poly r{p.back()};
    const Poly lin{a, Complex(1)};
    for (std::size_t i = p.size() - 1; i-- > 0;) r = add(mul(r, lin), Poly{p[i]});
    return r;
}

/// Long division; returns the quotient and stores the remainder.
inline Poly divide(Poly num, const Poly& den, Poly* remainder = nullptr) {
    const std::size_t dn = den.size() - 1;
    if (num.size() <= dn) {
        if (remainder) *remainder = num;
        return {Complex(0)};
    }
    Poly q(num.size() - dn, Complex(0));
    for (std::size_t i = num.size(); i-- > dn;) {
        const Complex c = num[i] / den[dn];
        q[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    num.resize(dn);
    if (remainder) *remainder = num;
    return q;
}

inline Poly from_roots(const std::vector<Complex>& roots) {
    Poly p{Complex(1)};
    for (const auto& r : roots) p = mul(p, Poly{-r, Complex(1)});
    return p;
}

inline Poly from_real_roots(const std::vector<Real>& roots) {
    std::vector<Complex> c(roots.begin(), roots.end());
    return from_roots(c);
}

inline Complex half_i() { return Complex(Real(0), Real(1) / 2); }
inline Complex unit_i() { return Complex(Real(0), Real(1)); }

/// Transfer eigenvalue as an explicit polynomial: the homogeneous T-Q
/// numerator divided exactly by q. `remainder_norm` receives the largest
/// remainder coefficient (zero for a genuine Bethe state).
inline Poly transfer_polynomial(const std::vector<Real>& bethe_roots, int n, Real* remainder_norm = nullptr) {
    const Poly q = from_real_roots(bethe_roots);
    const Poly plus = power(Poly{half_i(), Complex(1)}, static_cast<unsigned>(n));
    const Poly minus = power(Poly{-half_i(), Complex(1)}, static_cast<unsigned>(n));
    const Poly num = add(mul(plus, shift(q, -unit_i())), mul(minus, shift(q, unit_i())));
    Poly rem;
    Poly t = divide(num, q, &rem);
    if (remainder_norm) {
        Real worst(0);
        for (const auto& c : rem) worst = tqroots::rmax(worst, abs(c));
        *remainder_norm = worst;
    }
    return t;
}

/// Dense complex Gaussian elimination with partial pivoting.
inline std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> a, std::vector<Complex> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
        if (a[piv][c].is_zero()) throw std::runtime_error("oracle: singular system");
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const Complex f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<Complex> x(n);
    for (std::size_t r = n; r-- > 0;) {
        Complex s = b[r];
        for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return x;
}

/// Monic degree-n Q solving the inhomogeneous T-Q equation
///   t Q + (z+i/2)^n Q(z-i) + (z-i/2)^n Q(z+i) = 4 (z^2+1/4)^n
/// directly in monomial coefficients, by collocation at n points.
inline Poly direct_inhomogeneous_q(const Poly& t, int n) {
    const unsigned un = static_cast<unsigned>(n);
    const Complex h = half_i(), i1 = unit_i();
    auto row_at = [&](const Complex& z, std::vector<Complex>& row, Complex& rhs) {
        const Complex a = ipow(z + h, un), b = ipow(z - h, un), tz = eval(t, z);
        auto term = [&](int k) {
            return tz * ipow(z, k) + a * ipow(z - i1, k) + b * ipow(z + i1, k);
        };
        row.resize(un);
        for (int k = 0; k < n; ++k) row[k] = term(k);
        rhs = Real(4) * ipow(z * z + Complex(Real(1) / 4), un) - term(n);
    };
    std::vector<std::vector<Complex>> a(un);
    std::vector<Complex> b(un);
    for (int j = 0; j < n; ++j) {
        const Complex z(Real(j + 1) * Real("0.37"), Real("0.11") * Real(j % 3 + 1));
        row_at(z, a[j], b[j]);
    }
    Poly q = solve_dense(a, b);
    q.push_back(Complex(1));
    return q;
}

/// Q~ expanded in monomials of z from its grid values v_k = Q~((2k+1)i/2),
/// k = 1..K: the monic degree-2K even interpolant through the nodes
/// z_k^2 = -(2k+1)^2/4, written out term by term.
inline Poly qtilde_monomials(const std::vector<Real>& values) {
    const std::size_t K = values.size();
    std::vector<Real> w(K);
    for (std::size_t k = 0; k < K; ++k) {
        const Real s = Real(2 * static_cast<long>(k + 1) + 1) / 2;
        w[k] = -s * s;
    }
    auto factor = [&](std::size_t m) { return Poly{Complex(-w[m]), Complex(0), Complex(1)}; };
    Poly full{Complex(1)};
    for (std::size_t m = 0; m < K; ++m) full = mul(full, factor(m));
    Poly out = full;
    for (std::size_t k = 0; k < K; ++k) {
        Poly basis{Complex(1)};
        Real denom(1);
        for (std::size_t m = 0; m < K; ++m) {
            if (m == k) continue;
            basis = mul(basis, factor(m));
            denom *= w[k] - w[m];
        }
        out = add(out, scale(basis, Complex(values[k] / denom)));
    }
    return out;
}

/// Every root of p by Newton iteration started from each point of a square
/// lattice covering the Cauchy disc, deduplicated. Throws unless exactly
/// deg p distinct roots are found.
inline std::vector<Complex> exhaustive_roots(const Poly& p, int lattice = 31, int max_iter = 300) {
    const std::size_t deg = p.size() - 1;
    Real bound(0);
    for (std::size_t k = 0; k < deg; ++k) bound = tqroots::rmax(bound, abs(p[k] / p[deg]));
    const Real radius = bound + 1;
    const Real tol = Real("1e-40");
    const Real merge = Real("1e-30");

    std::vector<Complex> found;
    for (int a = 0; a < lattice && found.size() < deg; ++a) {
        for (int b = 0; b < lattice && found.size() < deg; ++b) {
            Complex z(radius * (Real(2 * a + 1) / lattice - 1), radius * (Real(2 * b + 1) / lattice - 1));
            bool converged = false;
            for (int it = 0; it < max_iter; ++it) {
                const Complex d = eval_derivative(p, z);
                if (d.is_zero()) break;
                const Complex step = eval(p, z) / d;
                z -= step;
                if (abs(step) <= (abs(z) + 1) * tol) {
                    // quadratic convergence: a few more steps reach the rounding floor
                    for (int extra = 0; extra < 3; ++extra) z -= eval(p, z) / eval_derivative(p, z);
                    converged = true;
                    break;
                }
            }
            if (!converged) continue;
            bool fresh = true;
            for (const auto& r : found)
                if (abs(r - z) < merge) fresh = false;
            if (fresh) found.push_back(z);
        }
    }
    if (found.size() != deg) throw std::runtime_error("oracle: lattice search missed roots");
    return found;
}

/// Largest distance from each element of `a` to its nearest element of `b`
/// (both directions).
inline Real multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto one_way = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
        Real worst(0);
        for (const auto& u : x) {
            Real best = abs(u - y.front());
            for (const auto& v : y) best = tqroots::rmin(best, abs(u - v));
            worst = tqroots::rmax(worst, best);
        }
        return worst;
    };
    if (a.size() != b.size()) return Real(1e300);
    return tqroots::rmax(one_way(a, b), one_way(b, a));
}

}  // namespace oracle
