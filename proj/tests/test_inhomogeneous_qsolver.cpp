#include "tqroots/errors.hpp"
#include "tqroots/inhomogeneous_qsolver.hpp"
#include "tqroots/root_finder.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <boost/multiprecision/mpfr.hpp>

using namespace tqroots;
namespace mp = boost::multiprecision;

namespace {

struct Stage {
    HomogeneousSolution hom;
    QLinearSystem sys;
    QGridValues grid;
};

Stage run(int n, unsigned bits, SolveMethod method = SolveMethod::shooting) {
    WorkingPrecision wp(bits);
    const auto cfg = PrecisionConfig::for_bits(bits);
    Stage s;
    s.hom = solve_ground_state(n, cfg);
    const TransferEvaluator ev(s.hom);
    s.sys = build_system(t_grid(ev, n), n);
    s.grid = solve_grid(s.sys, cfg, method);
    return s;
}

Real rel(const Real& a, const Real& b) { return mp::abs(a - b) / rmax(mp::abs(b), Real(1e-300)); }

}  // namespace

TEST_CASE("band coefficients at n=8") {
    WorkingPrecision wp(256);
    const Stage s = run(8, 256);
    REQUIRE(s.sys.band.size() == 2);
    const BandRow& first = s.sys.band[0];
    CHECK(first.sub == 0);
    CHECK(first.super == 3);
    CHECK(first.rhs == -pow2(9));  // -2^(n+1)
    const BandRow& row = s.sys.band[1];
    CHECK(row.sub == 2187);
    CHECK(row.super == 512);
    CHECK(row.rhs == -4 * mp::pow(Real(6), 7));
    const TransferEvaluator ev(s.hom);
    CHECK(row.diag == ev.t_imag_axis(Real(5) / 2));
}

TEST_CASE("closing row constant term") {
    for (int n : {4, 8, 16}) {
        CAPTURE(n);
        WorkingPrecision wp(256);
        TransferGrid tg;
        tg.n = n;
        tg.precision_bits = 256;
        tg.band.assign(n / 2 - 2, Real(1));
        tg.at_zero = 0;  // removes the t(0) contribution
        const QLinearSystem sys = build_system(tg, n);
        const ReducedNodes rn(n);
        CHECK(sys.closing_constant + 6 * rn.ell(Real(-1)) == -pow2(4 - n));
        CHECK(static_cast<int>(sys.closing.size()) == n / 2 - 1);
    }
}

TEST_CASE("reduced nodes and weights") {
    WorkingPrecision wp(256);
    const ReducedNodes rn(12);
    REQUIRE(rn.nodes.size() == 5);
    for (int k = 1; k <= 5; ++k) CHECK(rn.nodes[k - 1] == -Real((2 * k + 1) * (2 * k + 1)) / 4);
    for (std::size_t k = 0; k < 5; ++k) {
        Real prod(1);
        for (std::size_t m = 0; m < 5; ++m)
            if (m != k) prod *= rn.nodes[k] - rn.nodes[m];
        CHECK(rel(rn.weights[k], 1 / prod) < pow2(-240));
    }
}

TEST_CASE("grid values agree with a direct monomial solve of the inhomogeneous T-Q equation") {
    for (int n : {4, 8, 12}) {
        CAPTURE(n);
        const unsigned bits = 512;
        WorkingPrecision wp(bits);
        const Stage s = run(n, bits);
        const oracle::Poly t = oracle::transfer_polynomial(s.hom.roots, n);
        const oracle::Poly q = oracle::direct_inhomogeneous_q(t, n);
        for (int k = 1; k <= n / 2 - 1; ++k) {
            const Complex z(Real(0), Real(2 * k + 1) / 2);
            const Complex expected = oracle::eval(q, z) / (z * z + Complex(Real(1) / 4));
            CHECK(mp::abs(expected.im) < Real("1e-100") * abs(expected));
            CHECK(rel(s.grid.values[k - 1], expected.re) < Real("1e-100"));
        }
        CHECK(s.grid.max_band_residual < pow2(-static_cast<long>(bits) / 2));
        CHECK(s.grid.closure_residual < pow2(-static_cast<long>(bits) / 2));
    }
}

TEST_CASE("n=4: the single unknown gives Q whose roots satisfy the inhomogeneous Bethe equations") {
    const unsigned bits = 256;
    WorkingPrecision wp(bits);
    const Stage s = run(4, bits);
    REQUIRE(s.grid.values.size() == 1);
    // Q~(z) = z^2 - w0 with Q~(3i/2) = -9/4 - w0.
    const Real w0 = -Real(9) / 4 - s.grid.values[0];
    CHECK(w0 > 0);
    const Real r = mp::sqrt(w0);
    const std::vector<Complex> roots{Complex(-r), Complex(r), oracle::half_i(), -oracle::half_i()};
    for (int k = 0; k < 4; ++k) CHECK(inhomo_bethe_residual(roots, 4, k) < pow2(-static_cast<long>(bits) / 8));
    CHECK(abs(qtilde_eval(s.grid, Complex(r))) < Real("1e-60"));
}

TEST_CASE("doubling precision changes the values by less than 2^(-bits/4)") {
    const unsigned bits = 512;
    const Stage lo = run(24, bits);
    const Stage hi = run(24, 2 * bits);
    WorkingPrecision wp(2 * bits);
    for (std::size_t k = 0; k < lo.grid.values.size(); ++k)
        CHECK(rel(lo.grid.values[k], hi.grid.values[k]) < pow2(-static_cast<long>(bits) / 4));
}

TEST_CASE("shooting and dense LU agree") {
    for (int n : {12, 32}) {
        CAPTURE(n);
        const Stage sh = run(n, 512, SolveMethod::shooting);
        const Stage lu = run(n, 512, SolveMethod::dense_lu);
        WorkingPrecision wp(512);
        CHECK(lu.grid.solve_method == SolveMethod::dense_lu);
        for (std::size_t k = 0; k < sh.grid.values.size(); ++k)
            CHECK(rel(sh.grid.values[k], lu.grid.values[k]) < Real("1e-60"));
    }
    CHECK(solve_method_from_string(to_string(SolveMethod::dense_lu)) == SolveMethod::dense_lu);
    CHECK_THROWS(solve_method_from_string("qr"));
}

TEST_CASE("too little precision for the shooting recurrence is detected") {
    const Stage s = run(64, 1024);
    QLinearSystem sys = s.sys;
    WorkingPrecision wp(64);
    sys.precision_bits = 64;
    CHECK_THROWS_AS(solve_grid(sys, PrecisionConfig::for_bits(64)), PrecisionExhausted);
}

TEST_CASE("Q~ interpolates the grid, is even and monic") {
    for (int n : {8, 16, 32, 64}) {
        CAPTURE(n);
        const unsigned bits = std::max(512, 16 * n);
        const Stage s = run(n, bits);
        WorkingPrecision wp(bits);
        for (int k = 1; k <= n / 2 - 1; ++k) {
            const Complex v = qtilde_eval(s.grid, Complex(Real(0), Real(2 * k + 1) / 2));
            CHECK(rel(v.re, s.grid.values[k - 1]) < pow2(-static_cast<long>(bits) / 2));
        }
        const Complex z(Real("0.77"), Real("1.31"));
        CHECK(abs(qtilde_eval(s.grid, z) - qtilde_eval(s.grid, -z)) <= abs(qtilde_eval(s.grid, z)) * pow2(-200));
        const Real big("1e6");
        const Complex lead = qtilde_eval(s.grid, Complex(big)) / Complex(mp::pow(big, n - 2));
        CHECK(abs(lead - Complex(1)) < Real("1e-3"));
    }
}

TEST_CASE("Q~ matches its explicit monomial expansion") {
    const unsigned bits = 512;
    const Stage s = run(12, bits);
    WorkingPrecision wp(bits);
    const oracle::Poly p = oracle::qtilde_monomials(s.grid.values);
    REQUIRE(p.size() == 11);
    CHECK(p.back() == Complex(1));
    for (std::size_t k = 1; k < p.size(); k += 2) CHECK(abs(p[k]) == 0);
    for (const char* re : {"0.1", "2.3", "5.0"}) {
        const Complex z(Real(re), Real("0.6"));
        const Complex e = oracle::eval(p, z);
        CHECK(abs(qtilde_eval(s.grid, z) - e) <= abs(e) * Real("1e-100"));
    }
}

TEST_CASE("Q has the fixed roots and the expected symmetries") {
    const unsigned bits = 512;
    const Stage s = run(16, bits);
    WorkingPrecision wp(bits);
    CHECK(q_eval_inhomo(s.grid, oracle::half_i()).is_zero());
    CHECK(q_eval_inhomo(s.grid, -oracle::half_i()).is_zero());
    const Complex z(Real("0.4"), Real("0.9"));
    CHECK(abs(q_eval_inhomo(s.grid, z) - q_eval_inhomo(s.grid, -z)) <= abs(q_eval_inhomo(s.grid, z)) * pow2(-300));
    CHECK(abs(q_eval_inhomo(s.grid, conj(z)) - conj(q_eval_inhomo(s.grid, z))) <=
          abs(q_eval_inhomo(s.grid, z)) * pow2(-300));
    CHECK(q_eval_inhomo(s.grid, Complex(Real("1.234"))).im == 0);
}

TEST_CASE("T-Q residual") {
    const unsigned bits = 512;
    const Stage s = run(16, bits);
    WorkingPrecision wp(bits);
    const TransferEvaluator ev(s.hom);
    CHECK(tq_residual(s.grid, ev, Complex(Real("0.3"), Real("0.2"))) < pow2(-static_cast<long>(bits) / 4));
    CHECK(tq_residual(s.grid, ev, oracle::half_i()) < pow2(-static_cast<long>(bits) / 2));

    QGridValues zeroed = s.grid;
    for (auto& v : zeroed.values) v = 0;
    const Real r = tq_residual(zeroed, ev, Complex(Real("0.3"), Real("0.2")));
    CHECK(r > Real("0.1"));
    CHECK(r <= Real("4.0"));
}
