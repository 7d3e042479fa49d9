#include "tqroots/inhomogeneous_qsolver.hpp"

#include "tqroots/dense_lu.hpp"
#include "tqroots/errors.hpp"

#include <stdexcept>

namespace tqroots {

namespace mp = boost::multiprecision;

std::string to_string(SolveMethod m) { return m == SolveMethod::shooting ? "shooting" : "dense_lu"; }

SolveMethod solve_method_from_string(const std::string& s) {
    if (s == "shooting") return SolveMethod::shooting;
    if (s == "dense_lu") return SolveMethod::dense_lu;
    throw std::invalid_argument("unknown solve method: " + s);
}

ReducedNodes::ReducedNodes(int n) {
    const int k_max = n / 2 - 1;
    nodes.reserve(k_max);
    weights.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) nodes.push_back(-Real((2 * k + 1) * (2 * k + 1)) / 4);
    for (int k = 1; k <= k_max; ++k) {
        // W_k - W_m = (m - k)(m + k + 1), an integer
        Real prod(1);
        for (int m = 1; m <= k_max; ++m)
            if (m != k) prod *= Real(m - k) * Real(m + k + 1);
        weights.push_back(1 / prod);
    }
}

Real ReducedNodes::ell(const Real& w) const {
    Real acc(1);
    for (const auto& x : nodes) acc *= w - x;
    return acc;
}

Complex ReducedNodes::ell(const Complex& w) const {
    Complex acc(1);
    for (const auto& x : nodes) acc *= w - Complex(x);
    return acc;
}

QLinearSystem build_system(const TransferGrid& tg, int n) {
    require_multiple_of_four(n);
    if (tg.n != n) throw std::invalid_argument("build_system: grid built for a different n");
    const int k_max = n / 2 - 1;
    if (static_cast<int>(tg.band.size()) != k_max - 1)
        throw std::invalid_argument("build_system: transfer grid has the wrong length");

    QLinearSystem sys;
    sys.n = n;
    sys.precision_bits = tg.precision_bits;
    WorkingPrecision wp(tg.precision_bits);
    for (int k = 1; k <= k_max - 1; ++k) {
        BandRow row;
        row.diag = tg.band[k - 1];
        row.sub = mp::pow(Real(k + 1), n - 1) * (k - 1);
        row.super = mp::pow(Real(k), n - 1) * (k + 2);
        row.rhs = -4 * mp::pow(Real(k) * (k + 1), n - 1);
        sys.band.push_back(std::move(row));
    }

    ReducedNodes rn(n);
    const Real l0 = rn.ell(Real(0));
    const Real l1 = rn.ell(Real(-1));
    const Real scale0 = tg.at_zero * pow2(n);
    sys.closing.reserve(k_max);
    for (int j = 0; j < k_max; ++j) {
        Real basis0 = l0 * rn.weights[j] / (0 - rn.nodes[j]);
        Real basis1 = l1 * rn.weights[j] / (-1 - rn.nodes[j]);
        sys.closing.push_back(scale0 * basis0 - 6 * basis1);
    }
    sys.closing_constant = scale0 * l0 - 6 * l1 - pow2(4 - n);
    sys.closing_rhs = -sys.closing_constant;
    return sys;
}

Real band_residual(const QLinearSystem& sys, const std::vector<Real>& v) {
    Real worst(0);
    for (std::size_t r = 0; r < sys.band.size(); ++r) {
        const BandRow& row = sys.band[r];
        Real t_sub = r > 0 ? Real(row.sub * v[r - 1]) : Real(0);
        Real t_diag = row.diag * v[r];
        Real t_sup = row.super * v[r + 1];
        Real scale = rmax(rmax(mp::abs(t_sub), mp::abs(t_diag)), rmax(mp::abs(t_sup), mp::abs(row.rhs)));
        if (scale == 0) continue;
        worst = rmax(worst, Real(mp::abs(t_sub + t_diag + t_sup - row.rhs) / scale));
    }
    return worst;
}

Real closing_residual(const QLinearSystem& sys, const std::vector<Real>& v) {
    Real sum = -sys.closing_rhs;
    Real scale = mp::abs(sys.closing_rhs);
    for (std::size_t j = 0; j < v.size(); ++j) {
        Real term = sys.closing[j] * v[j];
        scale = rmax(scale, Real(mp::abs(term)));
        sum += term;
    }
    return scale == 0 ? Real(0) : Real(mp::abs(sum) / scale);
}

namespace {

std::vector<Real> shoot(const QLinearSystem& sys, unsigned bits) {
    const int k_max = sys.unknowns();
    std::vector<Real> a(k_max, Real(0));
    std::vector<Real> b(k_max, Real(0));
    b[0] = 1;
    for (int r = 0; r + 1 < k_max; ++r) {
        const BandRow& row = sys.band[r];
        Real a_prev = r > 0 ? a[r - 1] : Real(0);
        Real b_prev = r > 0 ? b[r - 1] : Real(0);
        a[r + 1] = (row.rhs - row.diag * a[r] - row.sub * a_prev) / row.super;
        b[r + 1] = (-row.diag * b[r] - row.sub * b_prev) / row.super;
    }

    Real lead(0);
    Real lead_scale(0);
    Real offset(0);
    for (int j = 0; j < k_max; ++j) {
        Real term = sys.closing[j] * b[j];
        lead_scale = rmax(lead_scale, Real(mp::abs(term)));
        lead += term;
        offset += sys.closing[j] * a[j];
    }
    if (lead == 0) throw SingularClosure("closing-row coefficient of the seed unknown is exactly zero");
    if (log2_abs(lead_scale) - log2_abs(lead) > static_cast<double>(bits) - 16)
        throw PrecisionExhausted("closing-row coefficient lost all significant bits at " + std::to_string(bits) +
                                 " bits (n=" + std::to_string(sys.n) + ")");

    Real seed = (sys.closing_rhs - offset) / lead;
    std::vector<Real> v(k_max);
    for (int j = 0; j < k_max; ++j) v[j] = a[j] + b[j] * seed;
    return v;
}

std::vector<Real> dense_solve(const QLinearSystem& sys) {
    const auto k_max = static_cast<std::size_t>(sys.unknowns());
    DenseMatrix a(k_max);
    std::vector<Real> rhs(k_max, Real(0));
    for (std::size_t r = 0; r < sys.band.size(); ++r) {
        if (r > 0) a(r, r - 1) = sys.band[r].sub;
        a(r, r) = sys.band[r].diag;
        a(r, r + 1) = sys.band[r].super;
        rhs[r] = sys.band[r].rhs;
    }
    for (std::size_t j = 0; j < k_max; ++j) a(k_max - 1, j) = sys.closing[j];
    rhs[k_max - 1] = sys.closing_rhs;
    return lu_solve(std::move(a), std::move(rhs));
}

}  // namespace

namespace {

// Bits of accuracy the shooting recurrence loses, estimated by repeating it
// on a copy of the system rounded to 3/4 of the working precision: the
// disagreement with the full-precision values is the lost fraction of that
// reduced mantissa.
double shooting_bit_loss(const QLinearSystem& sys, const std::vector<Real>& full, unsigned bits) {
    const unsigned reduced = bits * 3 / 4;
    std::vector<Real> low;
    {
        WorkingPrecision wp(reduced);
        auto round = [&](Real& x) { x = parse_real(to_decimal(x, reduced)); };
        QLinearSystem copy = sys;
        for (auto& row : copy.band) {
            round(row.sub);
            round(row.diag);
            round(row.super);
            round(row.rhs);
        }
        for (auto& c : copy.closing) round(c);
        round(copy.closing_rhs);
        try {
            low = shoot(copy, reduced);
        } catch (const PrecisionExhausted&) {
            return static_cast<double>(reduced);
        }
    }
    double worst = -static_cast<double>(reduced);
    for (std::size_t j = 0; j < full.size(); ++j) {
        if (full[j] == 0) continue;
        worst = std::max(worst, log2_abs(Real((low[j] - full[j]) / full[j])));
    }
    return std::max(0.0, static_cast<double>(reduced) + worst);
}

}  // namespace

QGridValues solve_grid(const QLinearSystem& sys, const PrecisionConfig& cfg, SolveMethod method) {
    cfg.validate();
    WorkingPrecision wp(cfg.bits);
    const long half = static_cast<long>(cfg.bits / 2);

    QGridValues g;
    g.n = sys.n;
    g.precision_bits = cfg.bits;
    g.solve_method = method;
    g.values = shoot(sys, cfg.bits);
    const double lost = shooting_bit_loss(sys, g.values, cfg.bits);
    if (lost > static_cast<double>(cfg.bits) / 2)
        throw PrecisionExhausted("shooting recurrence loses about " + std::to_string(static_cast<int>(lost)) +
                                 " of " + std::to_string(cfg.bits) + " bits (n=" + std::to_string(sys.n) + ")");

    if (method == SolveMethod::dense_lu) {
        std::vector<Real> lu = dense_solve(sys);
        const Real tol = pow2(-static_cast<long>(cfg.bits / 4));
        for (std::size_t j = 0; j < lu.size(); ++j) {
            Real denom = rmax(Real(mp::abs(lu[j])), Real(mp::abs(g.values[j])));
            if (denom != 0 && mp::abs(lu[j] - g.values[j]) / denom > tol)
                throw PrecisionExhausted("shooting and dense LU disagree at component " + std::to_string(j + 1));
        }
        g.values = std::move(lu);
    }

    g.max_band_residual = band_residual(sys, g.values);
    g.closure_residual = closing_residual(sys, g.values);
    if (!(g.max_band_residual < pow2(-half)) || !(g.closure_residual < pow2(-half)))
        throw PrecisionExhausted("grid solution defect above 2^(-bits/2) at " + std::to_string(cfg.bits) +
                                 " bits (n=" + std::to_string(sys.n) + ")");
    return g;
}

ReducedQ::ReducedQ(QGridValues grid) : grid_(std::move(grid)), nodes_(grid_.n) {
    c_.reserve(grid_.values.size());
    for (std::size_t k = 0; k < grid_.values.size(); ++k) c_.push_back(grid_.values[k] * nodes_.weights[k]);
}

Real ReducedQ::p(const Real& w) const {
    Real g(1);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (w == nodes_.nodes[k]) return grid_.values[k];
        g += c_[k] / (w - nodes_.nodes[k]);
    }
    return nodes_.ell(w) * g;
}

Complex ReducedQ::p(const Complex& w) const {
    if (w.im == 0) return Complex(p(w.re));
    Complex g(1);
    for (std::size_t k = 0; k < c_.size(); ++k) g += Complex(c_[k]) / (w - Complex(nodes_.nodes[k]));
    return nodes_.ell(w) * g;
}

Complex ReducedQ::newton_step(const Complex& w) const {
    // P = L g  =>  P / P' = g / (g * sum 1/(w - W_k) + g')
    Complex g(1);
    Complex dg;
    Complex s1;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        Complex d = w - Complex(nodes_.nodes[k]);
        if (d.is_zero()) {
            // exactly on a node: step from a nearby point instead
            Complex shifted = w + Complex(Real(0), pow2(-static_cast<long>(grid_.precision_bits / 2)));
            return newton_step(shifted) + (shifted - w);
        }
        Complex inv = Complex(1) / d;
        g += c_[k] * inv;
        dg -= c_[k] * inv * inv;
        s1 += inv;
    }
    return g / (g * s1 + dg);
}

Complex ReducedQ::qtilde(const Complex& z) const { return p(z * z); }

Complex ReducedQ::q(const Complex& z) const {
    Complex w = z * z;
    return (w + Complex(Real(0.25))) * p(w);
}

Complex qtilde_eval(const QGridValues& g, const Complex& z) {
    WorkingPrecision wp(g.precision_bits);
    return ReducedQ(g).qtilde(z);
}

Complex q_eval_inhomo(const QGridValues& g, const Complex& z) {
    WorkingPrecision wp(g.precision_bits);
    return ReducedQ(g).q(z);
}

Real tq_residual(const ReducedQ& rq, const TransferEvaluator& ev, const Complex& lambda) {
    WorkingPrecision wp(rq.grid().precision_bits);
    const Complex half_i(Real(0), Real(0.5));
    const Complex one_i(Real(0), Real(1));
    const auto n = static_cast<unsigned>(rq.n());
    Complex q0 = rq.q(lambda);
    Complex t_term = q0.is_zero() ? Complex() : ev.t(lambda) * q0;
    Complex minus = ipow(lambda + half_i, n) * rq.q(lambda - one_i);
    Complex plus = ipow(lambda - half_i, n) * rq.q(lambda + one_i);
    Complex inhom = Real(4) * ipow(lambda * lambda + Complex(Real(0.25)), n);
    Real scale = rmax(rmax(abs(t_term), abs(minus)), rmax(abs(plus), abs(inhom)));
    if (scale == 0) return Real(0);
    return abs(t_term + minus + plus - inhom) / scale;
}

Real tq_residual(const QGridValues& g, const TransferEvaluator& ev, const Complex& lambda) {
    WorkingPrecision wp(g.precision_bits);
    return tq_residual(ReducedQ(g), ev, lambda);
}

}  // namespace tqroots
