#include "tqroots/pipeline/sweep.hpp"

#include "tqroots/errors.hpp"
#include "tqroots/pipeline/figures.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ostream>
#include <random>
#include <stdexcept>

namespace tqroots {

namespace fs = std::filesystem;
namespace mp = boost::multiprecision;

void SweepConfig::validate() const {
    require_multiple_of_four(n_from);
    require_multiple_of_four(n_to);
    require_multiple_of_four(step);
    if (n_from > n_to) throw std::invalid_argument("n_from must not exceed n_to");
    if (bits && *bits < 64) throw std::invalid_argument("precision bits must be >= 64");
    for (const auto& [n, b] : bits_override) {
        require_multiple_of_four(n);
        if (b < 64) throw std::invalid_argument("precision override below 64 bits");
    }
    for (const auto& f : figures)
        if (f.size() != 4 || f.rfind("fig", 0) != 0 || f[3] < '1' || f[3] > '6')
            throw std::invalid_argument("unknown figure: " + f);
    if (tq_points <= 0) throw std::invalid_argument("tq_points must be positive");
}

unsigned SweepConfig::starting_bits(int n) const {
    if (auto it = bits_override.find(n); it != bits_override.end()) return it->second;
    if (bits) return *bits;
    return static_cast<unsigned>(std::max(512, 16 * n));
}

std::string SweepConfig::bits_mode(int n) const {
    if (auto it = bits_override.find(n); it != bits_override.end()) return std::to_string(it->second);
    return bits ? std::to_string(*bits) : std::string("auto");
}

fs::path default_output_dir() {
    if (const char* env = std::getenv("TQROOTS_OUTPUT_DIR"); env && *env) return env;
    return "results";
}

Real sampled_tq_residual(const ReducedQ& rq, const TransferEvaluator& ev, int count, int* used) {
    WorkingPrecision wp(rq.grid().precision_bits);
    const int n = rq.n();
    std::mt19937_64 rng(0x5eed0000ull + static_cast<unsigned>(n));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double radius = n / 4.0;
    const auto& hom_roots = ev.source().roots;

    Real worst(0);
    int accepted = 0;
    for (int attempt = 0; accepted < count && attempt < 200 * count; ++attempt) {
        double x = unit(rng) * radius;
        double y = unit(rng) * radius;
        if (x * x + y * y > radius * radius) continue;
        const Complex lambda(x, y);
        bool near_root = false;
        for (const auto& r : hom_roots)
            if (abs(lambda - Complex(r)) < Real(0.25)) near_root = true;
        if (near_root) continue;
        try {
            worst = rmax(worst, tq_residual(rq, ev, lambda));
        } catch (const NearRootDivision&) {
            continue;
        }
        ++accepted;
    }
    if (used) *used = accepted;
    return worst;
}

namespace {

// |Q(z)| / |Q(z + i)| at z = +-i/2 using the barycentric Q, plus a unit
// penalty when the root list misses either fixed root.
Real fixed_root_defect(const ReducedQ& rq, const InhomogeneousSolution& sol, const Real& tol) {
    Real worst(0);
    for (int sign : {1, -1}) {
        const Complex z(Real(0), Real(sign) / 2);
        bool present = std::any_of(sol.roots.begin(), sol.roots.end(),
                                   [&](const Complex& u) { return abs(u - z) < tol; });
        if (!present) return Real(1);
        Real scale = abs(rq.q(z + Complex(Real(0), Real(sign))));
        Real value = abs(rq.q(z));
        worst = rmax(worst, scale == 0 ? value : Real(value / scale));
    }
    return worst;
}

}  // namespace

NRecord solve_chain(int n, unsigned bits, SolveMethod method, const HomogeneousSolution* warm_hom,
                    const InhomogeneousSolution* warm_inh, int tq_points) {
    require_multiple_of_four(n);
    const auto started = std::chrono::steady_clock::now();
    const PrecisionConfig cfg = PrecisionConfig::for_bits(bits);
    WorkingPrecision wp(bits);

    NRecord rec;
    rec.n = n;
    rec.bits_requested = bits;
    rec.bits_used = bits;

    std::optional<HomogeneousSolution> hom_seed;
    if (warm_hom) hom_seed = *warm_hom;
    rec.homogeneous = solve_ground_state(n, cfg, hom_seed);

    TransferEvaluator ev(rec.homogeneous);
    TransferGrid tg = t_grid(ev, n);
    QLinearSystem sys = build_system(tg, n);
    rec.grid = solve_grid(sys, cfg, method);

    std::optional<InhomogeneousSolution> inh_seed;
    if (warm_inh) inh_seed = *warm_inh;
    rec.inhomogeneous = find_roots(rec.grid, cfg, inh_seed);

    rec.labels = split_families(rec.inhomogeneous, cfg.classify_tol).labels;
    rec.report = classify(rec.inhomogeneous, cfg, &rec.homogeneous);

    ReducedQ rq(rec.grid);
    rec.checks.homogeneous_residual = rec.homogeneous.max_residual;
    rec.checks.t_half_defect = abs(ev.t(Complex(Real(0), Real(0.5))) - Complex(1));
    rec.checks.fixed_root_defect = fixed_root_defect(rq, rec.inhomogeneous, cfg.classify_tol);
    rec.checks.bethe_residual = rec.inhomogeneous.max_residual();
    rec.checks.tq_residual = sampled_tq_residual(rq, ev, tq_points, &rec.checks.tq_points);

    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

NRecord solve_with_escalation(int n, const SweepConfig& cfg, const HomogeneousSolution* warm_hom,
                              const InhomogeneousSolution* warm_inh) {
    const auto started = std::chrono::steady_clock::now();
    PrecisionConfig prec = PrecisionConfig::for_bits(cfg.starting_bits(n));
    std::vector<EscalationEvent> events;
    NRecord rec;
    for (unsigned attempt = 0;; ++attempt) {
        try {
            rec = solve_chain(n, prec.bits, cfg.method, warm_hom, warm_inh, cfg.tq_points);
            break;
        } catch (const SolverError& e) {
            events.push_back({prec.bits, e.what()});
            if (!e.escalatable() || attempt >= cfg.max_escalations) {
                rec = NRecord{};
                rec.n = n;
                rec.status = "failed";
                rec.error = e.what();
                rec.bits_used = prec.bits;
                break;
            }
            prec = prec.escalated();
        }
    }
    rec.bits_mode = cfg.bits_mode(n);
    rec.bits_requested = cfg.starting_bits(n);
    rec.escalations = std::move(events);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

SweepResult run_sweep(const SweepConfig& cfg, std::ostream* log) {
    cfg.validate();
    SweepResult res;
    res.records.reserve(static_cast<std::size_t>((cfg.n_to - cfg.n_from) / cfg.step + 1));
    std::optional<std::size_t> prev;  // index of the last certified record
    for (int n = cfg.n_from; n <= cfg.n_to; n += cfg.step) {
        std::optional<NRecord> loaded;
        if (cfg.resume && !cfg.output_dir.empty()) {
            loaded = try_load_record(cfg.output_dir, n);
            if (loaded && (!loaded->certified() || loaded->bits_mode != cfg.bits_mode(n) ||
                           loaded->bits_requested != cfg.starting_bits(n)))
                loaded.reset();
        }

        NRecord rec;
        bool reused = false;
        if (loaded) {
            rec = std::move(*loaded);
            reused = true;
        } else {
            const NRecord* seed = (cfg.warm_start && prev) ? &res.records[*prev] : nullptr;
            rec = solve_with_escalation(n, cfg, seed ? &seed->homogeneous : nullptr,
                                        seed ? &seed->inhomogeneous : nullptr);
            if (!cfg.output_dir.empty()) save_record(rec, cfg.output_dir);
        }

        if (log) {
            *log << "n=" << n << (reused ? " [resumed]" : "") << ' ' << rec.status;
            if (rec.certified())
                *log << " bits=" << rec.bits_used << " real=" << rec.report.n_real << " imag=" << rec.report.n_imag
                     << " arc=" << rec.report.n_arc << " max_residual="
                     << rec.checks.bethe_residual.str(3, std::ios_base::scientific);
            else
                *log << " error=" << rec.error;
            if (!rec.escalations.empty()) *log << " escalations=" << rec.escalations.size();
            *log << " seconds=" << rec.seconds << '\n';
        }
        res.records.push_back(std::move(rec));
        if (res.records.back().certified()) prev = res.records.size() - 1;
    }

    if (!cfg.output_dir.empty()) {
        write_summary_csv(res, cfg.output_dir / "summary.csv");
        emit_figures(res, cfg);
    }
    return res;
}

}  // namespace tqroots
