#include "tqroots/errors.hpp"
#include "tqroots/pipeline/sweep.hpp"
#include "tqroots/root_analysis.hpp"
#include "tqroots/root_finder.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace tqroots;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kAnomaly = 2;

std::optional<unsigned> parse_bits(const std::string& s) {
    if (s == "auto") return std::nullopt;
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size()) throw std::invalid_argument("precision bits must be an integer or 'auto': " + s);
    return static_cast<unsigned>(v);
}

std::string sci(const Real& x) { return x.str(3, std::ios_base::scientific); }

// Exit status for a set of records: failures beat anomalies.
int status_of(const SweepResult& res, bool check_bounds, std::ostream& out) {
    bool failed = false, anomaly = false;
    std::vector<RootFamilyReport> reports;
    for (const auto& r : res.records) {
        if (!r.certified()) {
            failed = true;
            continue;
        }
        reports.push_back(r.report);
        if (r.report.structural_anomaly) {
            anomaly = true;
            out << "anomaly n=" << r.n << ": " << r.report.anomaly << '\n';
        }
    }
    if (check_bounds) {
        const BoundReport b = check_ni_bounds(reports);
        for (const auto& v : b.violations) out << "bound violation n=" << v.n << ": " << v.what << '\n';
        out << "bounds: " << b.checked << " checked, " << b.violations.size() << " violations\n";
        if (!b.ok()) anomaly = true;
    }
    if (failed) return kError;
    return anomaly ? kAnomaly : kOk;
}

void print_record(const NRecord& r, std::ostream& out) {
    out << "n=" << r.n << " status=" << r.status << " bits=" << r.bits_used;
    if (!r.certified()) {
        out << " error=" << r.error << '\n';
        return;
    }
    out << " real=" << r.report.n_real << " imag=" << r.report.n_imag << " arc=" << r.report.n_arc
        << " bethe=" << sci(r.checks.bethe_residual) << " tq=" << sci(r.checks.tq_residual) << '\n';
}

int cmd_solve(int n, const std::string& bits, const std::string& out_dir) {
    SweepConfig cfg;
    cfg.n_from = cfg.n_to = n;
    cfg.bits = parse_bits(bits);
    cfg.output_dir = out_dir.empty() ? default_output_dir() : std::filesystem::path(out_dir);
    const SweepResult res = run_sweep(cfg, nullptr);
    print_record(res.records.front(), std::cout);
    return status_of(res, false, std::cout);
}

int cmd_report(const std::string& in, bool check_bounds) {
    const SweepResult res = load_directory(in.empty() ? default_output_dir() : std::filesystem::path(in));
    if (res.records.empty()) throw std::runtime_error("no result files found");
    for (const auto& r : res.records) print_record(r, std::cout);
    return status_of(res, check_bounds, std::cout);
}

int cmd_verify(const std::string& in, int n, int tq_points) {
    const std::filesystem::path dir = in.empty() ? default_output_dir() : std::filesystem::path(in);
    const auto rec = try_load_record(dir, n);
    if (!rec) throw std::runtime_error("no result file for n=" + std::to_string(n));
    if (!rec->certified()) {
        std::cout << "n=" << n << " stored record is not certified: " << rec->error << '\n';
        return kError;
    }
    WorkingPrecision wp(rec->bits_used);
    const PrecisionConfig cfg = PrecisionConfig::for_bits(rec->bits_used);
    const Real tol = pow2(-static_cast<long>(cfg.bits / 8));
    const Real threshold("1e-20");

    const Real hom = max_bethe_residual(rec->homogeneous.roots, n);
    Real inh(0);
    for (int k = 0; k < static_cast<int>(rec->inhomogeneous.roots.size()); ++k)
        inh = rmax(inh, inhomo_bethe_residual(rec->inhomogeneous.roots, n, k));
    const TransferEvaluator ev(rec->homogeneous);
    const Real t_half = abs(ev.t(Complex(Real(0), Real(0.5))) - Complex(1));
    const ReducedQ rq(rec->grid);
    int used = 0;
    const Real tq = sampled_tq_residual(rq, ev, tq_points, &used);
    const RootFamilyReport rep = classify(rec->inhomogeneous, cfg, &rec->homogeneous);

    bool ok = true;
    auto line = [&](const char* what, const Real& value, const Real& bound) {
        const bool pass = value < bound;
        ok = ok && pass;
        std::cout << (pass ? "ok   " : "FAIL ") << what << " = " << sci(value) << " (< " << sci(bound) << ")\n";
    };
    std::cout << "n=" << n << " bits=" << rec->bits_used << '\n';
    line("homogeneous residual", hom, tol);
    line("inhomogeneous Bethe residual", inh, threshold);
    line("|t(i/2) - 1|", t_half, threshold);
    line("T-Q residual", tq, threshold);
    const bool counts = rep.n_real == rec->report.n_real && rep.n_imag == rec->report.n_imag &&
                        rep.n_arc == rec->report.n_arc;
    std::cout << (counts ? "ok   " : "FAIL ") << "family counts real=" << rep.n_real << " imag=" << rep.n_imag
              << " arc=" << rep.n_arc << '\n';
    if (used < tq_points) std::cout << "note: only " << used << " T-Q probe points accepted\n";
    if (!ok || !counts) return kError;
    if (rep.structural_anomaly) {
        std::cout << "anomaly: " << rep.anomaly << '\n';
        return kAnomaly;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground-state roots of the inhomogeneous T-Q relation for the periodic XXX chain"};
    app.require_subcommand(1);

    int solve_n = 0;
    std::string solve_bits = "auto", solve_out;
    auto* solve = app.add_subcommand("solve", "Solve one chain length");
    solve->add_option("--n", solve_n, "Chain length (multiple of 4)")->required();
    solve->add_option("--precision-bits", solve_bits, "Working precision in bits, or 'auto'");
    solve->add_option("--out", solve_out, "Output directory");

    SweepConfig sweep_cfg;
    std::string sweep_bits = "auto", sweep_out, sweep_method = "shooting";
    std::vector<std::string> figures, overrides;
    bool cold = false;
    auto* sweep = app.add_subcommand("sweep", "Solve a range of chain lengths");
    sweep->add_option("--from", sweep_cfg.n_from, "First chain length")->required();
    sweep->add_option("--to", sweep_cfg.n_to, "Last chain length")->required();
    sweep->add_option("--step", sweep_cfg.step, "Step between chain lengths")->capture_default_str();
    sweep->add_flag("--resume", sweep_cfg.resume, "Reuse certified result files");
    sweep->add_option("--figures", figures, "Figures to emit (fig1..fig6)")->delimiter(',');
    sweep->add_option("--out", sweep_out, "Output directory");
    sweep->add_option("--precision-bits", sweep_bits, "Starting precision in bits, or 'auto'");
    sweep->add_option("--bits-override", overrides, "Per-n starting precision as n=bits")->delimiter(',');
    sweep->add_option("--method", sweep_method, "Grid solver: shooting or dense_lu")
        ->check(CLI::IsMember({"shooting", "dense_lu"}));
    sweep->add_option("--tq-points", sweep_cfg.tq_points, "Random T-Q probe points per n")->capture_default_str();
    sweep->add_flag("--cold", cold, "Disable warm starts between chain lengths");

    std::string report_in;
    bool check_bounds = false;
    auto* report = app.add_subcommand("report", "Summarize stored results");
    report->add_option("--in", report_in, "Result directory");
    report->add_flag("--check-bounds", check_bounds, "Check the imaginary-string count bounds");

    std::string verify_in;
    int verify_n = 0, verify_points = 50;
    auto* verify = app.add_subcommand("verify", "Recompute residuals from stored roots");
    verify->add_option("--in", verify_in, "Result directory");
    verify->add_option("--n", verify_n, "Chain length")->required();
    verify->add_option("--tq-points", verify_points, "Random T-Q probe points")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    try {
        if (*solve) return cmd_solve(solve_n, solve_bits, solve_out);
        if (*sweep) {
            sweep_cfg.bits = parse_bits(sweep_bits);
            sweep_cfg.output_dir = sweep_out.empty() ? default_output_dir() : std::filesystem::path(sweep_out);
            sweep_cfg.figures.insert(figures.begin(), figures.end());
            sweep_cfg.method = solve_method_from_string(sweep_method);
            sweep_cfg.warm_start = !cold;
            for (const auto& o : overrides) {
                const auto eq = o.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("bits override must be n=bits: " + o);
                const auto b = parse_bits(o.substr(eq + 1));
                if (!b) throw std::invalid_argument("bits override needs an explicit bit count: " + o);
                sweep_cfg.bits_override[std::stoi(o.substr(0, eq))] = *b;
            }
            const SweepResult res = run_sweep(sweep_cfg, &std::cout);
            return status_of(res, true, std::cout);
        }
        if (*report) return cmd_report(report_in, check_bounds);
        if (*verify) return cmd_verify(verify_in, verify_n, verify_points);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
