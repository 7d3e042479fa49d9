#pragma once

#include "tqroots/pipeline/record.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace tqroots {

struct SweepConfig {
    int n_from = 4;
    int n_to = 4;
    int step = 4;
    std::optional<unsigned> bits;          // nullopt means auto: max(512, 16 n)
    std::map<int, unsigned> bits_override;  // per-n starting precision
    std::filesystem::path output_dir;       // empty: keep results in memory only
    std::set<std::string> figures;          // subset of fig1..fig6
    bool resume = false;
    bool warm_start = true;
    unsigned max_escalations = 3;
    SolveMethod method = SolveMethod::shooting;
    int tq_points = 50;

    /// Throws std::invalid_argument on a malformed configuration.
    void validate() const;
    unsigned starting_bits(int n) const;
    std::string bits_mode(int n) const;
};

/// Output directory from TQROOTS_OUTPUT_DIR, else "results".
std::filesystem::path default_output_dir();

/// Solve one chain length at a fixed precision, no escalation. Throws the
/// solver stage errors.
NRecord solve_chain(int n, unsigned bits, SolveMethod method = SolveMethod::shooting,
                    const HomogeneousSolution* warm_hom = nullptr,
                    const InhomogeneousSolution* warm_inh = nullptr, int tq_points = 50);

/// solve_chain with precision escalation on precision-sensitive failures.
/// A failure after max_escalations, or a non-escalatable error, yields a
/// record with status "failed".
NRecord solve_with_escalation(int n, const SweepConfig& cfg, const HomogeneousSolution* warm_hom = nullptr,
                              const InhomogeneousSolution* warm_inh = nullptr);

/// Max relative T-Q residual at `count` deterministic pseudo-random points in
/// the disk |lambda| <= n/4, skipping points within 1/4 of a homogeneous root.
Real sampled_tq_residual(const ReducedQ& rq, const TransferEvaluator& ev, int count, int* used = nullptr);

/// Run every n in [n_from, n_to] by step; writes one file per n, the CSV
/// summary and the requested figures when output_dir is set. `log` receives
/// one progress line per n when non-null.
SweepResult run_sweep(const SweepConfig& cfg, std::ostream* log = nullptr);

}  // namespace tqroots
