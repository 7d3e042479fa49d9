#pragma once

#include "tqroots/homogeneous_bethe.hpp"
#include "tqroots/inhomogeneous_qsolver.hpp"
#include "tqroots/root_analysis.hpp"
#include "tqroots/root_finder.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tqroots {

inline constexpr int kResultSchemaVersion = 1;

struct EscalationEvent {
    unsigned bits = 0;   // precision at which the failure occurred
    std::string error;
};

/// Residual maxima recomputed from the stored solution.
struct RecordChecks {
    Real homogeneous_residual;  // max relative defect of the product Bethe equations
    Real t_half_defect;         // |t(i/2) - 1|
    Real fixed_root_defect;     // max over +-i/2 of |Q| relative to |Q(+-i/2 + i)|
    Real bethe_residual;        // max relative defect of the inhomogeneous Bethe equations
    Real tq_residual;           // max relative T-Q defect over the random probe points
    int tq_points = 0;
};

/// Everything computed for one chain length.
struct NRecord {
    int n = 0;
    std::string status = "certified";  // or "failed"
    std::string error;
    std::string bits_mode = "auto";     // "auto" or the fixed bit count as text
    unsigned bits_requested = 0;
    unsigned bits_used = 0;
    std::vector<EscalationEvent> escalations;

    HomogeneousSolution homogeneous;
    QGridValues grid;
    InhomogeneousSolution inhomogeneous;
    std::vector<RootFamily> labels;
    RootFamilyReport report;
    RecordChecks checks;

    double seconds = 0;

    bool certified() const { return status == "certified"; }
};

struct SweepResult {
    std::vector<NRecord> records;  // sorted by n

    const NRecord* find(int n) const;
};

/// Full-precision structured-text form. Numbers are decimal strings;
/// timing lives under "timing" so the rest is reproducible byte for byte.
nlohmann::ordered_json to_json(const NRecord& r);
NRecord record_from_json(const nlohmann::ordered_json& j);

std::string record_filename(int n);

/// Write-temp-then-rename.
void save_record(const NRecord& r, const std::filesystem::path& dir);
NRecord load_record(const std::filesystem::path& file);
std::optional<NRecord> try_load_record(const std::filesystem::path& dir, int n);

/// All n*.json records in a directory, sorted by n.
SweepResult load_directory(const std::filesystem::path& dir);

/// One line per record: n,n_real,n_imag,n_arc,max_residual,bits,seconds.
void write_summary_csv(const SweepResult& res, const std::filesystem::path& file);

/// FNV-1a over the serialized grid values, hex.
std::string grid_checksum(const QGridValues& g);

}  // namespace tqroots
