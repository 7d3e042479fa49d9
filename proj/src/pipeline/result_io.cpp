#include "tqroots/pipeline/record.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace tqroots {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const NRecord* SweepResult::find(int n) const {
    for (const auto& r : records)
        if (r.n == n) return &r;
    return nullptr;
}

namespace {

struct Codec {
    unsigned bits;

    std::string real(const Real& x) const { return to_decimal(x, bits); }
    json complex(const Complex& z) const { return json{{"re", real(z.re)}, {"im", real(z.im)}}; }
    json opt(const std::optional<Real>& x) const { return x ? json(real(*x)) : json(nullptr); }
    json opt(const std::optional<Complex>& z) const { return z ? complex(*z) : json(nullptr); }
    json reals(const std::vector<Real>& v) const {
        json a = json::array();
        for (const auto& x : v) a.push_back(real(x));
        return a;
    }

    static Real real(const json& j) { return parse_real(j.get<std::string>()); }
    static Complex complex(const json& j) { return {real(j.at("re")), real(j.at("im"))}; }
    static std::optional<Real> opt_real(const json& j) {
        if (j.is_null()) return std::nullopt;
        return real(j);
    }
    static std::optional<Complex> opt_complex(const json& j) {
        if (j.is_null()) return std::nullopt;
        return complex(j);
    }
    static std::vector<Real> reals(const json& j) {
        std::vector<Real> v;
        for (const auto& x : j) v.push_back(real(x));
        return v;
    }
};

}  // namespace

std::string grid_checksum(const QGridValues& g) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& v : g.values) {
        for (char c : to_decimal(v, g.precision_bits)) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= 0x2c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

json to_json(const NRecord& r) {
    WorkingPrecision wp(std::max(64u, r.bits_used));
    const Codec c{std::max(64u, r.bits_used)};
    json j;
    j["schema_version"] = kResultSchemaVersion;
    j["n"] = r.n;
    j["status"] = r.status;
    j["error"] = r.error;

    json esc = json::array();
    for (const auto& e : r.escalations) esc.push_back({{"bits", e.bits}, {"error", e.error}});
    j["precision"] = {{"mode", r.bits_mode}, {"requested_bits", r.bits_requested}, {"used_bits", r.bits_used}};

    if (r.certified()) {
        const auto& h = r.homogeneous;
        j["homogeneous"] = {{"m", h.m},
                            {"roots", c.reals(h.roots)},
                            {"quantum_numbers", h.quantum_numbers},
                            {"max_residual", c.real(h.max_residual)},
                            {"iterations", h.iterations}};

        const auto& g = r.grid;
        j["grid"] = {{"method", to_string(g.solve_method)},
                     {"values", c.reals(g.values)},
                     {"closure_residual", c.real(g.closure_residual)},
                     {"band_residual", c.real(g.max_band_residual)},
                     {"checksum", grid_checksum(g)}};

        json roots = json::array();
        for (std::size_t i = 0; i < r.inhomogeneous.roots.size(); ++i) {
            json e = c.complex(r.inhomogeneous.roots[i]);
            e["family"] = i < r.labels.size() ? to_string(r.labels[i]) : "unclassified";
            e["residual"] = c.real(r.inhomogeneous.residuals[i]);
            roots.push_back(e);
        }
        j["inhomogeneous"] = {{"roots", roots}, {"aberth_iterations", r.inhomogeneous.aberth_iterations}};

        const auto& rep = r.report;
        j["report"] = {{"n_real", rep.n_real},
                       {"n_imag", rep.n_imag},
                       {"n_arc", rep.n_arc},
                       {"string_gaps", c.reals(rep.string.gaps)},
                       {"string_deviation_interior", c.opt(rep.string.interior_deviation)},
                       {"string_deviation_ends", c.opt(rep.string.end_deviation)},
                       {"max_real_deviation", c.opt(rep.max_real_deviation)},
                       {"min_arc_modulus", c.opt(rep.probes.min_arc_modulus)},
                       {"min_arc_height", c.opt(rep.probes.min_arc_height)},
                       {"ratio_probe", c.complex(rep.ratio_probe)},
                       {"arc_ratio", c.opt(rep.probes.arc_ratio)},
                       {"string_ratio", c.opt(rep.probes.string_ratio)},
                       {"inhomogeneous_term", c.opt(rep.probes.inhomogeneous_term)},
                       {"structural_anomaly", rep.structural_anomaly},
                       {"anomaly", rep.anomaly}};

        const auto& k = r.checks;
        j["checks"] = {{"homogeneous_residual", c.real(k.homogeneous_residual)},
                       {"t_half_defect", c.real(k.t_half_defect)},
                       {"fixed_root_defect", c.real(k.fixed_root_defect)},
                       {"bethe_residual", c.real(k.bethe_residual)},
                       {"tq_residual", c.real(k.tq_residual)},
                       {"tq_points", k.tq_points}};
    }
    j["timing"] = {{"seconds", r.seconds}, {"escalations", esc}};
    return j;
}

NRecord record_from_json(const json& j) {
    if (j.at("schema_version").get<int>() != kResultSchemaVersion)
        throw std::runtime_error("unsupported result schema version");
    NRecord r;
    r.n = j.at("n").get<int>();
    r.status = j.at("status").get<std::string>();
    r.error = j.at("error").get<std::string>();
    const auto& p = j.at("precision");
    r.bits_mode = p.at("mode").get<std::string>();
    r.bits_requested = p.at("requested_bits").get<unsigned>();
    r.bits_used = p.at("used_bits").get<unsigned>();
    const auto& timing = j.at("timing");
    r.seconds = timing.at("seconds").get<double>();
    for (const auto& e : timing.at("escalations"))
        r.escalations.push_back({e.at("bits").get<unsigned>(), e.at("error").get<std::string>()});
    if (!r.certified()) return r;

    WorkingPrecision wp(r.bits_used);
    const auto& h = j.at("homogeneous");
    r.homogeneous.n = r.n;
    r.homogeneous.m = h.at("m").get<int>();
    r.homogeneous.roots = Codec::reals(h.at("roots"));
    r.homogeneous.quantum_numbers = h.at("quantum_numbers").get<std::vector<long>>();
    r.homogeneous.max_residual = Codec::real(h.at("max_residual"));
    r.homogeneous.iterations = h.at("iterations").get<unsigned>();
    r.homogeneous.precision_bits = r.bits_used;

    const auto& g = j.at("grid");
    r.grid.n = r.n;
    r.grid.solve_method = solve_method_from_string(g.at("method").get<std::string>());
    r.grid.values = Codec::reals(g.at("values"));
    r.grid.closure_residual = Codec::real(g.at("closure_residual"));
    r.grid.max_band_residual = Codec::real(g.at("band_residual"));
    r.grid.precision_bits = r.bits_used;
    if (grid_checksum(r.grid) != g.at("checksum").get<std::string>())
        throw std::runtime_error("grid checksum mismatch for n=" + std::to_string(r.n));

    const auto& in = j.at("inhomogeneous");
    r.inhomogeneous.n = r.n;
    r.inhomogeneous.precision_bits = r.bits_used;
    r.inhomogeneous.aberth_iterations = in.at("aberth_iterations").get<unsigned>();
    for (const auto& e : in.at("roots")) {
        r.inhomogeneous.roots.push_back(Codec::complex(e));
        r.inhomogeneous.residuals.push_back(Codec::real(e.at("residual")));
        r.labels.push_back(root_family_from_string(e.at("family").get<std::string>()));
    }

    const auto& rep = j.at("report");
    r.report.n = r.n;
    r.report.n_real = rep.at("n_real").get<int>();
    r.report.n_imag = rep.at("n_imag").get<int>();
    r.report.n_arc = rep.at("n_arc").get<int>();
    r.report.string.gaps = Codec::reals(rep.at("string_gaps"));
    r.report.string.interior_deviation = Codec::opt_real(rep.at("string_deviation_interior"));
    r.report.string.end_deviation = Codec::opt_real(rep.at("string_deviation_ends"));
    r.report.max_real_deviation = Codec::opt_real(rep.at("max_real_deviation"));
    r.report.probes.min_arc_modulus = Codec::opt_real(rep.at("min_arc_modulus"));
    r.report.probes.min_arc_height = Codec::opt_real(rep.at("min_arc_height"));
    r.report.ratio_probe = Codec::complex(rep.at("ratio_probe"));
    r.report.probes.arc_ratio = Codec::opt_complex(rep.at("arc_ratio"));
    r.report.probes.string_ratio = Codec::opt_complex(rep.at("string_ratio"));
    r.report.probes.inhomogeneous_term = Codec::opt_complex(rep.at("inhomogeneous_term"));
    r.report.structural_anomaly = rep.at("structural_anomaly").get<bool>();
    r.report.anomaly = rep.at("anomaly").get<std::string>();

    const auto& k = j.at("checks");
    r.checks.homogeneous_residual = Codec::real(k.at("homogeneous_residual"));
    r.checks.t_half_defect = Codec::real(k.at("t_half_defect"));
    r.checks.fixed_root_defect = Codec::real(k.at("fixed_root_defect"));
    r.checks.bethe_residual = Codec::real(k.at("bethe_residual"));
    r.checks.tq_residual = Codec::real(k.at("tq_residual"));
    r.checks.tq_points = k.at("tq_points").get<int>();
    return r;
}

std::string record_filename(int n) {
    std::ostringstream os;
    os << 'n' << std::setw(4) << std::setfill('0') << n << ".json";
    return os.str();
}

void save_record(const NRecord& r, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path target = dir / record_filename(r.n);
    const fs::path tmp = dir / (record_filename(r.n) + ".tmp");
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << to_json(r).dump(2) << '\n';
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

NRecord load_record(const fs::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + file.string());
    return record_from_json(json::parse(is));
}

std::optional<NRecord> try_load_record(const fs::path& dir, int n) {
    const fs::path file = dir / record_filename(n);
    if (!fs::exists(file)) return std::nullopt;
    return load_record(file);
}

SweepResult load_directory(const fs::path& dir) {
    SweepResult res;
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
    static const std::regex pattern(R"(n\d{4}\.json)");
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (std::regex_match(name, pattern)) res.records.push_back(load_record(entry.path()));
    }
    std::sort(res.records.begin(), res.records.end(), [](const NRecord& a, const NRecord& b) { return a.n < b.n; });
    return res;
}

void write_summary_csv(const SweepResult& res, const fs::path& file) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::trunc);
    os << "n,n_real,n_imag,n_arc,max_residual,bits,seconds\n";
    for (const auto& r : res.records) {
        if (!r.certified()) {
            os << r.n << ",,,,," << r.bits_used << ',' << r.seconds << '\n';
            continue;
        }
        os << r.n << ',' << r.report.n_real << ',' << r.report.n_imag << ',' << r.report.n_arc << ','
           << r.checks.bethe_residual.str(6, std::ios_base::scientific) << ',' << r.bits_used << ',' << r.seconds
           << '\n';
    }
}

}  // namespace tqroots
