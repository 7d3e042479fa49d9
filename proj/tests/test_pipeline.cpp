#include "tqroots/pipeline/figures.hpp"
#include "tqroots/pipeline/sweep.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace tqroots;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const char* base = std::getenv("TQROOTS_TEST_TMP");
    fs::path dir = fs::path(base ? base : fs::temp_directory_path() / "tqroots_tests") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& file) {
    std::ifstream is(file, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// Record text with the timing block removed.
std::string without_timing(const NRecord& r) {
    auto j = to_json(r);
    j.erase("timing");
    return j.dump();
}

}  // namespace

TEST_CASE("sweep 4..32 writes one certified file per n and a summary") {
    SweepConfig cfg;
    cfg.n_from = 4;
    cfg.n_to = 32;
    cfg.output_dir = scratch("sweep");
    std::ostringstream log;
    const SweepResult res = run_sweep(cfg, &log);
    REQUIRE(res.records.size() == 8);
    for (const auto& r : res.records) {
        CHECK(r.certified());
        CHECK(fs::exists(cfg.output_dir / record_filename(r.n)));
    }
    CHECK(record_filename(8) == "n0008.json");
    const std::string csv = slurp(cfg.output_dir / "summary.csv");
    CHECK(csv.rfind("n,n_real,n_imag,n_arc,max_residual,bits,seconds\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    CHECK(load_directory(cfg.output_dir).records.size() == 8);

    SUBCASE("resume recomputes nothing and reproduces the result") {
        SweepConfig again = cfg;
        again.resume = true;
        std::ostringstream log2;
        const SweepResult res2 = run_sweep(again, &log2);
        REQUIRE(res2.records.size() == res.records.size());
        for (std::size_t i = 0; i < res.records.size(); ++i) {
            CHECK(to_json(res2.records[i]).dump() == to_json(res.records[i]).dump());
        }
        const std::string text = log2.str();
        CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == res.records.size());
        std::size_t resumed = 0;
        for (std::size_t p = text.find("[resumed]"); p != std::string::npos; p = text.find("[resumed]", p + 1)) ++resumed;
        CHECK(resumed == res.records.size());
    }

    SUBCASE("a different precision setting is not reused") {
        SweepConfig other = cfg;
        other.resume = true;
        other.n_to = 8;
        other.bits = 600;
        std::ostringstream log2;
        run_sweep(other, &log2);
        CHECK(log2.str().find("[resumed]") == std::string::npos);
    }
}

TEST_CASE("result files round-trip and are deterministic") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    SweepConfig cfg;
    cfg.n_from = 12;
    cfg.n_to = 16;
    cfg.output_dir = a;
    const SweepResult ra = run_sweep(cfg);
    cfg.output_dir = b;
    const SweepResult rb = run_sweep(cfg);
    for (std::size_t i = 0; i < ra.records.size(); ++i) {
        CHECK(without_timing(ra.records[i]) == without_timing(rb.records[i]));
        const NRecord loaded = load_record(a / record_filename(ra.records[i].n));
        CHECK(to_json(loaded).dump() == to_json(ra.records[i]).dump());
        WorkingPrecision wp(loaded.bits_used);
        for (std::size_t k = 0; k < loaded.inhomogeneous.roots.size(); ++k)
            CHECK(loaded.inhomogeneous.roots[k] == ra.records[i].inhomogeneous.roots[k]);
    }

    SUBCASE("a tampered grid value is detected") {
        const fs::path file = a / record_filename(12);
        std::string text = slurp(file);
        const auto pos = text.find("\"values\"");
        REQUIRE(pos != std::string::npos);
        const auto digit = text.find_first_of("123456789", pos);
        text[digit] = text[digit] == '9' ? '8' : static_cast<char>(text[digit] + 1);
        std::ofstream(file, std::ios::binary | std::ios::trunc) << text;
        CHECK_THROWS(load_record(file));
    }
}

TEST_CASE("a deliberately tiny starting precision escalates") {
    SweepConfig cfg;
    cfg.n_from = 60;
    cfg.n_to = 64;
    cfg.bits_override[64] = 96;
    cfg.output_dir = scratch("escalate");
    const SweepResult res = run_sweep(cfg);
    const NRecord* r = res.find(64);
    REQUIRE(r);
    CHECK(r->certified());
    CHECK_FALSE(r->escalations.empty());
    CHECK(r->bits_requested == 96);
    CHECK(r->bits_used > 96);
    CHECK(r->escalations.front().bits == 96);
    const NRecord loaded = load_record(cfg.output_dir / record_filename(64));
    CHECK(loaded.escalations.size() == r->escalations.size());
    CHECK(to_json(loaded).at("timing").at("escalations").size() == r->escalations.size());
}

TEST_CASE("exhausted escalation yields a failed record and the sweep continues") {
    SweepConfig cfg;
    cfg.n_from = 60;
    cfg.n_to = 64;
    cfg.bits = 64;
    cfg.max_escalations = 0;
    cfg.output_dir = scratch("failed");
    const SweepResult res = run_sweep(cfg);
    REQUIRE(res.records.size() == 2);
    for (const auto& r : res.records) {
        CHECK_FALSE(r.certified());
        CHECK_FALSE(r.error.empty());
    }
    const NRecord loaded = load_record(cfg.output_dir / record_filename(64));
    CHECK(loaded.status == "failed");
}

TEST_CASE("figures") {
    SweepConfig cfg;
    cfg.n_from = 4;
    cfg.n_to = 24;
    cfg.output_dir = scratch("figures");
    const SweepResult res = run_sweep(cfg);

    SUBCASE("empty figure set writes nothing") {
        CHECK(emit_figures(res, cfg).empty());
        for (const auto& e : fs::directory_iterator(cfg.output_dir)) CHECK(e.path().extension() != ".svg");
    }
    SUBCASE("all six figures") {
        cfg.figures = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};
        const auto files = emit_figures(res, cfg);
        REQUIRE(files.size() == 6);
        for (const auto& f : files) {
            const std::string svg = slurp(f);
            CHECK(svg.find("<svg") != std::string::npos);
            CHECK(svg.find("</svg>") != std::string::npos);
        }
    }
    SUBCASE("a missing chain length is reported") {
        cfg.figures = {"fig5"};
        SweepResult partial = res;
        partial.records.erase(partial.records.begin() + 2);
        CHECK_THROWS_AS(emit_figures(partial, cfg), std::runtime_error);
    }
}

TEST_CASE("configuration validation") {
    SweepConfig cfg;
    cfg.n_from = 6;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n_from = 16;
    cfg.n_to = 8;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n_to = 16;
    cfg.figures = {"fig7"};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.figures = {};
    cfg.step = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.step = 4;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.starting_bits(16) == 512);
    CHECK(cfg.starting_bits(64) == 1024);
    CHECK(cfg.bits_mode(16) == "auto");
}

TEST_CASE("output directory from the environment") {
    const char* saved = std::getenv("TQROOTS_OUTPUT_DIR");
    const std::string keep = saved ? saved : "";
    setenv("TQROOTS_OUTPUT_DIR", "/tmp/somewhere", 1);
    CHECK(default_output_dir() == fs::path("/tmp/somewhere"));
    unsetenv("TQROOTS_OUTPUT_DIR");
    CHECK(default_output_dir() == fs::path("results"));
    if (saved) setenv("TQROOTS_OUTPUT_DIR", keep.c_str(), 1);
}
