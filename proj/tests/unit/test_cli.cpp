#include <doctest.h>

#include <perftower/commands.hpp>
#include <perftower/error.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace perftower;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string data_file(const std::string& name) {
    return std::string(PERFTOWER_DATA_DIR) + "/" + name;
}

const char* kPairDoc = R"(
pair {
  name = torsion3
  coeff = Z
  vars = y
  relations = 3*y, y^2
  f = 3
}
)";

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("description parsing and validation") {
    Description d = parse_description(slurp(data_file("mixed_p2.tower")));
    CHECK(d.kind == Description::Kind::TowerDoc);
    CHECK(d.name == "mixed_p2");
    CHECK(d.levels.size() == 4);
    CHECK(d.transitions.size() == 3);
    CHECK(d.zariskian == "after_zariskization");
    CHECK(d.params.depth == 3);
    Tower t = build_tower(d);
    CHECK(t.level_count() == 4);
    CHECK(t.p() == 2);

    Description pd = parse_description(kPairDoc);
    CHECK(pd.kind == Description::Kind::PairDoc);
    CHECK(build_pair(pd).small_torsion());
}

TEST_CASE("parse diagnostics") {
    CHECK_THROWS_WITH_AS(parse_description(""), doctest::Contains("missing levels"), Error);
    CHECK_THROWS_WITH_AS(parse_description("tower {\n  coeff = Z\n}\n"),
                         doctest::Contains("missing levels"), Error);
    // Malformed polynomial: the diagnostic carries the token position.
    std::string bad = "pair {\n  coeff = Z\n  vars = y\n  relations = y^^2\n  f = 3\n}\n";
    try {
        parse_description(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("exponent") != std::string::npos);
    }
    // Non-prime p.
    std::string np = "tower {\n  coeff = Z\n  p = 6\n  level {\n    vars =\n    relations =\n  }\n  f0 = 6\n}\n";
    CHECK_THROWS_WITH_AS(parse_description(np), doctest::Contains("not prime"), Error);
}

TEST_CASE("exit codes") {
    CliOptions opts;
    opts.no_cache = true;
    CliReport ok = run_on_text("lemmas", kPairDoc, opts);
    CHECK(ok.exit_code == 0);

    // Whether a pair is Zariskian is reported as data, not as a verdict: the
    // lemma suites still pass on an honest non-Zariskian pair.
    const char* nonzar = R"(
pair {
  name = sqrt2
  coeff = Z
  vars = x
  relations = x^2 - 2
  f = x
}
)";
    CliReport r1 = run_on_text("lemmas", nonzar, opts);
    CHECK(r1.exit_code == 0);
    bool saw = false;
    for (const auto& [k, v] : r1.tables)
        if (k == "is_zariskian" && v.rfind("false", 0) == 0)
            saw = true;
    CHECK(saw);

    CliReport parse_fail = run_on_text("check", "nonsense", opts);
    CHECK(parse_fail.exit_code == 2);
    CHECK_FALSE(parse_fail.error.empty());

    CliReport wrong_kind = run_on_text("check", kPairDoc, opts);
    CHECK(wrong_kind.exit_code == 2);
}

TEST_CASE("machine reports are deterministic and cache transparent") {
    std::string doc = slurp(data_file("char2_torsion.tower"));
    CliOptions no_cache;
    no_cache.no_cache = true;

    CliReport r1 = run_on_text("check", doc, no_cache);
    CliReport r2 = run_on_text("check", doc, no_cache);
    CHECK(r1.to_json() == r2.to_json());
    CHECK(r1.exit_code == 0);

    // Cold disk cache, then warm, then disabled: byte-identical reports.
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "perftower-test-cache";
    fs::remove_all(dir);
    CliOptions with_cache;
    with_cache.cache_dir = dir.string();
    clear_gb_memory_cache();
    CliReport cold = run_on_text("check", doc, with_cache);
    clear_gb_memory_cache();
    CliReport warm = run_on_text("check", doc, with_cache);
    clear_gb_memory_cache();
    CliReport off = run_on_text("check", doc, no_cache);
    CHECK(cold.to_json() == warm.to_json());
    CHECK(cold.to_json() == off.to_json());
    CHECK(fs::exists(dir));

    // Corrupt every cache entry: verdicts unchanged, cache bypassed.
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ofstream out(entry.path(), std::ios::trunc);
        out << "garbage";
    }
    clear_gb_memory_cache();
    CliReport corrupted = run_on_text("check", doc, with_cache);
    CHECK(corrupted.to_json() == cold.to_json());
    fs::remove_all(dir);
    uninstall_disk_cache();
}

TEST_CASE("verdict agreement between renderings") {
    std::string doc = slurp(data_file("mixed_p2.tower"));
    CliOptions opts;
    opts.no_cache = true;
    CliReport rep = run_on_text("theorem-a", doc, opts);
    // Every fail in the machine report is visible in the text rendering.
    std::string text = rep.to_text();
    for (const auto& e : rep.conditions.entries)
        if (e.verdict == Verdict::Fail)
            CHECK(text.find(e.condition) != std::string::npos);
    CHECK(rep.to_json().find("\"status\": \"pass\"") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);
}

TEST_CASE("all commands run on the shipped files") {
    CliOptions opts;
    opts.no_cache = true;
    for (const char* cmd : {"check", "theorem-a", "dim", "tilt", "zariskize", "basechange"}) {
        CliReport rep = run_on_text(cmd, slurp(data_file("char2_poly.tower")), opts);
        INFO(cmd, ": ", rep.error);
        CHECK(rep.exit_code == 0);
    }
    for (const char* cmd : {"gr", "lemmas"}) {
        CliReport rep = run_on_text(cmd, slurp(data_file("torsion3.pair")), opts);
        INFO(cmd, ": ", rep.error);
        CHECK(rep.exit_code == 0);
    }
}

TEST_SUITE_END();
