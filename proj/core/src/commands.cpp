#include "perftower/commands.hpp"

#include "perftower/error.hpp"
#include "perftower/parse.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <iostream>
#include <sstream>

namespace perftower {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// --- disk cache -----------------------------------------------------------------

namespace {

class DiskCache : public GBCacheBackend {
public:
    explicit DiskCache(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
    }

    std::optional<std::string> get(const std::string& key) override {
        std::ifstream in(dir_ / (key + ".gb"), std::ios::binary);
        if (!in)
            return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    void put(const std::string& key, const std::string& value) override {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        fs::path tmp = dir_ / (key + ".tmp" + std::to_string(::getpid()));
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                return; // cache is best effort
            out << value;
        }
        fs::rename(tmp, dir_ / (key + ".gb"), ec);
        if (ec)
            fs::remove(tmp, ec);
    }

private:
    fs::path dir_;
};

} // namespace

std::string resolve_cache_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty())
        return explicit_dir;
    if (const char* env = std::getenv("PERFTOWER_CACHE"))
        return env;
    return ".perftower-cache";
}

void install_disk_cache(const std::string& dir) {
    set_gb_cache_backend(std::make_shared<DiskCache>(fs::path(dir)));
}

void uninstall_disk_cache() { set_gb_cache_backend(nullptr); }

// --- report rendering --------------------------------------------------------------

std::string CliReport::to_json() const {
    ordered_json j;
    j["tool"] = "perftower";
    j["command"] = command;
    j["input"] = input_name;
    j["params"] = ordered_json{{"n_max", params.n_max},
                               {"depth", params.depth},
                               {"sample_size", params.sample_size},
                               {"seed", params.seed}};
    if (!error.empty()) {
        j["status"] = "error";
        j["error"] = error;
    } else {
        j["status"] = conditions.any_fail() ? "fail" : "pass";
    }
    j["exit_code"] = exit_code;
    ordered_json rows = ordered_json::array();
    for (const auto& e : conditions.entries) {
        ordered_json r;
        r["condition"] = e.condition;
        r["level"] = e.level;
        r["verdict"] = verdict_name(e.verdict);
        r["witness"] = e.witness;
        r["provenance"] = e.provenance;
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    ordered_json tb = ordered_json::array();
    for (const auto& [k, v] : tables)
        tb.push_back(ordered_json{{"key", k}, {"value", v}});
    j["tables"] = std::move(tb);
    return j.dump(2) + "\n";
}

std::string CliReport::to_text() const {
    std::ostringstream out;
    out << "perftower " << command << " " << input_name << "\n";
    if (!error.empty()) {
        out << "error: " << error << "\n";
        return out.str();
    }
    out << conditions.to_text();
    for (const auto& [k, v] : tables)
        out << k << " = " << v << "\n";
    out << "status: " << (conditions.any_fail() ? "FAIL" : "PASS") << " (exit "
        << exit_code << ")\n";
    return out.str();
}

// --- command dispatch -----------------------------------------------------------------

namespace {

ParamsDesc effective_params(const Description& d, const CliOptions& o) {
    ParamsDesc p = d.params;
    if (o.n_max)
        p.n_max = *o.n_max;
    if (o.depth)
        p.depth = *o.depth;
    if (o.seed)
        p.seed = *o.seed;
    if (o.sample_size)
        p.sample_size = *o.sample_size;
    return p;
}

void require_tower(const Description& d) {
    if (d.kind != Description::Kind::TowerDoc)
        fail("precondition", "this command needs a tower description");
}

void require_pair(const Description& d) {
    if (d.kind != Description::Kind::PairDoc)
        fail("precondition", "this command needs a pair description");
}

CliReport cmd_check(const Description& d, const ParamsDesc& p) {
    require_tower(d);
    Tower t = build_tower(d);
    CliReport rep;
    rep.conditions = check_axioms(t);
    rep.conditions.merge(check_g(t));
    rep.conditions.merge(check_g_prime(t, p.n_max));
    return rep;
}

CliReport cmd_theorem_a(const Description& d, const ParamsDesc& p) {
    require_tower(d);
    Tower t = build_tower(d);
    CliReport rep;
    rep.conditions = theorem_a_report(t, p.n_max);
    bool violated = rep.conditions.find("thmA.violation", -1) != nullptr;
    rep.tables.emplace_back("theorem_agreement", violated ? "VIOLATED" : "holds on all gated transitions");
    return rep;
}

CliReport cmd_gr(const Description& d, const ParamsDesc& p, std::uint64_t degree) {
    require_pair(d);
    PrincipalPair pair = build_pair(d);
    CliReport rep;
    (void)p;
    TorsionAnalysis ta = torsion_analysis(pair, degree);
    rep.tables.emplace_back("pair", pair.to_string());
    rep.tables.emplace_back("torsion", ta.torsion.to_string());
    rep.tables.emplace_back("small_torsion", ta.small_torsion ? "true" : "false");
    for (std::uint64_t n = 0; n <= degree; ++n) {
        GradedPiece gp = gr_piece(pair, n);
        rep.tables.emplace_back("C" + std::to_string(n), gp.presenting.to_string());
        rep.tables.emplace_back(
            "gr" + std::to_string(n),
            pair.algebra().ambient()->to_string() + "/" + gp.presenting.to_string() +
                " generated by " + gp.generator_power.to_string());
    }
    rep.conditions.add("gr.table", -1, Verdict::Pass, "",
                       "degrees 0.." + std::to_string(degree));
    return rep;
}

CliReport cmd_tilt(const Description& d, const ParamsDesc& p, std::size_t level) {
    require_tower(d);
    Tower t = build_tower(d);
    CliReport rep;
    rep.conditions = tilt_gr_comparison(t, level, p.depth, p.n_max);
    SmallTilt st(t, level, p.depth);
    if (t.has_f1()) {
        TiltElement fb = st.f_flat();
        std::string s = "(";
        for (std::size_t j = 0; j < fb.components.size(); ++j) {
            if (j)
                s += ", ";
            s += fb.components[j].to_string();
        }
        rep.tables.emplace_back("f_flat", s + ")");
    }
    return rep;
}

CliReport cmd_basechange(const Description& d, const ParamsDesc& p) {
    require_tower(d);
    if (!d.basechange)
        fail("precondition", "description has no basechange section");
    Tower t = build_tower(d);
    EtaleCertificate cert = build_basechange_cert(d);
    EtaleTarget target = build_etale_target(t.level(0), cert);
    BaseChangeResult r = base_change(t, target.map, cert, p.n_max);
    CliReport rep;
    rep.conditions = std::move(r.report);
    rep.tables.emplace_back("base", target.algebra.to_string());
    return rep;
}

CliReport cmd_zariskize(const Description& d, const ParamsDesc& p) {
    require_tower(d);
    if (d.integrality.empty())
        fail("precondition", "zariskize needs integrality certificates for every transition");
    Tower t = build_tower(d);
    ZariskizeResult r =
        zariskize_tower(t, build_integrality(d), p.sample_size, p.seed);
    CliReport rep;
    rep.conditions = std::move(r.report);
    rep.tables.emplace_back("zariskian_semantics",
                            zariskian_semantics_name(r.tower.semantics()));
    return rep;
}

CliReport cmd_dim(const Description& d, const ParamsDesc& p) {
    require_tower(d);
    Tower t = build_tower(d);
    CliReport rep;
    rep.conditions = structural_props(t, p.n_max);
    return rep;
}

CliReport cmd_lemmas(const Description& d, const ParamsDesc& p) {
    require_pair(d);
    PrincipalPair pair = build_pair(d);
    CliReport rep;
    for (std::uint64_t n = 1; n <= p.n_max; ++n) {
        GrnCheck c = grn_lemma_check(pair, n);
        rep.conditions.add("grn.agree", static_cast<int>(n), c.agree ? Verdict::Pass : Verdict::Fail,
                           "iso=" + std::string(c.iso ? "true" : "false") +
                               " cond3=" + std::string(c.cond3 ? "true" : "false"));
    }
    ExactnessCheck ex = exactness_check(pair);
    rep.conditions.add("exact.ex1", -1, ex.ex1);
    rep.conditions.add("exact.ex2", -1, ex.ex2, "",
                       pair.small_torsion() ? "small torsion" : "torsion is not small");

    ZariskOracle oracle(pair);
    // Whether the pair happens to be Zariskian is a property of the input,
    // not a lemma verdict; report it as data.
    rep.tables.emplace_back("is_zariskian",
                            oracle.is_zariskian() ? "true (Jacobson scope)"
                                                  : "false (Jacobson scope)");
    std::vector<Polynomial> sample = oracle.default_sample();
    bool consistent = true;
    const AmbientPtr& amb = pair.algebra().ambient();
    Polynomial one = Polynomial::constant(amb, 1);
    for (const auto& z : sample)
        if (oracle.kernel_member(z) &&
            !oracle.fractions_equal(z, one, Polynomial::zero(amb), one)) {
            consistent = false;
            break;
        }
    rep.conditions.add("zar.consistency", -1, consistent ? Verdict::Pass : Verdict::Fail);
    for (std::uint64_t n : {2ull, 3ull})
        rep.conditions.add("zar.power_invariance", static_cast<int>(n),
                           oracle.power_invariance(n, sample) ? Verdict::Pass : Verdict::Fail);
    return rep;
}

} // namespace

CliReport execute_command(const std::string& command, const Description& desc,
                          const CliOptions& opts) {
    ParamsDesc p = effective_params(desc, opts);
    if (!opts.no_cache)
        install_disk_cache(resolve_cache_dir(opts.cache_dir));
    else
        uninstall_disk_cache();

    CliReport rep;
    try {
        if (command == "check")
            rep = cmd_check(desc, p);
        else if (command == "theorem-a")
            rep = cmd_theorem_a(desc, p);
        else if (command == "gr")
            rep = cmd_gr(desc, p, opts.gr_degree);
        else if (command == "tilt")
            rep = cmd_tilt(desc, p, opts.tilt_level);
        else if (command == "basechange")
            rep = cmd_basechange(desc, p);
        else if (command == "zariskize")
            rep = cmd_zariskize(desc, p);
        else if (command == "dim")
            rep = cmd_dim(desc, p);
        else if (command == "lemmas")
            rep = cmd_lemmas(desc, p);
        else
            fail("precondition", "unknown command '" + command + "'");
        rep.exit_code = rep.conditions.any_fail() ? 1 : 0;
    } catch (const Error& e) {
        rep = CliReport{};
        rep.error = e.what();
        rep.exit_code = 2;
    }
    rep.command = command;
    rep.input_name = desc.name.empty() ? "(unnamed)" : desc.name;
    rep.params = p;
    return rep;
}

CliReport run_on_text(const std::string& command, const std::string& document_text,
                      const CliOptions& opts) {
    try {
        Description desc = parse_description(document_text);
        return execute_command(command, desc, opts);
    } catch (const Error& e) {
        CliReport rep;
        rep.command = command;
        rep.input_name = "(unparsed)";
        rep.error = e.what();
        rep.exit_code = 2;
        return rep;
    }
}

} // namespace perftower
