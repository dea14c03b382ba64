#include <perftower/commands.hpp>
#include <perftower/error.hpp>
#include <perftower/parse.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "perftower: cannot open " << path << "\n";
        std::exit(2);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Common {
    std::string file;
    std::string pair_inline;
    std::string f_inline;
    std::string format = "text";
    perftower::CliOptions opts;
};

void add_common(CLI::App* cmd, Common& c, bool takes_file = true) {
    if (takes_file)
        cmd->add_option("file", c.file, "description file (.tower/.pair)");
    cmd->add_option("--n-max", [&c](const CLI::results_t& r) {
        c.opts.n_max = std::stoull(r[0]);
        return true;
    }, "max graded degree checked");
    cmd->add_option("--depth", [&c](const CLI::results_t& r) {
        c.opts.depth = std::stoull(r[0]);
        return true;
    }, "tilt truncation depth");
    cmd->add_option("--seed", [&c](const CLI::results_t& r) {
        c.opts.seed = std::stoull(r[0]);
        return true;
    }, "seed for sampled checks");
    cmd->add_option("--sample-size", [&c](const CLI::results_t& r) {
        c.opts.sample_size = std::stoull(r[0]);
        return true;
    }, "sample size for sampled checks");
    cmd->add_option("--format", c.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--no-cache", c.opts.no_cache, "disable the on-disk GB cache");
    cmd->add_option("--cache-dir", c.opts.cache_dir,
                    "GB cache directory (default: PERFTOWER_CACHE or .perftower-cache)");
}

int emit(const perftower::CliReport& rep, const std::string& format) {
    if (format == "json")
        std::cout << rep.to_json();
    else
        std::cout << rep.to_text();
    return rep.exit_code;
}

std::string inline_pair_document(const std::string& ring_spec, const std::string& f) {
    // Accepts the quotient-ring syntax, e.g. "Z[y]/(3y,y^2)".
    auto spec = perftower::parse_ring_spec(ring_spec);
    std::string doc = "pair {\n";
    doc += "  name = inline\n";
    doc += "  coeff = " + spec.ambient->ring().to_string() + "\n";
    doc += "  vars =";
    for (const auto& v : spec.ambient->vars())
        doc += " " + v + ",";
    if (!spec.ambient->vars().empty())
        doc.pop_back();
    doc += "\n  relations =";
    for (std::size_t i = 0; i < spec.relations.size(); ++i)
        doc += (i ? ", " : " ") + spec.relations[i].to_string();
    doc += "\n  f = " + f + "\n}\n";
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfectoid tower condition checker"};
    app.require_subcommand(1);

    struct Cmd {
        const char* name;
        const char* help;
    };
    const Cmd cmds[] = {
        {"check", "run the tower condition checks (a)-(g')"},
        {"theorem-a", "check the equivalence of the torsion and graded conditions"},
        {"gr", "graded colon ladder of a pair"},
        {"tilt", "truncated tilt and its graded comparison"},
        {"basechange", "certified weakly etale base change of a tower"},
        {"zariskize", "certify the Zariskian condition through integral transitions"},
        {"dim", "graded injectivity, reducedness and dimension table"},
        {"lemmas", "torsion/graded lemma suites on a pair"},
    };

    std::map<std::string, Common> common;
    std::map<std::string, CLI::App*> subs;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, common[c.name]);
        subs[c.name] = sub;
    }
    subs["gr"]->add_option("--pair", common["gr"].pair_inline,
                           "inline pair, e.g. \"Z[y]/(3y,y^2)\"");
    subs["gr"]->add_option("--f", common["gr"].f_inline, "pair generator");
    std::uint64_t gr_n = 3;
    subs["gr"]->add_option("--n", gr_n, "highest graded degree to print");
    subs["lemmas"]->add_option("--pair", common["lemmas"].pair_inline,
                               "inline pair, e.g. \"Z[y]/(3y,y^2)\"");
    subs["lemmas"]->add_option("--f", common["lemmas"].f_inline, "pair generator");
    std::size_t tilt_level = 0;
    subs["tilt"]->add_option("--level", tilt_level, "tilt base level");

    CLI11_PARSE(app, argc, argv);

    for (const auto& c : cmds) {
        if (!subs[c.name]->parsed())
            continue;
        Common& com = common[c.name];
        com.opts.gr_degree = gr_n;
        com.opts.tilt_level = tilt_level;
        std::string text;
        try {
            if (!com.pair_inline.empty()) {
                if (com.f_inline.empty()) {
                    std::cerr << "perftower: --pair needs --f\n";
                    return 2;
                }
                text = inline_pair_document(com.pair_inline, com.f_inline);
            } else if (!com.file.empty()) {
                text = slurp(com.file);
            } else {
                std::cerr << "perftower: need a description file or --pair\n";
                return 2;
            }
        } catch (const perftower::Error& e) {
            std::cerr << "perftower: " << e.what() << "\n";
            return 2;
        }
        perftower::CliReport rep = perftower::run_on_text(c.name, text, com.opts);
        return emit(rep, com.format);
    }
    return 2;
}
