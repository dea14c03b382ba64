#ifndef PERFTOWER_COMMANDS_HPP
#define PERFTOWER_COMMANDS_HPP

#include "perftower/descr.hpp"
#include "perftower/report.hpp"

#include <optional>
#include <string>

namespace perftower {

// Exit codes: 0 all pass, 1 some fail verdict, 2 precondition/parse error.
struct CliReport {
    std::string command;
    std::string input_name;
    ParamsDesc params;
    ConditionReport conditions;
    std::vector<std::pair<std::string, std::string>> tables; // extra key/value rows
    std::string error; // non-empty for exit code 2
    int exit_code = 0;

    std::string to_json() const; // machine-readable; no wall-clock content
    std::string to_text() const; // human-readable; agrees on verdicts
};

struct CliOptions {
    std::optional<std::uint64_t> n_max;
    std::optional<std::uint64_t> depth;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> sample_size;
    std::size_t tilt_level = 0;
    std::uint64_t gr_degree = 3; // for `gr`
    bool no_cache = false;
    std::string cache_dir; // empty: PERFTOWER_CACHE or default
};

// Commands: check, theorem-a, gr, tilt, basechange, zariskize, dim, lemmas.
CliReport execute_command(const std::string& command, const Description& desc,
                          const CliOptions& opts);

// Convenience wrapper: parse + dispatch, mapping Error to exit code 2.
CliReport run_on_text(const std::string& command, const std::string& document_text,
                      const CliOptions& opts);

// On-disk GB cache (atomic get-or-compute per key); install_disk_cache wires
// it into the kernel. Resolution order for the directory: explicit argument,
// PERFTOWER_CACHE, ".perftower-cache".
std::string resolve_cache_dir(const std::string& explicit_dir);
void install_disk_cache(const std::string& dir);
void uninstall_disk_cache();

} // namespace perftower

#endif
