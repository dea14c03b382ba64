#ifndef PERFTOWER_REPORT_HPP
#define PERFTOWER_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace perftower {

enum class Verdict { Pass, Fail, NotApplicable };

std::string verdict_name(Verdict v);

// One checked condition. `level` is the tower level or transition index the
// row refers to; -1 for tower-wide rows. Failures always carry a witness that
// can be re-checked with the kernel operations.
struct ConditionEntry {
    std::string condition;
    int level = -1;
    Verdict verdict = Verdict::NotApplicable;
    std::string witness;    // counterexample element / cofactor note
    std::string provenance; // "computed", "declared", "after_zariskization", "verified to depth m"
    std::uint64_t gb_queries = 0; // logical GB requests spent on this row
};

struct ConditionReport {
    std::vector<ConditionEntry> entries;

    void add(std::string condition, int level, Verdict v, std::string witness = "",
             std::string provenance = "");
    void merge(const ConditionReport& other);

    const ConditionEntry* find(const std::string& condition, int level) const;
    Verdict verdict_of(const std::string& condition, int level) const;
    // Pass iff no Fail rows (NotApplicable rows do not fail a report).
    bool all_pass() const;
    bool any_fail() const;
    // All rows with this condition prefix pass (ignoring NA).
    bool condition_passes(const std::string& prefix) const;

    std::string to_text() const;
};

} // namespace perftower

#endif
