#include "perftower/report.hpp"

#include "perftower/ideal.hpp"

#include <sstream>

namespace perftower {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::NotApplicable:
        return "not_applicable";
    }
    return "?";
}

void ConditionReport::add(std::string condition, int level, Verdict v, std::string witness,
                          std::string provenance) {
    ConditionEntry e;
    e.condition = std::move(condition);
    e.level = level;
    e.verdict = v;
    e.witness = std::move(witness);
    e.provenance = std::move(provenance);
    e.gb_queries = gb_stats_snapshot().queries;
    entries.push_back(std::move(e));
}

void ConditionReport::merge(const ConditionReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

const ConditionEntry* ConditionReport::find(const std::string& condition, int level) const {
    for (const auto& e : entries)
        if (e.condition == condition && e.level == level)
            return &e;
    return nullptr;
}

Verdict ConditionReport::verdict_of(const std::string& condition, int level) const {
    const ConditionEntry* e = find(condition, level);
    return e ? e->verdict : Verdict::NotApplicable;
}

bool ConditionReport::all_pass() const { return !any_fail(); }

bool ConditionReport::any_fail() const {
    for (const auto& e : entries)
        if (e.verdict == Verdict::Fail)
            return true;
    return false;
}

bool ConditionReport::condition_passes(const std::string& prefix) const {
    for (const auto& e : entries)
        if (e.condition.rfind(prefix, 0) == 0 && e.verdict == Verdict::Fail)
            return false;
    return true;
}

std::string ConditionReport::to_text() const {
    std::ostringstream out;
    for (const auto& e : entries) {
        out << e.condition;
        if (e.level >= 0)
            out << "[" << e.level << "]";
        out << ": " << verdict_name(e.verdict);
        if (!e.provenance.empty())
            out << " (" << e.provenance << ")";
        if (!e.witness.empty())
            out << "  -- " << e.witness;
        out << "\n";
    }
    return out.str();
}

} // namespace perftower
