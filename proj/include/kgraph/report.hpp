#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace kgraph {

struct Violation {
    std::string axiom;    // which law failed
    std::string witness;  // morphisms / indices exhibiting the failure
};

/// Outcome of an exhaustive check.  `passed` iff `violations` is empty.
/// `boundary` collects instances that could not be decided at the available
/// truncation depth (skipped, not failed), and `counters` records how much
/// was actually checked so reports expose their own margins.
struct AxiomReport {
    bool passed = true;
    std::vector<Violation> violations;
    std::vector<std::string> boundary;
    std::map<std::string, std::int64_t> counters;

    void fail(std::string axiom, std::string witness) {
        passed = false;
        violations.push_back({std::move(axiom), std::move(witness)});
    }
    void note_boundary(std::string what) { boundary.push_back(std::move(what)); }
    void bump(const std::string& key, std::int64_t by = 1) { counters[key] += by; }

    /// Merge another report in (used by composite suites).
    void absorb(const AxiomReport& other, const std::string& prefix) {
        if (!other.passed) passed = false;
        for (const auto& v : other.violations)
            violations.push_back({prefix + "/" + v.axiom, v.witness});
        for (const auto& b : other.boundary) boundary.push_back(prefix + "/" + b);
        for (const auto& [k, v] : other.counters) counters[prefix + "/" + k] += v;
    }

    std::string first_witness() const {
        return violations.empty() ? std::string()
                                  : violations.front().axiom + ": " + violations.front().witness;
    }
};

/// One row of a check-suite CSV: (check, instance, n, bound, passed, witness).
struct CheckRow {
    std::string check;
    std::string instance;
    std::string n;
    std::string bound;
    bool passed = true;
    std::string witness;
};

inline std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline void write_check_csv(std::ostream& os, const std::vector<CheckRow>& rows) {
    os << "check,instance,n,bound,passed,witness\n";
    for (const auto& r : rows) {
        os << csv_quote(r.check) << ',' << csv_quote(r.instance) << ',' << csv_quote(r.n)
           << ',' << csv_quote(r.bound) << ',' << (r.passed ? "true" : "false") << ','
           << csv_quote(r.witness) << '\n';
    }
}

}  // namespace kgraph
