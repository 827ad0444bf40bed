#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hexid/codes.hpp"
#include "hexid/rational.hpp"
#include "hexid/share.hpp"

namespace hexid {

struct Transfer {
    Vertex target;    // offset from the source in the rule frame
    Rational amount;  // one of 1/4, 1/6, 1/12
    auto operator<=>(const Transfer& o) const {
        if (auto c = target <=> o.target; c != 0) return c;
        if (auto c = amount.num() <=> o.amount.num(); c != 0) return c;
        return amount.den() <=> o.amount.den();
    }
    bool operator==(const Transfer& o) const = default;
};

struct OverrideCond {
    std::string rule_id;  // the modification that takes precedence
    Vertex trigger;       // ... when this offset is a codeword
};

// A declarative discharge pattern, anchored at the source offset (0,0),
// which must be listed among the required codewords.
struct Rule {
    std::string id;
    std::vector<Vertex> codewords;
    std::vector<Vertex> noncodewords;
    std::vector<std::vector<Vertex>> any_of;  // each group: at least one is a codeword
    std::vector<Transfer> transfers;
    std::vector<OverrideCond> overrides;
};

struct RulesError : std::runtime_error {
    int line;
    RulesError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

std::vector<Rule> load_rules(std::istream& in);
std::vector<Rule> load_rules_file(const std::string& path);

// ids that the shipped rules file must carry, exactly
bool is_standard_ruleset(const std::vector<Rule>& rules);

// A rule matched somewhere in the code. `orientation` indexes the placement
// (one of the 6 stabilizer elements at the source, with the source's parity
// folded in); transfers are resolved to absolute target vertices.
struct RuleInstance {
    std::string rule_id;
    Vertex source;
    int orientation;
    std::vector<Transfer> resolved;  // absolute targets
    bool operator==(const RuleInstance&) const = default;
};

// Every placement (translation x stabilizer) of every rule whose constraints
// hold, source restricted to one fundamental domain, deduplicated by
// (rule, source, resolved transfers) so pattern self-symmetries do not
// double-fire.
std::vector<RuleInstance> match_instances(const PeriodicCode& code,
                                          const std::vector<Rule>& rules);

struct ModifiedShareEntry {
    Vertex codeword;
    Rational s2;
    Rational ms2;
    Rational incoming;
    Rational outgoing;
};

struct ModifiedShareReport {
    std::vector<ModifiedShareEntry> entries;  // sorted by codeword
    std::vector<RuleInstance> instances;
    Rational sum_s2, sum_ms2, max_s2, max_ms2;
};

ModifiedShareReport apply_scheme(const PeriodicCode& code, const std::vector<Rule>& rules);

struct WindowCheck {
    long long n;
    Rational share_sum;   // sum of s2 over codewords of Q_n
    long long threshold;  // (2n-3)^2
    bool ok;
};

struct CertificateReport {
    Rational density;
    Rational max_s2;
    Rational max_ms2;
    bool density_ok;      // density >= 4/19
    bool bound_ok;        // max ms2 <= 19/4
    bool conservation_ok; // sum ms2 == sum s2 == area
    std::vector<WindowCheck> windows;
    bool all_ok() const {
        if (!density_ok || !bound_ok || !conservation_ok) return false;
        for (auto& w : windows)
            if (!w.ok) return false;
        return true;
    }
};

// Refuses (throws std::invalid_argument) unless the code verifies as
// 2-identifying.
CertificateReport certify(const PeriodicCode& code, const std::vector<Rule>& rules,
                          const std::vector<long long>& windows);

// Self-audit: re-checks every fired instance against the code and verifies
// override exclusivity (at most one of a base rule and its modifications per
// source and orientation). Returns human-readable violations, empty if clean.
std::vector<std::string> audit_scheme(const PeriodicCode& code,
                                      const std::vector<Rule>& rules);

}  // namespace hexid
