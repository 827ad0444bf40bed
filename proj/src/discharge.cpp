#include "hexid/discharge.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

namespace hexid {

namespace {

const std::vector<std::string> kStandardIds = {"1", "1.1", "1.2", "2",   "2.1", "2.2",
                                               "2.3", "3", "4",   "5",   "6",   "7",
                                               "7.1", "8", "9",   "10"};

bool allowed_amount(const Rational& a) {
    return a == Rational(1, 4) || a == Rational(1, 6) || a == Rational(1, 12);
}

// Images of rule offsets under the 12 base orientations: 6 automorphisms
// fixing (0,0) and 6 mapping (0,0) to (1,0). Placing a rule at source s uses
// the parity-matching half composed with the translation by s or s-(1,0).
class OrientationTable {
public:
    static OrientationTable& instance() {
        static OrientationTable t;
        return t;
    }

    Vertex image(int k, Vertex off) {
        std::lock_guard<std::mutex> lock(mu_);
        auto& m = cache_[k];
        auto it = m.find(off);
        if (it != m.end()) return it->second;
        Vertex img = maps_[k](Vertex{0, 0} + off) - base_[k];
        m.emplace(off, img);
        return img;
    }

private:
    OrientationTable() {
        for (auto& a : vertex_stabilizer({0, 0})) {
            maps_.push_back(a);
            base_.push_back({0, 0});
        }
        for (auto& a : vertex_maps({0, 0}, {1, 0})) {
            maps_.push_back(a);
            base_.push_back({1, 0});
        }
    }
    std::vector<Automorphism> maps_;
    std::vector<Vertex> base_;
    std::unordered_map<Vertex, Vertex, VertexHash> cache_[12];
    std::mutex mu_;
};

struct OrientedRule {
    const Rule* rule;
    int orientation;
    std::vector<Vertex> ins, outs;
    std::vector<std::vector<Vertex>> any_of;
    std::vector<Transfer> transfers;
};

std::vector<OrientedRule> orient_all(const std::vector<Rule>& rules) {
    auto& tab = OrientationTable::instance();
    std::vector<OrientedRule> out;
    for (const Rule& r : rules) {
        for (int k = 0; k < 12; ++k) {
            OrientedRule o;
            o.rule = &r;
            o.orientation = k;
            for (Vertex v : r.codewords) o.ins.push_back(tab.image(k, v));
            for (Vertex v : r.noncodewords) o.outs.push_back(tab.image(k, v));
            for (auto& grp : r.any_of) {
                std::vector<Vertex> g;
                for (Vertex v : grp) g.push_back(tab.image(k, v));
                o.any_of.push_back(std::move(g));
            }
            for (auto& t : r.transfers) o.transfers.push_back({tab.image(k, t.target), t.amount});
            out.push_back(std::move(o));
        }
    }
    return out;
}

}  // namespace

std::vector<Rule> load_rules(std::istream& in) {
    std::vector<Rule> rules;
    std::string line;
    int no = 0;
    Rule cur;
    bool open = false;
    auto need_open = [&](const std::string& what) {
        if (!open) throw RulesError(no, what + " outside a rule block");
    };
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> t;
        std::string w;
        while (ss >> w) t.push_back(w);
        if (t.empty()) continue;
        auto geti = [&](size_t i) -> long long {
            try {
                size_t pos = 0;
                long long v = std::stoll(t.at(i), &pos);
                if (pos != t[i].size()) throw std::invalid_argument(t[i]);
                return v;
            } catch (const std::exception&) {
                throw RulesError(no, "expected an integer in '" + line + "'");
            }
        };
        if (t[0] == "rule") {
            if (open) throw RulesError(no, "nested rule block");
            if (t.size() != 2) throw RulesError(no, "rule needs an id");
            cur = Rule{};
            cur.id = t[1];
            open = true;
        } else if (t[0] == "codeword") {
            need_open("codeword");
            if (t.size() != 3) throw RulesError(no, "codeword needs 2 integers");
            cur.codewords.push_back({geti(1), geti(2)});
        } else if (t[0] == "noncodeword") {
            need_open("noncodeword");
            if (t.size() != 3) throw RulesError(no, "noncodeword needs 2 integers");
            cur.noncodewords.push_back({geti(1), geti(2)});
        } else if (t[0] == "anyof") {
            need_open("anyof");
            std::vector<Vertex> grp;
            std::vector<long long> nums;
            for (size_t i = 1; i < t.size(); ++i) {
                if (t[i] == ";") continue;
                try {
                    size_t pos = 0;
                    long long v = std::stoll(t[i], &pos);
                    if (pos != t[i].size()) throw std::invalid_argument(t[i]);
                    nums.push_back(v);
                } catch (const std::exception&) {
                    throw RulesError(no, "anyof: expected integers and ';'");
                }
            }
            if (nums.empty() || nums.size() % 2 != 0)
                throw RulesError(no, "anyof needs pairs of integers");
            for (size_t i = 0; i + 1 < nums.size(); i += 2) grp.push_back({nums[i], nums[i + 1]});
            cur.any_of.push_back(std::move(grp));
        } else if (t[0] == "transfer") {
            need_open("transfer");
            if (t.size() != 4) throw RulesError(no, "transfer needs 2 integers and p/q");
            auto slash = t[3].find('/');
            if (slash == std::string::npos) throw RulesError(no, "transfer amount must be p/q");
            Rational amt;
            try {
                amt = Rational(std::stoll(t[3].substr(0, slash)),
                               std::stoll(t[3].substr(slash + 1)));
            } catch (const std::exception&) {
                throw RulesError(no, "bad transfer amount '" + t[3] + "'");
            }
            if (!allowed_amount(amt))
                throw RulesError(no, "transfer amount " + amt.str() +
                                         " not in {1/4, 1/6, 1/12}");
            cur.transfers.push_back({{geti(1), geti(2)}, amt});
        } else if (t[0] == "override") {
            need_open("override");
            if (t.size() != 6 || t[2] != "when" || t[3] != "codeword")
                throw RulesError(no, "expected: override <id> when codeword <dx> <dy>");
            cur.overrides.push_back({t[1], {geti(4), geti(5)}});
        } else if (t[0] == "end") {
            need_open("end");
            // block invariants
            auto has_cw = [&](Vertex v) {
                return std::find(cur.codewords.begin(), cur.codewords.end(), v) !=
                       cur.codewords.end();
            };
            if (!has_cw({0, 0}))
                throw RulesError(no, "rule " + cur.id + ": source (0,0) must be a codeword");
            if (cur.transfers.empty())
                throw RulesError(no, "rule " + cur.id + ": no transfers");
            for (auto& tr : cur.transfers)
                if (!has_cw(tr.target))
                    throw RulesError(no, "rule " + cur.id + ": transfer target must be a codeword");
            for (const Rule& prev : rules)
                if (prev.id == cur.id) throw RulesError(no, "duplicate rule id " + cur.id);
            rules.push_back(cur);
            open = false;
        } else {
            throw RulesError(no, "unknown directive '" + t[0] + "'");
        }
    }
    if (open) throw RulesError(no, "unterminated rule block");
    if (rules.empty()) throw RulesError(no, "no rules");
    // override targets must exist
    for (const Rule& r : rules)
        for (auto& ov : r.overrides) {
            bool found = false;
            for (const Rule& r2 : rules)
                if (r2.id == ov.rule_id) found = true;
            if (!found)
                throw RulesError(0, "rule " + r.id + " overridden by unknown rule " + ov.rule_id);
        }
    return rules;
}

std::vector<Rule> load_rules_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return load_rules(f);
}

bool is_standard_ruleset(const std::vector<Rule>& rules) {
    std::set<std::string> ids;
    for (auto& r : rules) ids.insert(r.id);
    return ids == std::set<std::string>(kStandardIds.begin(), kStandardIds.end());
}

std::vector<RuleInstance> match_instances(const PeriodicCode& code,
                                          const std::vector<Rule>& rules) {
    auto oriented = orient_all(rules);
    std::set<std::tuple<std::string, Vertex, std::vector<Transfer>>> seen;
    std::vector<RuleInstance> out;
    for (Vertex s : code.domain()) {
        if (!code.is_codeword(s)) continue;
        bool even = parity(s) == 0;
        // oriented images are anchored at the orientation's base vertex, so
        // the placement at s is a plain translation by s
        Vertex t0 = s;
        for (const OrientedRule& o : oriented) {
            bool this_half = even ? (o.orientation < 6) : (o.orientation >= 6);
            if (!this_half) continue;
            bool ok = true;
            for (Vertex v : o.ins)
                if (!code.is_codeword(v + t0)) { ok = false; break; }
            if (!ok) continue;
            for (Vertex v : o.outs)
                if (code.is_codeword(v + t0)) { ok = false; break; }
            if (!ok) continue;
            for (auto& grp : o.any_of) {
                bool hit = false;
                for (Vertex v : grp)
                    if (code.is_codeword(v + t0)) { hit = true; break; }
                if (!hit) { ok = false; break; }
            }
            if (!ok) continue;
            std::vector<Transfer> resolved;
            for (auto& tr : o.transfers) resolved.push_back({tr.target + t0, tr.amount});
            std::sort(resolved.begin(), resolved.end());
            if (seen.emplace(o.rule->id, s, resolved).second)
                out.push_back({o.rule->id, s, o.orientation, resolved});
        }
    }
    std::sort(out.begin(), out.end(), [](const RuleInstance& a, const RuleInstance& b) {
        return std::tie(a.source, a.rule_id, a.resolved, a.orientation) <
               std::tie(b.source, b.rule_id, b.resolved, b.orientation);
    });
    return out;
}

ModifiedShareReport apply_scheme(const PeriodicCode& code, const std::vector<Rule>& rules) {
    ModifiedShareReport rep;
    std::map<Vertex, Rational> s2, inc, outg;
    for (Vertex c : code.codewords()) {
        s2[c] = share(code, c, 2);
        inc[c] = Rational(0);
        outg[c] = Rational(0);
    }
    rep.instances = match_instances(code, rules);
    for (const RuleInstance& ri : rep.instances) {
        for (const Transfer& t : ri.resolved) {
            Vertex tgt = code.reduce(t.target);
            if (!inc.count(tgt))
                throw std::logic_error("transfer target is not a codeword");
            outg[code.reduce(ri.source)] += t.amount;
            inc[tgt] += t.amount;
        }
    }
    rep.sum_s2 = Rational(0);
    rep.sum_ms2 = Rational(0);
    bool first = true;
    for (Vertex c : code.codewords()) {
        Rational ms = s2[c] - outg[c] + inc[c];
        rep.entries.push_back({c, s2[c], ms, inc[c], outg[c]});
        rep.sum_s2 += s2[c];
        rep.sum_ms2 += ms;
        if (first || rep.max_s2 < s2[c]) rep.max_s2 = s2[c];
        if (first || rep.max_ms2 < ms) rep.max_ms2 = ms;
        first = false;
    }
    return rep;
}

CertificateReport certify(const PeriodicCode& code, const std::vector<Rule>& rules,
                          const std::vector<long long>& windows) {
    if (code.verify_identifying(2))
        throw std::invalid_argument("certify: code is not 2-identifying");
    auto rep = apply_scheme(code, rules);
    CertificateReport cert;
    cert.density = code.density();
    cert.max_s2 = rep.max_s2;
    cert.max_ms2 = rep.max_ms2;
    cert.density_ok = !(cert.density < Rational(4, 19));
    cert.bound_ok = !(Rational(19, 4) < cert.max_ms2);
    cert.conservation_ok = (rep.sum_ms2 == rep.sum_s2);
    std::map<Vertex, Rational> s2;
    for (auto& e : rep.entries) s2[e.codeword] = e.s2;
    for (long long n : windows) {
        WindowCheck wc;
        wc.n = n;
        wc.share_sum = Rational(0);
        for (Vertex v : Window{n}.vertices())
            if (code.is_codeword(v)) wc.share_sum += s2[code.reduce(v)];
        long long side = 2 * n - 3;
        wc.threshold = side * side;
        wc.ok = !(wc.share_sum < Rational(wc.threshold));
        cert.windows.push_back(wc);
    }
    return cert;
}

std::vector<std::string> audit_scheme(const PeriodicCode& code,
                                      const std::vector<Rule>& rules) {
    std::vector<std::string> bad;
    auto oriented = orient_all(rules);
    auto insts = match_instances(code, rules);
    // placement soundness: re-check all constraints of each fired instance
    for (const RuleInstance& ri : insts) {
        bool ok = false;
        for (const OrientedRule& o : oriented) {
            if (o.rule->id != ri.rule_id || o.orientation != ri.orientation) continue;
            Vertex t0 = ri.source;
            bool match = true;
            for (Vertex v : o.ins)
                if (!code.is_codeword(v + t0)) match = false;
            for (Vertex v : o.outs)
                if (code.is_codeword(v + t0)) match = false;
            for (auto& grp : o.any_of) {
                bool hit = false;
                for (Vertex v : grp)
                    if (code.is_codeword(v + t0)) hit = true;
                if (!hit) match = false;
            }
            if (match) ok = true;
        }
        if (!ok)
            bad.push_back("instance " + ri.rule_id + " at (" + std::to_string(ri.source.x) +
                          "," + std::to_string(ri.source.y) + ") fails re-check");
    }
    // receiver multiplicity: how often one codeword can gain from one rule
    // is capped by the constellations themselves; the caps double as a
    // transcription check
    std::map<std::string, int> receiver_cap{
        {"3", 2}, {"7", 1}, {"7.1", 1}, {"8", 1}, {"9", 1}, {"10", 3}};
    std::map<std::pair<Vertex, std::string>, int> gains;
    for (const RuleInstance& ri : insts)
        for (const Transfer& t : ri.resolved)
            gains[{code.reduce(t.target), ri.rule_id}]++;
    for (auto& [key, cnt] : gains) {
        auto it = receiver_cap.find(key.second);
        if (it != receiver_cap.end() && cnt > it->second)
            bad.push_back("codeword (" + std::to_string(key.first.x) + "," +
                          std::to_string(key.first.y) + ") gains " + std::to_string(cnt) +
                          " transfers from rule " + key.second + " (cap " +
                          std::to_string(it->second) + ")");
    }
    // override exclusivity: per source and orientation at most one family member
    std::map<std::string, const Rule*> by_id;
    for (const Rule& r : rules) by_id[r.id] = &r;
    for (const Rule& base : rules) {
        if (base.overrides.empty()) continue;
        std::map<std::pair<Vertex, int>, int> fired;
        for (const RuleInstance& ri : insts) {
            bool family = ri.rule_id == base.id;
            for (auto& ov : base.overrides)
                if (ov.rule_id == ri.rule_id) family = true;
            if (family) fired[{ri.source, ri.orientation}]++;
        }
        for (auto& [key, cnt] : fired)
            if (cnt > 1)
                bad.push_back("rule family " + base.id + " fires " + std::to_string(cnt) +
                              " times from one placement at (" + std::to_string(key.first.x) +
                              "," + std::to_string(key.first.y) + ")");
    }
    return bad;
}

}  // namespace hexid
