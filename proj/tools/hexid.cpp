// Command-line front end: verification, shares, estimator bounds,
// discharging, certification, exhaustive search, and a fixed-vector selftest.
//
// Exit status: 0 = success / property holds; 1 = property violated (witness
// printed); 2 = input error; 3 = search budget exhausted.

#include <CLI11.hpp>
#include <thread>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hexid/codes.hpp"
#include "hexid/discharge.hpp"
#include "hexid/search.hpp"
#include "hexid/share.hpp"

using namespace hexid;

namespace {

constexpr int kOk = 0, kViolated = 1, kInputError = 2, kBudget = 3;

Vertex parse_at(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--at expects x,y");
    return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
}

std::string vstr(Vertex v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

int cmd_verify(const std::string& code_file, int r) {
    PeriodicCode code = parse_code_file(code_file);
    auto fail = code.verify_identifying(r);
    if (!fail) {
        std::cout << "ok: code is " << r << "-identifying (density "
                  << code.density().str() << ")\n";
        return kOk;
    }
    if (fail->uncovered)
        std::cout << "fail: uncovered vertex " << vstr(*fail->uncovered) << "\n";
    else
        std::cout << "fail: unseparated pair " << vstr(fail->unseparated->first) << " "
                  << vstr(fail->unseparated->second) << "\n";
    return kViolated;
}

int cmd_share(const std::string& code_file, int r, Vertex at) {
    PeriodicCode code = parse_code_file(code_file);
    if (!code.is_codeword(at)) {
        std::cerr << "error: " << vstr(at) << " is not a codeword\n";
        return kInputError;
    }
    try {
        std::cout << share(code, at, r).str() << "\n";
    } catch (const ShareUndefined& e) {
        std::cout << e.what() << "\n";
        return kViolated;
    }
    return kOk;
}

int cmd_bound(const std::string& dset_file, int r, Vertex at) {
    auto D = parse_vertex_set_file(dset_file);
    if (std::find(D.begin(), D.end(), at) == D.end()) {
        std::cerr << "error: " << vstr(at) << " is not in the vertex set\n";
        return kInputError;
    }
    std::cout << share_upper_bound(D, at, r).str() << "\n";
    return kOk;
}

std::vector<Rule> load_standard_rules(const std::string& rules_file) {
    auto rules = load_rules_file(rules_file);
    if (!is_standard_ruleset(rules))
        throw std::runtime_error(rules_file + ": not the standard rule set "
                                 "(ids 1..10 with modifications expected)");
    return rules;
}

int cmd_discharge(const std::string& code_file, const std::string& rules_file, bool tsv) {
    PeriodicCode code = parse_code_file(code_file);
    auto rules = load_standard_rules(rules_file);
    if (code.verify_identifying(2)) {
        std::cerr << "error: code is not 2-identifying\n";
        return kInputError;
    }
    auto rep = apply_scheme(code, rules);
    if (tsv) {
        std::cout << "codeword\ts2\tms2\tin\tout\n";
        for (auto& e : rep.entries)
            std::cout << e.codeword.x << "," << e.codeword.y << "\t" << e.s2.str() << "\t"
                      << e.ms2.str() << "\t" << e.incoming.str() << "\t" << e.outgoing.str()
                      << "\n";
    } else {
        std::cout << "codeword  s2  ms2  in  out\n";
        for (auto& e : rep.entries)
            std::cout << vstr(e.codeword) << "  " << e.s2.str() << "  " << e.ms2.str()
                      << "  " << e.incoming.str() << "  " << e.outgoing.str() << "\n";
        std::cout << "instances fired: " << rep.instances.size() << "\n";
        for (auto& ri : rep.instances) {
            std::cout << "  rule " << ri.rule_id << " from " << vstr(ri.source) << " ->";
            for (auto& t : ri.resolved)
                std::cout << " " << vstr(t.target) << " (" << t.amount.str() << ")";
            std::cout << "\n";
        }
        std::cout << "sum s2 = " << rep.sum_s2.str() << ", sum ms2 = " << rep.sum_ms2.str()
                  << " (conservation " << (rep.sum_s2 == rep.sum_ms2 ? "ok" : "BROKEN")
                  << ")\n";
        std::cout << "max s2 = " << rep.max_s2.str() << ", max ms2 = " << rep.max_ms2.str()
                  << "\n";
    }
    if (Rational(19, 4) < rep.max_ms2 || rep.sum_s2 != rep.sum_ms2) {
        std::cout << "VIOLATION: modified share exceeds 19/4 or conservation broken\n";
        return kViolated;
    }
    return kOk;
}

int cmd_certify(const std::string& code_file, const std::string& rules_file,
                const std::vector<long long>& windows, bool tsv) {
    PeriodicCode code = parse_code_file(code_file);
    auto rules = load_standard_rules(rules_file);
    if (code.verify_identifying(2)) {
        std::cerr << "error: code is not 2-identifying; certify refuses to run\n";
        return kInputError;
    }
    auto cert = certify(code, rules, windows);
    if (tsv) {
        std::cout << "key\tvalue\tok\n";
        std::cout << "density\t" << cert.density.str() << "\t" << cert.density_ok << "\n";
        std::cout << "max_s2\t" << cert.max_s2.str() << "\t-\n";
        std::cout << "max_ms2\t" << cert.max_ms2.str() << "\t" << cert.bound_ok << "\n";
        std::cout << "conservation\t-\t" << cert.conservation_ok << "\n";
        for (auto& w : cert.windows)
            std::cout << "window_" << w.n << "\t" << w.share_sum.str() << ">="
                      << w.threshold << "\t" << w.ok << "\n";
    } else {
        std::cout << "density        = " << cert.density.str() << "  (>= 4/19: "
                  << (cert.density_ok ? "yes" : "NO") << ")\n";
        std::cout << "max s2         = " << cert.max_s2.str() << "\n";
        std::cout << "max ms2        = " << cert.max_ms2.str() << "  (<= 19/4: "
                  << (cert.bound_ok ? "yes" : "NO") << ")\n";
        std::cout << "conservation   = " << (cert.conservation_ok ? "exact" : "BROKEN")
                  << "\n";
        for (auto& w : cert.windows)
            std::cout << "window n=" << w.n << "    sum s2 over Q_n = " << w.share_sum.str()
                      << "  >= " << w.threshold << ": " << (w.ok ? "yes" : "NO") << "\n";
    }
    return cert.all_ok() ? kOk : kViolated;
}

int cmd_search(int r, long long max_area, long long budget, const std::string& out_dir,
               int threads, std::optional<Rational> target, bool tsv) {
    SearchConfig cfg;
    cfg.r = r;
    cfg.max_area = max_area;
    cfg.node_budget = budget;
    cfg.threads = threads;
    cfg.target_density = target;
    auto frontier = search_min_density(cfg);
    std::string table = frontier_report(frontier, tsv);
    std::cout << table;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream sum(out_dir + "/frontier.txt");
        sum << table;
        for (auto& [a, e] : frontier.by_area) {
            if (!e.witness) continue;
            std::ofstream w(out_dir + "/witness-area" + std::to_string(a) + ".code");
            w << "# r=" << r << " minimum found: " << e.min_count << " codewords, density "
              << Rational(e.min_count, a).str() << "\n";
            w << format_code(*e.witness);
        }
    }
    return frontier.any_budget_hit ? kBudget : kOk;
}

struct SelfTest {
    int failures = 0;
    void expect(const std::string& name, const Rational& got, const Rational& want) {
        bool ok = got == want;
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << ": " << got.str()
                  << (ok ? "" : " (expected " + want.str() + ")") << "\n";
        if (!ok) ++failures;
    }
    void expect_int(const std::string& name, long long got, long long want) {
        bool ok = got == want;
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << ": " << got
                  << (ok ? "" : " (expected " + std::to_string(want) + ")") << "\n";
        if (!ok) ++failures;
    }
    void attempt(const std::string& name, const Rational& got, const Rational& want) {
        bool ok = got == want;
        std::cout << (ok ? "note  reproduced      " : "note  not reproduced  ") << name
                  << ": estimator gives " << got.str() << ", quoted " << want.str() << "\n";
    }
};

int cmd_selftest() {
    SelfTest t;
    using V = std::vector<Vertex>;
    // ball sizes
    t.expect_int("|B1((0,0))|", static_cast<long long>(ball({0, 0}, 1).size()), 4);
    t.expect_int("|B2((0,0))|", static_cast<long long>(ball({0, 0}, 2).size()), 10);
    t.expect_int("|B2((1,0))|", static_cast<long long>(ball({1, 0}, 2).size()), 10);
    // adjacency-pair example vectors
    V D1{{0, 0}, {0, 1}, {1, -1}};
    t.expect("pair+diagonal at (0,0)", share_upper_bound(D1, {0, 0}, 2), {17, 4});
    t.expect("pair+diagonal at (0,1)", share_upper_bound(D1, {0, 1}, 2), {55, 12});
    V D2{{0, 0}, {0, 1}, {2, 0}};
    t.expect("pair+row at (0,0)", share_upper_bound(D2, {0, 0}, 2), {13, 3});
    t.expect("pair+row at (0,1)", share_upper_bound(D2, {0, 1}, 2), {9, 2});
    // explicit four-vertex configurations
    V D3{{0, 0}, {0, 1}, {-3, 0}, {1, -1}};
    t.expect("pair+far+diag", share_upper_bound(D3, {0, 0}, 2), {15, 4});
    V D4{{0, 0}, {-1, 0}, {0, 1}};
    t.expect("two companions", share_upper_bound(D4, {0, 0}, 2), {17, 4});
    V D5{{1, 0}, {1, 1}, {-1, -1}, {3, -1}};  // three far corners of an odd vertex
    t.expect("three corners", share_upper_bound(D5, {1, 0}, 2), {9, 2});
    // reconstruction attempts for quoted bounds whose configurations are
    // only implicit; mismatches are logged, never asserted
    t.attempt("three companions", share_upper_bound(V{{0,0},{-1,0},{0,1},{1,0}}, {0,0}, 2),
              {67, 20});
    t.attempt("companions+down  ", share_upper_bound(V{{0,0},{-1,0},{0,1},{-1,-1}}, {0,0}, 2),
              {79, 20});
    t.attempt("companions+row   ", share_upper_bound(V{{0,0},{-1,0},{0,1},{2,0}}, {0,0}, 2),
              {53, 15});
    t.attempt("companions+corner", share_upper_bound(V{{0,0},{-1,0},{0,1},{-2,1}}, {0,0}, 2),
              {21, 5});
    t.attempt("lone+near square ", share_upper_bound(V{{-1,2},{0,0},{0,3},{-3,1}}, {-1,2}, 2),
              {23, 6});
    t.attempt("flank+near square", share_upper_bound(V{{1,2},{0,0},{-1,2},{2,3}}, {1,2}, 2),
              {53, 12});
    t.attempt("two corners      ", share_upper_bound(V{{0,0},{-2,1},{2,1}}, {0,0}, 2),
              {14, 3});
    t.attempt("pair chain left  ", share_upper_bound(V{{0,0},{-1,2},{-2,2},{-3,1}}, {0,0}, 2),
              {59, 12});
    t.attempt("flanking pair    ", share_upper_bound(V{{0,0},{-1,2},{1,2},{-2,2}}, {0,0}, 2),
              {29, 6});
    std::cout << (t.failures == 0 ? "selftest: all fixed vectors pass\n"
                                  : "selftest: FAILURES\n");
    return t.failures == 0 ? kOk : kViolated;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-identifying codes on the hexagonal grid: verification, shares, "
                 "discharging, certification and exhaustive search"};
    app.require_subcommand(1);

    std::string code_file, rules_file, dset_file, at_str, out_dir, format;
    int r = 2;
    long long max_area = 8, budget = 50'000'000;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    std::vector<long long> windows{5, 10, 15};
    std::string target_str;

    auto* verify = app.add_subcommand("verify", "check the identifying property");
    verify->add_option("--code", code_file)->required();
    verify->add_option("--r", r);

    auto* share_cmd = app.add_subcommand("share", "exact share of a codeword");
    share_cmd->add_option("--code", code_file)->required();
    share_cmd->add_option("--at", at_str)->required();
    share_cmd->add_option("--r", r);

    auto* bound = app.add_subcommand("bound", "share upper bound from a finite subset");
    bound->add_option("--dset", dset_file)->required();
    bound->add_option("--at", at_str)->required();
    bound->add_option("--r", r);

    auto* discharge = app.add_subcommand("discharge", "apply the shifting scheme");
    discharge->add_option("--code", code_file)->required();
    discharge->add_option("--rules", rules_file)->required();
    discharge->add_option("--format", format);

    auto* certify_cmd = app.add_subcommand("certify", "density/share certificate");
    certify_cmd->add_option("--code", code_file)->required();
    certify_cmd->add_option("--rules", rules_file)->required();
    certify_cmd->add_option("--windows", windows)->delimiter(',');
    certify_cmd->add_option("--format", format);

    auto* search_cmd = app.add_subcommand("search", "exhaustive minimum-density search");
    search_cmd->add_option("--r", r);
    search_cmd->add_option("--max-area", max_area);
    search_cmd->add_option("--budget", budget);
    search_cmd->add_option("--out", out_dir);
    search_cmd->add_option("--threads", threads);
    search_cmd->add_option("--target", target_str, "report only densities below p/q");
    search_cmd->add_option("--format", format);

    app.add_subcommand("selftest", "run the fixed numeric vectors");

    CLI11_PARSE(app, argc, argv);
    bool tsv = format == "tsv";

    try {
        if (verify->parsed()) return cmd_verify(code_file, r);
        if (share_cmd->parsed()) return cmd_share(code_file, r, parse_at(at_str));
        if (bound->parsed()) return cmd_bound(dset_file, r, parse_at(at_str));
        if (discharge->parsed()) return cmd_discharge(code_file, rules_file, tsv);
        if (certify_cmd->parsed()) return cmd_certify(code_file, rules_file, windows, tsv);
        if (app.get_subcommand("search")->parsed()) {
            std::optional<Rational> target;
            if (!target_str.empty()) {
                auto slash = target_str.find('/');
                if (slash == std::string::npos) {
                    std::cerr << "error: --target expects p/q\n";
                    return kInputError;
                }
                target = Rational(std::stoll(target_str.substr(0, slash)),
                                  std::stoll(target_str.substr(slash + 1)));
            }
            return cmd_search(r, max_area, budget, out_dir, threads, target, tsv);
        }
        if (app.get_subcommand("selftest")->parsed()) return cmd_selftest();
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const RulesError& e) {
        std::cerr << "rules error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
