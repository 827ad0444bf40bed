// Pins the geometry of every shipping rule: each case embeds a minimal
// configuration (pattern codewords on an otherwise empty large torus) and
// asserts exactly which family member fires from the source and where the
// share goes. Editing rules/paper-fig7.rules should break these loudly.

#include <doctest.h>

#include <set>

#include "hexid/discharge.hpp"

using namespace hexid;

namespace {

std::vector<Rule> shipped() {
    static std::vector<Rule> rules = load_rules_file(std::string(RULES_FILE));
    return rules;
}

struct Fired {
    std::vector<RuleInstance> from_source;
};

Fired fire(const std::vector<Vertex>& codewords, Vertex source = {0, 0}) {
    PeriodicCode code = embed_finite(codewords, 2);
    Fired f;
    for (auto& ri : match_instances(code, shipped()))
        if (ri.source == source) f.from_source.push_back(ri);
    return f;
}

bool fires(const Fired& f, const std::string& id, Vertex target, Rational amount) {
    for (auto& ri : f.from_source)
        if (ri.rule_id == id)
            for (auto& t : ri.resolved)
                if (t.target == target && t.amount == amount) return true;
    return false;
}

bool fires_id(const Fired& f, const std::string& id) {
    for (auto& ri : f.from_source)
        if (ri.rule_id == id) return true;
    return false;
}

}  // namespace

TEST_CASE("rule 1 and its modifications") {
    std::vector<Vertex> base{{0, 0}, {-1, 2}, {0, 2}};
    auto f = fire(base);
    CHECK(fires(f, "1", {0, 2}, {1, 4}));
    CHECK(f.from_source.size() == 1);  // nothing else matches the bare pattern

    auto low = base;
    low.push_back({0, -1});
    f = fire(low);
    CHECK(fires(f, "1.1", {0, 2}, {1, 12}));
    CHECK_FALSE(fires_id(f, "1"));
    CHECK_FALSE(fires_id(f, "1.2"));

    // 1.1 applies whether or not the 1.2 trigger is present
    auto both = low;
    both.push_back({-3, 2});
    f = fire(both);
    CHECK(fires(f, "1.1", {0, 2}, {1, 12}));
    CHECK_FALSE(fires_id(f, "1"));
    CHECK_FALSE(fires_id(f, "1.2"));

    auto left = base;
    left.push_back({-3, 2});
    f = fire(left);
    CHECK(fires(f, "1.2", {-1, 2}, {1, 4}));  // redirected to the pair's other member
    CHECK_FALSE(fires_id(f, "1"));
    CHECK_FALSE(fires_id(f, "1.1"));
}

TEST_CASE("rule 2 and its modification priority") {
    std::vector<Vertex> base{{0, 0}, {-1, 2}, {-2, 2}};
    auto f = fire(base);
    CHECK(fires(f, "2", {-2, 2}, {1, 4}));
    CHECK(f.from_source.size() == 1);

    auto t21 = base;
    t21.insert(t21.end(), {{0, -1}, {-3, 1}, {1, 2}});  // all three triggers
    f = fire(t21);
    CHECK(fires(f, "2.1", {-2, 2}, {1, 12}));  // the strongest one wins
    CHECK_FALSE(fires_id(f, "2"));
    CHECK_FALSE(fires_id(f, "2.2"));
    CHECK_FALSE(fires_id(f, "2.3"));

    auto t22 = base;
    t22.insert(t22.end(), {{-3, 1}, {1, 2}});
    f = fire(t22);
    CHECK(fires(f, "2.2", {-2, 2}, {1, 6}));
    CHECK_FALSE(fires_id(f, "2.3"));

    auto t23 = base;
    t23.push_back({1, 2});
    f = fire(t23);
    CHECK(fires(f, "2.3", {-2, 2}, {1, 12}));
    CHECK_FALSE(fires_id(f, "2"));
}

TEST_CASE("rule 3 moves 1/6 and 1/12 in one instance") {
    auto f = fire({{0, 0}, {-1, 2}, {-3, 1}, {-3, 2}});
    REQUIRE(fires_id(f, "3"));
    CHECK(fires(f, "3", {-3, 2}, {1, 6}));
    CHECK(fires(f, "3", {-1, 2}, {1, 12}));
    int n3 = 0;
    for (auto& ri : f.from_source)
        if (ri.rule_id == "3") ++n3;
    CHECK(n3 == 1);
}

TEST_CASE("rule 4 pays the far end of the chain") {
    auto f = fire({{0, 0}, {-1, 2}, {-3, 1}, {-4, 1}});
    CHECK(fires(f, "4", {-4, 1}, {1, 4}));
    CHECK_FALSE(fires_id(f, "3"));
    // occupied (-3,0) blocks it
    auto blocked = fire({{0, 0}, {-1, 2}, {-3, 1}, {-4, 1}, {-3, 0}});
    CHECK_FALSE(fires_id(blocked, "4"));
}

TEST_CASE("rule 5 needs both far corners") {
    auto f = fire({{0, 0}, {1, -2}, {2, -2}, {-2, -2}});
    CHECK(fires(f, "5", {1, -2}, {1, 6}));
    auto missing = fire({{0, 0}, {1, -2}, {2, -2}});
    CHECK_FALSE(fires_id(missing, "5"));
}

TEST_CASE("rule 6 reaches across the long corridor") {
    auto f = fire({{0, 0}, {1, 3}, {2, 3}});
    CHECK(fires(f, "6", {1, 3}, {1, 12}));
    CHECK(f.from_source.size() == 1);
}

TEST_CASE("rule 7 fires toward whichever flank has its white square") {
    std::vector<Vertex> base{{0, 0}, {-1, 2}, {1, 2}};
    auto right = base;
    right.push_back({3, 2});
    auto f = fire(right);
    CHECK(fires(f, "7", {1, 2}, {1, 4}));
    auto left = base;
    left.push_back({-3, 2});
    f = fire(left);
    CHECK(fires(f, "7", {-1, 2}, {1, 4}));  // mirrored placement
    auto both = base;
    both.insert(both.end(), {{2, 3}, {-2, 3}});
    f = fire(both);
    CHECK(fires(f, "7", {1, 2}, {1, 4}));
    CHECK(fires(f, "7", {-1, 2}, {1, 4}));
    // no squares, no rule 7
    CHECK_FALSE(fires_id(fire(base), "7"));
    // lower-corner trigger switches to 7.1
    auto low = right;
    low.push_back({0, -1});
    f = fire(low);
    CHECK(fires(f, "7.1", {1, 2}, {1, 12}));
    CHECK_FALSE(fires_id(f, "7"));
}

TEST_CASE("rules 8 and 9 are mutually exclusive") {
    std::vector<Vertex> base{{0, 0}, {-1, 2}, {-3, 1}};
    for (Vertex sq : {Vertex{-2, 3}, Vertex{0, 3}}) {
        auto with_sq = base;
        with_sq.push_back(sq);
        auto f = fire(with_sq);
        CHECK(fires(f, "8", {-1, 2}, {1, 12}));
        CHECK_FALSE(fires_id(f, "9"));
    }
    auto corner = base;
    corner.push_back({-1, 3});
    auto f = fire(corner);
    CHECK(fires(f, "9", {-1, 2}, {1, 12}));
    CHECK_FALSE(fires_id(f, "8"));
    CHECK_FALSE(fires_id(fire(base), "8"));
    CHECK_FALSE(fires_id(fire(base), "9"));
}

TEST_CASE("rule 10: all three corners pay the surrounded codeword") {
    std::vector<Vertex> cws{{0, 0}, {0, -1}, {-2, -2}, {2, -2}};
    PeriodicCode code = embed_finite(cws, 2);
    Rational into(0);
    int n = 0;
    std::set<Vertex> sources;
    for (auto& ri : match_instances(code, shipped()))
        if (ri.rule_id == "10")
            for (auto& t : ri.resolved)
                if (code.reduce(t.target) == code.reduce({0, -1})) {
                    into += t.amount;
                    sources.insert(ri.source);
                    ++n;
                }
    CHECK(n == 3);  // one instance per surrounding corner
    CHECK(sources.size() == 3);
    CHECK(into == Rational(1, 4));
}
