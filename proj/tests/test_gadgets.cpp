#include "catch_amalgamated.hpp"

#include <algorithm>
#include <set>

#include "gadget_families.hpp"

using namespace polysched;

using namespace families;

namespace {

std::set<LocalSchedule> enumerate_checked(const LocalBuild& lb) {
    auto all = enumerate_local_schedules(lb.gadget, kPeriod);
    std::set<LocalSchedule> out(all.begin(), all.end());
    CHECK(out.size() == all.size());
    return out;
}

}  // namespace

TEST_CASE("true clock has the single stated schedule", "[gadgets]") {
    auto lb = local_true_clock();
    CHECK(enumerate_checked(lb) == as_set(lb, families::true_clock()));
}

TEST_CASE("variable gadget has the two stated forms", "[gadgets]") {
    auto lb = local_variable();
    CHECK(enumerate_checked(lb) == as_set(lb, families::variable()));
}

TEST_CASE("F6 flipper swaps the 6 colour", "[gadgets]") {
    for (bool green : {true, false}) {
        auto lb = local_f6(green);
        CHECK(enumerate_checked(lb) == as_set(lb, families::f6(green)));
    }
}

TEST_CASE("F3 flipper has one schedule", "[gadgets]") {
    for (bool red : {true, false})
        for (bool green : {true, false}) {
            auto lb = local_f3(red, green);
            CHECK(enumerate_checked(lb) == as_set(lb, families::f3(red, green)));
        }
}

TEST_CASE("3-duplicator copies the input colour", "[gadgets]") {
    for (bool red : {true, false}) {
        auto lb = local_d3(red);
        auto expect = as_set(lb, families::d3(red));
        CHECK(expect.size() == 48);
        CHECK(enumerate_checked(lb) == expect);
    }
}

TEST_CASE("6-duplicator copies the input colour", "[gadgets]") {
    for (bool green : {true, false}) {
        auto lb = local_d6(green);
        CHECK(enumerate_checked(lb) == as_set(lb, families::d6(green)));
    }
}

TEST_CASE("OR output can be blue iff some input is red", "[gadgets]") {
    for (int combo = 0; combo < 8; ++combo) {
        std::array<ColorMask, 3> in{};
        for (int k = 0; k < 3; ++k) in[k] = combo >> k & 1 ? kRed : kBlue;
        auto lb = local_or(in);
        auto all = enumerate_checked(lb);
        CHECK_FALSE(all.empty());
        bool blue = false;
        for (const auto& s : all) {
            const auto out = s.days[lb["12_O"]];
            CHECK(std::popcount(out) == 3);
            if (colors_used(out) == kBlue) blue = true;
        }
        INFO("inputs " << combo);
        CHECK(blue == (combo != 0));
    }
}

TEST_CASE("OR witness form is among the enumerated schedules", "[gadgets]") {
    // first red input on slot 1, the others on 5 and 11, fills on 2 and 4, output on 7
    for (int first = 0; first < 3; ++first) {
        std::array<ColorMask, 3> in{kBlue, kBlue, kBlue};
        in[first] = kRed;
        auto lb = local_or(in);
        auto all = enumerate_checked(lb);
        std::map<std::string, std::uint64_t> f{{"3_R", every(3, 0)}, {"6_1", every(6, 2)}, {"6_2", every(6, 4)}, {"12_O", every(12, 7)}};
        int rank = 0;
        for (int k = 0; k < 3; ++k) {
            const std::string n = std::to_string(k + 1);
            f["in" + n] = every(3, k == first ? 0 : 1);
            f["12_" + n] = every(12, k == first ? 1 : rank++ == 0 ? 5 : 11);
        }
        bool found = false;
        for (const auto& s : all) {
            bool same = true;
            for (const auto& [role, days] : f) same = same && s.days[lb[role]] == days;
            found = found || same;
        }
        CHECK(found);
    }
}

TEST_CASE("tension admits exactly the all-blue schedules", "[gadgets]") {
    auto lb = local_tension({0, 0, 0, 0});
    CHECK(enumerate_checked(lb) == as_set(lb, families::tension()));
    CHECK(enumerate_checked(local_tension({kBlue, kBlue, kBlue, kBlue})).size() == 24);
    for (ColorMask bad : {kRed, kGreen, kPurple})
        for (int k = 0; k < 4; ++k) {
            std::array<ColorMask, 4> in{kBlue, kBlue, kBlue, kBlue};
            in[k] = bad;
            CHECK(enumerate_checked(local_tension(in)).empty());
        }
}

TEST_CASE("library lemma checks all pass", "[gadgets]") {
    for (const auto& c : verify_gadget_lemmas()) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
}
