#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "suneq/tubular.hpp"

using namespace suneq;

namespace {

// three divisors: pairwise intersections finite and contained in Y
IncidenceData pair_incidence() {
    return IncidenceData::from_minimal(3, {{1, 2}, {1, 3}, {2, 3}}, {{1, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("monotone closure from minimal subsets") {
    IncidenceData inc = IncidenceData::from_minimal(3, {{1}, {2}}, {{1, 2}});
    CHECK(inc.n() == 3);
    CHECK(inc.finite(0b001));
    CHECK(inc.finite(0b010));
    CHECK(!inc.finite(0b100));
    CHECK(inc.finite(0b011));  // superset of {1}
    CHECK(inc.finite(0b101));
    CHECK(inc.finite(0b111));
    CHECK(!inc.finite(0b000));
    CHECK(inc.contained(0b011));
    CHECK(inc.contained(0b111));
    CHECK(!inc.contained(0b001));
    CHECK(!inc.contained(0b110));
}

TEST_CASE("explicit flags are validated for monotonicity") {
    // finite({1}) true but finite({1,2}) false: not upward closed
    std::vector<bool> bad = {false, true, false, false};
    std::vector<bool> none(4, false);
    CHECK_THROWS(IncidenceData::from_flags(2, bad, none));
    std::vector<bool> good = {false, true, false, true};
    IncidenceData inc = IncidenceData::from_flags(2, good, good);
    CHECK(inc.finite(0b01));
    CHECK(!inc.finite(0b10));
}

TEST_CASE("incidence from json") {
    nlohmann::json j = {{"n", 3},
                        {"finite", {{1}, {2}, {3}}},
                        {"contained", {{1, 2}, {1, 3}, {2, 3}}}};
    IncidenceData inc = IncidenceData::from_json(j);
    CHECK(inc.finite(0b001));
    CHECK(inc.finite(0b100));
    CHECK(!inc.contained(0b001));
    CHECK(inc.contained(0b011));
    CHECK(m_baker(inc) == 1);
    CHECK(m_tubular(inc) == 1);
}

TEST_CASE("m_baker") {
    CHECK(m_baker(pair_incidence()) == 2);
    // all singletons finite
    IncidenceData fine = IncidenceData::from_minimal(3, {{1}, {2}, {3}}, {{1, 2, 3}});
    CHECK(m_baker(fine) == 1);
    // only the full triple finite
    IncidenceData coarse = IncidenceData::from_minimal(3, {{1, 2, 3}}, {{1, 2, 3}});
    CHECK(m_baker(coarse) == 3);
    // no finite intersection at all: m_B does not exist
    IncidenceData never = IncidenceData::from_minimal(3, {}, {{1, 2, 3}});
    CHECK(!m_baker(never).has_value());
    // a single covered divisor only helps at m = n, where every |I| = n
    // subset (the full set) contains it
    IncidenceData gap = IncidenceData::from_minimal(3, {{1}}, {{1, 2, 3}});
    CHECK(m_baker(gap) == 3);
}

TEST_CASE("m_tubular") {
    CHECK(m_tubular(pair_incidence()) == 1);
    IncidenceData only_full = IncidenceData::from_minimal(3, {{1}, {2}, {3}}, {{1, 2, 3}});
    CHECK(m_tubular(only_full) == 2);
    // the full intersection must lie in Y
    IncidenceData bad = IncidenceData::from_minimal(2, {{1}}, {});
    CHECK_THROWS(m_tubular(bad));
}

TEST_CASE("condition check") {
    // (m_B - 1) r_inf + m_Y r_fin < n
    CHECK(check_condition(2, 1, {1, 1}, 3));    // 1 + 1 < 3
    CHECK(!check_condition(2, 1, {2, 1}, 3));   // 2 + 1 = 3
    CHECK(check_condition(1, 1, {7, 2}, 3));    // 0 + 2 < 3
    CHECK(!check_condition(1, 2, {1, 2}, 3));   // 0 + 4 > 3
    CHECK(check_condition(3, 2, {1, 0}, 3));    // 2 + 0 < 3
}

TEST_CASE("feasible signatures") {
    auto sigs = feasible_signatures(2, 1, 3, 2, 2);
    std::vector<PlaceSignature> expect = {{1, 0}, {1, 1}, {2, 0}};
    CHECK(sigs == expect);
    // r_inf never below 1
    for (const PlaceSignature& s : feasible_signatures(1, 1, 4, 3, 3)) CHECK(s.r_inf >= 1);
    CHECK(feasible_signatures(5, 5, 2, 3, 3).empty());
}

TEST_CASE("pigeonhole assignment") {
    // 1 archimedean column + 2 finite columns
    SUBCASE("archimedean fiber of size m_B") {
        std::vector<std::vector<double>> table = {{5, 1, 0}, {4, 2, 1}, {0, 3, 1}};
        PigeonholeOutcome out = pigeonhole_assignment(table, 1, 2, 1, 0.0);
        CHECK(out.kind == PigeonholeOutcome::Kind::ArchimedeanFiber);
        CHECK(out.place == 0);
        CHECK(out.divisors == std::vector<int>{0, 1});
    }
    SUBCASE("finite fiber exceeding m_Y") {
        std::vector<std::vector<double>> table = {{0, 5, 1}, {1, 4, 0}, {2, 1, 5}};
        PigeonholeOutcome out = pigeonhole_assignment(table, 1, 2, 1, 0.0);
        CHECK(out.kind == PigeonholeOutcome::Kind::FiniteFiberExceeds);
        CHECK(out.place == 1);
        CHECK(out.divisors == std::vector<int>{0, 1});
    }
    SUBCASE("neither fiber: inconsistent input flagged") {
        std::vector<std::vector<double>> table = {{5, 1, 0}, {4, 2, 1}, {0, 3, 1}};
        PigeonholeOutcome out = pigeonhole_assignment(table, 1, 3, 2, 0.0);
        CHECK(out.kind == PigeonholeOutcome::Kind::ConditionViolated);
    }
    SUBCASE("ties resolve to the lowest column") {
        std::vector<std::vector<double>> table = {{3, 3, 1}, {3, 1, 3}};
        PigeonholeOutcome out = pigeonhole_assignment(table, 1, 2, 5, 0.0);
        CHECK(out.kind == PigeonholeOutcome::Kind::ArchimedeanFiber);
        CHECK(out.divisors == std::vector<int>{0, 1});
    }
    SUBCASE("rows below the threshold are rejected") {
        std::vector<std::vector<double>> table = {{1, 0, 0}};
        CHECK_THROWS(pigeonhole_assignment(table, 1, 1, 1, 2.0));
    }
}

TEST_CASE("pigeonhole counting is exhaustive for small cases") {
    // whenever the condition holds, every assignment of n divisors to
    // (r_inf + r_fin) places yields an archimedean fiber >= m_B or a finite
    // fiber > m_Y
    for (int n = 2; n <= 5; ++n) {
        for (int m_B = 1; m_B <= n; ++m_B) {
            for (int m_Y = 1; m_Y <= n; ++m_Y) {
                for (int r_inf = 1; r_inf <= 2; ++r_inf) {
                    for (int r_fin = 0; r_fin <= 2; ++r_fin) {
                        if (!check_condition(m_B, m_Y, {r_inf, r_fin}, n)) continue;
                        int cols = r_inf + r_fin;
                        std::vector<int> assign(static_cast<size_t>(n), 0);
                        while (true) {
                            std::vector<std::vector<double>> table(
                                static_cast<size_t>(n),
                                std::vector<double>(static_cast<size_t>(cols), 0.0));
                            for (int i = 0; i < n; ++i)
                                table[static_cast<size_t>(i)][static_cast<size_t>(assign[static_cast<size_t>(i)])] = 1.0;
                            PigeonholeOutcome out =
                                pigeonhole_assignment(table, r_inf, m_B, m_Y, 0.5);
                            CHECK(out.kind != PigeonholeOutcome::Kind::ConditionViolated);
                            int k = n - 1;
                            while (k >= 0 && assign[static_cast<size_t>(k)] == cols - 1)
                                assign[static_cast<size_t>(k--)] = 0;
                            if (k < 0) break;
                            ++assign[static_cast<size_t>(k)];
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("tubular report") {
    nlohmann::json j = tubular_report(pair_incidence(), 2, 2);
    CHECK(j["schema"] == 1);
    CHECK(j["n"] == 3);
    CHECK(j["m_B"] == 2);
    CHECK(j["m_Y"] == 1);
    CHECK(j["feasible_signatures"].size() == 3);

    IncidenceData never = IncidenceData::from_minimal(3, {}, {{1, 2, 3}});
    nlohmann::json j2 = tubular_report(never, 2, 2);
    CHECK(j2["m_B"].is_null());
    CHECK(j2["feasible_signatures"].empty());
}
