#include "suneq/tubular.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace suneq {

namespace {

constexpr int kMaxDivisors = 20;

void check_n(int n) {
    if (n < 1 || n > kMaxDivisors)
        throw std::invalid_argument("divisor count must be between 1 and 20");
}

std::uint32_t mask_of(const std::vector<int>& subset, int n) {
    std::uint32_t m = 0;
    for (int i : subset) {
        if (i < 1 || i > n) throw std::invalid_argument("subset index out of range");
        m |= 1u << (i - 1);
    }
    return m;
}

std::vector<bool> close_upward(int n, const std::vector<std::uint32_t>& minimal) {
    std::vector<bool> flags(std::size_t(1) << n, false);
    for (std::uint32_t m : minimal) flags[m] = true;
    for (std::uint32_t m = 0; m < flags.size(); ++m) {
        if (!flags[m]) continue;
        for (int b = 0; b < n; ++b) flags[m | (1u << b)] = true;
    }
    return flags;
}

void validate_monotone(int n, const std::vector<bool>& flags, const char* name) {
    for (std::uint32_t m = 0; m < flags.size(); ++m) {
        if (!flags[m]) continue;
        for (int b = 0; b < n; ++b)
            if (!flags[m | (1u << b)])
                throw std::invalid_argument(std::string(name) + " flags are not monotone");
    }
}

}  // namespace

IncidenceData::IncidenceData(int n, std::vector<bool> finite, std::vector<bool> contained)
    : n_(n), finite_(std::move(finite)), contained_(std::move(contained)) {}

IncidenceData IncidenceData::from_minimal(int n, const std::vector<std::vector<int>>& finite_min,
                                          const std::vector<std::vector<int>>& contained_min) {
    check_n(n);
    std::vector<std::uint32_t> fm, cm;
    for (const auto& s : finite_min) fm.push_back(mask_of(s, n));
    for (const auto& s : contained_min) cm.push_back(mask_of(s, n));
    return IncidenceData(n, close_upward(n, fm), close_upward(n, cm));
}

IncidenceData IncidenceData::from_flags(int n, std::vector<bool> finite,
                                        std::vector<bool> contained) {
    check_n(n);
    if (finite.size() != (std::size_t(1) << n) || contained.size() != (std::size_t(1) << n))
        throw std::invalid_argument("flag vectors must have size 2^n");
    validate_monotone(n, finite, "finite");
    validate_monotone(n, contained, "contained");
    return IncidenceData(n, std::move(finite), std::move(contained));
}

IncidenceData IncidenceData::from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    auto lists = [](const nlohmann::json& a) {
        std::vector<std::vector<int>> out;
        for (const auto& s : a) out.push_back(s.get<std::vector<int>>());
        return out;
    };
    return from_minimal(n, lists(j.at("finite")), lists(j.at("contained")));
}

std::optional<int> m_baker(const IncidenceData& inc) {
    const int n = inc.n();
    for (int m = 1; m <= n; ++m) {
        bool all = true;
        for (std::uint32_t mask = 1; mask < (1u << n) && all; ++mask)
            if (std::popcount(mask) == m && !inc.finite(mask)) all = false;
        if (all) return m;
    }
    return std::nullopt;
}

int m_tubular(const IncidenceData& inc) {
    const int n = inc.n();
    if (!inc.contained((1u << n) - 1))
        throw std::invalid_argument("full intersection not contained in Y: m_Y undefined");
    int m = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
        if (!inc.contained(mask)) m = std::max(m, std::popcount(mask));
    return m;
}

bool check_condition(int m_B, int m_Y, const PlaceSignature& sig, int n) {
    if (m_B < 1 || m_Y < 0) throw std::invalid_argument("need m_B >= 1, m_Y >= 0");
    return (m_B - 1) * sig.r_inf + m_Y * sig.r_fin < n;
}

std::vector<PlaceSignature> feasible_signatures(int m_B, int m_Y, int n, int cap_inf, int cap_fin) {
    std::vector<PlaceSignature> out;
    for (int ri = 1; ri <= cap_inf; ++ri)
        for (int rf = 0; rf <= cap_fin; ++rf)
            if (check_condition(m_B, m_Y, {ri, rf}, n)) out.push_back({ri, rf});
    return out;
}

PigeonholeOutcome pigeonhole_assignment(const std::vector<std::vector<double>>& height_table,
                                        int num_archimedean, int m_B, int m_Y, double threshold) {
    const int n = static_cast<int>(height_table.size());
    if (n == 0) throw std::invalid_argument("empty height table");
    const int s = static_cast<int>(height_table.front().size());
    if (num_archimedean < 1 || num_archimedean > s)
        throw std::invalid_argument("archimedean column count inconsistent with the table");
    for (const auto& row : height_table)
        if (static_cast<int>(row.size()) != s)
            throw std::invalid_argument("ragged height table");

    // each divisor goes to the argmax place of its row (ties: lowest column)
    std::vector<std::vector<int>> fibers(s);
    for (int i = 0; i < n; ++i) {
        int best = 0;
        for (int w = 1; w < s; ++w)
            if (height_table[i][w] > height_table[i][best]) best = w;
        if (height_table[i][best] < threshold)
            throw std::invalid_argument("row maximum below threshold: inconsistent input table");
        fibers[best].push_back(i);
    }
    for (int w = num_archimedean; w < s; ++w) {
        if (static_cast<int>(fibers[w].size()) > m_Y) {
            PigeonholeOutcome o;
            o.kind = PigeonholeOutcome::Kind::FiniteFiberExceeds;
            o.place = w;
            o.divisors = fibers[w];
            return o;
        }
    }
    for (int w = 0; w < num_archimedean; ++w) {
        if (static_cast<int>(fibers[w].size()) >= m_B) {
            PigeonholeOutcome o;
            o.kind = PigeonholeOutcome::Kind::ArchimedeanFiber;
            o.place = w;
            o.divisors.assign(fibers[w].begin(), fibers[w].begin() + m_B);
            return o;
        }
    }
    return PigeonholeOutcome{};  // ConditionViolated
}

nlohmann::json tubular_report(const IncidenceData& inc, int cap_inf, int cap_fin) {
    nlohmann::json j;
    j["schema"] = 1;
    j["n"] = inc.n();
    std::optional<int> mb = m_baker(inc);
    j["m_B"] = mb ? nlohmann::json(*mb) : nlohmann::json(nullptr);
    nlohmann::json my;
    try {
        my = m_tubular(inc);
    } catch (const std::invalid_argument&) {
        my = nullptr;
    }
    j["m_Y"] = my;
    j["feasible_signatures"] = nlohmann::json::array();
    if (mb && !my.is_null()) {
        for (const PlaceSignature& sig :
             feasible_signatures(*mb, my.get<int>(), inc.n(), cap_inf, cap_fin))
            j["feasible_signatures"].push_back({sig.r_inf, sig.r_fin});
    }
    return j;
}

}  // namespace suneq
