#include "suneq/sunit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

namespace suneq {

namespace {

constexpr double kTol = 1e-9;

double round_sig(double x, int digits) {
    if (x == 0) return 0;
    double mag = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::fabs(x)))));
    return std::round(x * mag) / mag;
}

unsigned long long default_work_limit() {
    if (const char* env = std::getenv("BAKER_WORK_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 100'000'000ULL;
}

void require_solution(const Solution& sol, const SUnitEquation& eq) {
    AlgebraicNumber lhs = eq.alpha * sol.x + eq.beta * sol.y;
    if (!(lhs == AlgebraicNumber(eq.field, Rational(1))))
        throw std::invalid_argument("not a solution of the equation");
}

// |t|_w < 1/2, decided exactly
bool below_half_arch(const AlgebraicNumber& t, const Place& w) {
    return t.cmp_abs(w.index, Rational(1, 2)) < 0;
}

double weighted_local_height(const AlgebraicNumber& P, const Place& w, int d) {
    return (static_cast<double>(w.local_degree()) / d) * local_height_zero(P, w);
}

}  // namespace

nlohmann::json solution_to_json(const Solution& sol) {
    return {{"schema", 1},
            {"x", sol.x.to_string()},
            {"y", sol.y.to_string()},
            {"hx", round_sig(sol.hx, 10)},
            {"hy", round_sig(sol.hy, 10)}};
}

std::vector<Solution> enumerate_solutions(const SUnitEquation& eq, long cap,
                                          std::optional<unsigned long long> work_limit) {
    if (cap < 1) throw std::invalid_argument("exponent cap must be >= 1");
    FundamentalSystem sys = fundamental_system(eq.field, eq.S);
    const std::size_t rank = sys.rank();

    unsigned long long limit = work_limit.value_or(default_work_limit());
    unsigned long long total = 2;
    for (std::size_t i = 0; i < rank; ++i) {
        unsigned long long width = 2 * static_cast<unsigned long long>(cap) + 1;
        if (total > limit / width)
            throw ResourceLimitError("exponent box exceeds the enumeration work limit");
        total *= width;
    }

    const AlgebraicNumber one(eq.field, Rational(1));
    std::vector<Solution> out;

    auto try_x = [&](const AlgebraicNumber& x) {
        AlgebraicNumber y = (one - eq.alpha * x) / eq.beta;
        if (y.is_zero() || !is_s_unit(y, eq.S)) return;
        Solution sol;
        sol.x = x;
        sol.y = y;
        sol.hx = weil_height(x);
        sol.hy = weil_height(y);
        sol.dx = decompose(x, sys);
        sol.dy = decompose(y, sys);
        out.push_back(std::move(sol));
    };

    // depth-first over exponent vectors with incremental products
    auto rec = [&](auto&& self, std::size_t depth, const AlgebraicNumber& partial) -> void {
        if (depth == rank) {
            try_x(partial);
            try_x(-partial);
            return;
        }
        AlgebraicNumber base = sys.units[depth];
        AlgebraicNumber cur = partial * pow(base, -cap);
        for (long b = -cap; b <= cap; ++b) {
            self(self, depth + 1, cur);
            if (b < cap) cur = cur * base;
        }
    };
    rec(rec, 0, one);

    std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
        if (a.h() != b.h()) return a.h() < b.h();
        if (a.hx != b.hx) return a.hx < b.hx;
        std::string ax = a.x.to_string(), bx = b.x.to_string();
        if (ax != bx) return ax < bx;
        return a.y.to_string() < b.y.to_string();
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Solution& a, const Solution& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              out.end());
    return out;
}

std::array<AlgebraicNumber, 3> critical_set(const Solution& sol, const SUnitEquation& eq) {
    AlgebraicNumber ax = eq.alpha * sol.x;
    AlgebraicNumber by = eq.beta * sol.y;
    return {ax, by, by / ax};
}

bool lemma41_item1(const Solution& sol, const SUnitEquation& eq) {
    require_solution(sol, eq);
    std::array<AlgebraicNumber, 3> E = critical_set(sol, eq);
    // the bound is on distinct values of h_w(P), so equal local heights
    // among members of E count once
    // finite places: h_w(P) > 0 = δ_w·log 2 iff ord_w(P) > 0, and two
    // members share the value iff they share the valuation — exact
    std::set<unsigned long> primes;
    for (const AlgebraicNumber& P : E)
        for (unsigned long p : support_primes(P)) primes.insert(p);
    for (unsigned long p : primes) {
        for (const Place& w : places_above(p, eq.field)) {
            std::set<long> exceeding;
            for (const AlgebraicNumber& P : E) {
                long v = valuation(P, w);
                if (v > 0) exceeding.insert(v);
            }
            if (exceeding.size() > 1) return false;
        }
    }
    // archimedean: h_w(P) > log 2 iff |P|_w < 1/2; members exceeding the
    // threshold count as one value when they agree to within the log 2
    // slack, i.e. their ratio lies in [1/2, 2] — decided exactly
    for (const Place& w : archimedean_places(eq.field)) {
        std::vector<const AlgebraicNumber*> exceeding;
        for (const AlgebraicNumber& P : E)
            if (below_half_arch(P, w)) exceeding.push_back(&P);
        for (std::size_t i = 0; i < exceeding.size(); ++i)
            for (std::size_t j = i + 1; j < exceeding.size(); ++j) {
                AlgebraicNumber ratio = *exceeding[i] / *exceeding[j];
                if (ratio.cmp_abs(w.index, Rational(1, 2)) < 0 ||
                    ratio.cmp_abs(w.index, Rational(2)) > 0)
                    return false;
            }
    }
    return true;
}

bool lemma41_item2(const Solution& sol, const SUnitEquation& eq) {
    require_solution(sol, eq);
    std::array<AlgebraicNumber, 3> E = critical_set(sol, eq);
    const double H = h_parameter(eq.alpha, eq.beta, eq.field.degree());
    std::array<double, 5> hs = {sol.hx, sol.hy, weil_height(E[0]), weil_height(E[1]),
                                weil_height(E[2])};
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            double gap = std::fabs(hs[i] - hs[j]);
            if (gap > 3 * H + kTol) return false;
            bool xy_pair = (i == 0 && j == 1);
            if (!xy_pair && gap > 2 * H + kTol) return false;
        }
    }
    return true;
}

bool lemma41_item3(const Solution& sol, const SUnitEquation& eq) {
    require_solution(sol, eq);
    const int d = eq.field.degree();
    const double H = h_parameter(eq.alpha, eq.beta, d);
    const double h = sol.h();
    for (const AlgebraicNumber& P : critical_set(sol, eq)) {
        double sum = 0;
        for (const Place& w : eq.S.places) sum += weighted_local_height(P, w, d);
        if (sum < h - 3 * H - kTol) return false;
    }
    return true;
}

PlaceSelection place_selection(const Solution& sol, const SUnitEquation& eq) {
    require_solution(sol, eq);
    const int d = eq.field.degree();
    const double H = h_parameter(eq.alpha, eq.beta, d);
    const double h = sol.h();
    const double threshold = (h - 3 * H) / static_cast<double>(eq.S.size());
    std::array<AlgebraicNumber, 3> E = critical_set(sol, eq);

    PlaceSelection best;
    for (int i = 0; i < 3; ++i) {
        for (const Place& w : eq.S.places) {
            if (w.finite()) continue;
            double v = weighted_local_height(E[i], w, d);
            if (best.e_index < 0 || v > best.value) {
                best.e_index = i;
                best.place = w;
                best.value = v;
            }
        }
    }
    if (best.e_index >= 0 && best.value >= threshold - kTol) {
        best.outcome = PlaceSelection::Outcome::Archimedean;
        return best;
    }

    for (const Place& w : eq.S.places) {
        if (!w.finite()) continue;
        int first = -1, second = -1;
        for (int i = 0; i < 3; ++i) {
            if (weighted_local_height(E[i], w, d) >= threshold - kTol) {
                if (first < 0)
                    first = i;
                else if (second < 0)
                    second = i;
            }
        }
        if (second >= 0) {
            PlaceSelection col;
            col.outcome = PlaceSelection::Outcome::Collision;
            col.place = w;
            col.e_index = first;
            col.e_second = second;
            col.three_h_verified = (h <= 3 * H + kTol);
            return col;
        }
    }
    return PlaceSelection{};  // Outcome::None — no admissible selection exists
}

Verdict verify_bound(const SUnitEquation& eq, const BoundReport& report,
                     const std::vector<Solution>& solutions) {
    const SUnitEquation& echo = report.equation;
    if (!(echo.field == eq.field) || echo.S.places != eq.S.places ||
        !(echo.alpha == eq.alpha) || !(echo.beta == eq.beta))
        throw std::invalid_argument("verify_bound: report echoes a different equation");
    Verdict v;
    v.solutions = solutions.size();
    v.pass = true;
    v.worst_margin = report.bound;
    for (const Solution& sol : solutions) {
        double margin = report.bound - sol.h();
        v.worst_margin = std::min(v.worst_margin, margin);
        if (sol.h() > report.bound) v.pass = false;
    }
    return v;
}

}  // namespace suneq
