#ifndef SUNEQ_SUNIT_SOLVER_HPP
#define SUNEQ_SUNIT_SOLVER_HPP

#include <array>

#include "suneq/baker_bounds.hpp"

namespace suneq {

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Solution {
    AlgebraicNumber x, y;
    double hx = 0, hy = 0;
    SUnitDecomposition dx, dy;

    double h() const { return std::max(hx, hy); }
};

nlohmann::json solution_to_json(const Solution& sol);

/// All solutions of αx + βy = 1 with decomposition exponents |b_i| ≤ cap,
/// exact arithmetic, canonically sorted. Throws ResourceLimitError when the
/// exponent box exceeds the work limit (env BAKER_WORK_LIMIT, default 10⁸).
std::vector<Solution> enumerate_solutions(const SUnitEquation& eq, long cap,
                                          std::optional<unsigned long long> work_limit = {});

// E = {αx, βy, βy/(αx)}
std::array<AlgebraicNumber, 3> critical_set(const Solution& sol, const SUnitEquation& eq);

// at every place, at most one value of h_w(P) over P ∈ E exceeds δ_w·log 2;
// exceeding members count as one value when they agree exactly (finite w)
// or to within the log 2 slack (archimedean w) — exact comparisons
bool lemma41_item1(const Solution& sol, const SUnitEquation& eq);
// pairwise height gaps among {h(x),h(y),h(αx),h(βy),h(βy/αx)} ≤ 3H, and ≤ 2H
// except the pair (h(x), h(y))
bool lemma41_item2(const Solution& sol, const SUnitEquation& eq);
// Σ_{w∈S} (n_w/d)·h_w(P) ≥ h − 3H for every P ∈ E
bool lemma41_item3(const Solution& sol, const SUnitEquation& eq);

struct PlaceSelection {
    enum class Outcome { Archimedean, Collision, None };
    Outcome outcome = Outcome::None;
    // Archimedean: the (P, w) pair and its weighted local height
    int e_index = -1;
    Place place;
    double value = 0;
    // Collision: a finite place carrying two distinct E-members above threshold
    int e_second = -1;
    bool three_h_verified = false;  // h ≤ 3H checked for the collision case
};

/// Place-selection dichotomy: an archimedean (P, w) meeting the threshold
/// (n_w/d)·h_w(P) ≥ (h−3H)/s, or a finite-place collision with h ≤ 3H.
PlaceSelection place_selection(const Solution& sol, const SUnitEquation& eq);

struct Verdict {
    bool pass = false;
    double worst_margin = 0;  // bound − max solution height (min over solutions)
    std::size_t solutions = 0;
};

Verdict verify_bound(const SUnitEquation& eq, const BoundReport& report,
                     const std::vector<Solution>& solutions);

}  // namespace suneq

#endif
