#ifndef SUNEQ_TUBULAR_HPP
#define SUNEQ_TUBULAR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

namespace suneq {

/// Divisor-intersection incidence flags over subsets of {1..n}, n ≤ 20.
/// finite(I): T_I = ∩_{i∈I} Supp D_i is finite; contained(I): T_I ⊆ Y.
/// Both are monotone upward in I.
class IncidenceData {
  public:
    // minimal true subsets (1-indexed vectors); monotone closure inferred
    static IncidenceData from_minimal(int n, const std::vector<std::vector<int>>& finite_min,
                                      const std::vector<std::vector<int>>& contained_min);
    // explicit flags per subset bitmask (size 2^n); validated for monotonicity
    static IncidenceData from_flags(int n, std::vector<bool> finite, std::vector<bool> contained);
    static IncidenceData from_json(const nlohmann::json& j);

    int n() const { return n_; }
    bool finite(std::uint32_t subset) const { return finite_[subset]; }
    bool contained(std::uint32_t subset) const { return contained_[subset]; }

  private:
    IncidenceData(int n, std::vector<bool> finite, std::vector<bool> contained);
    int n_;
    std::vector<bool> finite_, contained_;
};

/// Smallest m such that every |I| = m has T_I finite; empty when none exists.
std::optional<int> m_baker(const IncidenceData& inc);

/// Smallest m such that every |I| > m has T_I ⊆ Y; requires the full
/// intersection to be contained in Y.
int m_tubular(const IncidenceData& inc);

struct PlaceSignature {
    int r_inf = 0;  // |M_L^∞| (or |S′|)
    int r_fin = 0;  // |S ∖ M_L^∞|
    bool operator==(const PlaceSignature&) const = default;
};

// (m_B−1)·r_inf + m_Y·r_fin < n
bool check_condition(int m_B, int m_Y, const PlaceSignature& sig, int n);

// all signatures within the caps satisfying the condition, lexicographic;
// r_inf starts at 1 (a number field always has an archimedean place)
std::vector<PlaceSignature> feasible_signatures(int m_B, int m_Y, int n, int cap_inf, int cap_fin);

struct PigeonholeOutcome {
    enum class Kind { FiniteFiberExceeds, ArchimedeanFiber, ConditionViolated };
    Kind kind = Kind::ConditionViolated;
    int place = -1;               // column index into the place list
    std::vector<int> divisors;    // the fiber (exactly m_B indices for case (b))
};

/// Assigns each divisor to an argmax place of its row and classifies the
/// fibers: (a) a finite-place fiber of size > m_Y, (b) an archimedean fiber
/// of size ≥ m_B (trimmed to m_B), or (c) neither — which contradicts the
/// condition (1.2)-style count and flags inconsistent input.
PigeonholeOutcome pigeonhole_assignment(const std::vector<std::vector<double>>& height_table,
                                        int num_archimedean, int m_B, int m_Y, double threshold);

nlohmann::json tubular_report(const IncidenceData& inc, int cap_inf, int cap_fin);

}  // namespace suneq

#endif
