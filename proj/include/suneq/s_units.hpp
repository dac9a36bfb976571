#ifndef SUNEQ_S_UNITS_HPP
#define SUNEQ_S_UNITS_HPP

#include <optional>

#include "suneq/heights.hpp"
#include "suneq/number_fields.hpp"

namespace suneq {

/// Generators of O_{L,S}^* modulo torsion, plus the torsion sign.
struct FundamentalSystem {
    FieldDescriptor field;
    PlaceSet S;
    std::vector<AlgebraicNumber> units;  // ε₁, …, ε_{s−1}
    // the finite place where units[i] is the prime generator; empty for the
    // fundamental unit of a quadratic field
    std::vector<std::optional<Place>> unit_place;
    AlgebraicNumber torsion;  // −1 for every supported field

    std::size_t rank() const { return units.size(); }
};

struct SUnitDecomposition {
    int torsion_sign = 1;         // ζ ∈ {±1}
    std::vector<long> exponents;  // b_i, aligned with FundamentalSystem::units
    long max_abs() const;         // B = max |b_i|
};

// true iff |t|_w = 1 for every place w ∉ S (decided exactly); t ≠ 0
bool is_s_unit(const AlgebraicNumber& t, const PlaceSet& S);

/// |det| of the (s−1)×(s−1) matrix (n_w·log|ε_j|_w) over s−1 places of S;
/// 1 when s = 1. Independent of the omitted place.
double s_regulator(const FieldDescriptor& field, const PlaceSet& S);
// variant dropping the place at `omit` (index into S.places), for the independence test
double s_regulator_omitting(const FundamentalSystem& sys, std::size_t omit);

/// Constructive fundamental system: over ℚ the primes of S; over a
/// class-number-1 quadratic field the fundamental unit plus principal
/// generators of the finite places of S.
FundamentalSystem fundamental_system(const FieldDescriptor& field, const PlaceSet& S);

// Bugeaud–Győry c₁(s) = ((s−1)!)² / (2^{s−1} d^{s−2})
double bugeaud_gyory_c1(int d, int s);
// ∏ h(ε_i) for the system (1 for the empty system)
double unit_height_product(const FundamentalSystem& sys);

SUnitDecomposition decompose(const AlgebraicNumber& u, const FundamentalSystem& sys);
AlgebraicNumber recompose(const SUnitDecomposition& dec, const FundamentalSystem& sys);

struct PrimeNormStats {
    Integer P_S;       // largest finite-place norm, 1 when none
    Integer P_S_third; // third largest (with multiplicity by place), 1 when fewer than three
};

PrimeNormStats prime_norm_stats(const PlaceSet& S);

nlohmann::json to_json(const FundamentalSystem& sys);

}  // namespace suneq

#endif
