#ifndef SUNEQ_HEIGHTS_HPP
#define SUNEQ_HEIGHTS_HPP

#include <map>
#include <span>
#include <vector>

#include "suneq/number_fields.hpp"

namespace suneq {

double log_plus(double x);  // max(log x, 0), x > 0
double log_star(double x);  // max(log x, 1), x > 0

/// Absolute logarithmic Weil height; h(0) = 0 by convention.
/// Exact for rationals: h(p/q) = log max(|p|, |q|).
double weil_height(const AlgebraicNumber& t);

/// h_w(t) = log⁺(1/|t|_w); t ≠ 0.
double local_height_zero(const AlgebraicNumber& t, const Place& w);

// exact finite-place predicates used by certified threshold checks
bool reduces_to_zero(const AlgebraicNumber& t, const Place& w);  // |t|_w < 1, i.e. ord_w(t) > 0

/// Family (c_v) of nonnegative reals over places of ℚ, almost all zero.
class MKConstant {
  public:
    MKConstant() = default;
    explicit MKConstant(std::map<Place, double> entries);

    double at(const Place& v) const;  // 0 when absent
    const std::map<Place, double>& entries() const { return entries_; }

    friend MKConstant add(const MKConstant& x, const MKConstant& y);
    friend MKConstant scale(const MKConstant& x, double c);  // c ≥ 0

  private:
    std::map<Place, double> entries_;
};

struct MKSample {
    Place base_place;  // place of ℚ below the sample's place
    double value;      // f(P, w)
};

// true iff |value| ≤ c_v for every sample
bool dominates(std::span<const MKSample> samples, const MKConstant& c);
// smallest MKConstant dominating the samples
MKConstant envelope(std::span<const MKSample> samples);

struct Monomial {
    Rational coeff;
    std::vector<unsigned> exponents;  // one per variable
    unsigned degree() const;
};

/// Homogeneous polynomial over ℚ in N+1 projective coordinates.
struct HomogeneousPoly {
    int num_vars = 0;
    std::vector<Monomial> terms;

    static HomogeneousPoly make(int num_vars, std::vector<Monomial> terms);  // validates
    unsigned degree() const;
    AlgebraicNumber evaluate(std::span<const AlgebraicNumber> x) const;
    // max |coefficient|_w over the polynomial's coefficients
    double log_norm(const Place& w) const;
};

struct ClosedSubsetSpec {
    int ambient_dim = 0;  // N, so points have N+1 coordinates
    std::vector<HomogeneousPoly> generators;

    static ClosedSubsetSpec make(int ambient_dim, std::vector<HomogeneousPoly> gens);
};

struct ProjectivePoint {
    FieldDescriptor field;
    std::vector<AlgebraicNumber> coords;  // not all zero

    static ProjectivePoint make(FieldDescriptor f, std::vector<AlgebraicNumber> coords);
};

struct PointInSubsetError : std::domain_error {
    using std::domain_error::domain_error;
};

/// h_{Y,w}(P) = min over generators with g(x_P) ≠ 0 of
///   −log(|g(x_P)|_w / (‖g‖_w · ‖x_P‖_w^{deg g})).
/// ≥ 0 at finite places, scaling-invariant; throws PointInSubsetError when P ∈ Y.
double local_height_subset(const ProjectivePoint& P, const ClosedSubsetSpec& Y, const Place& w);

/// h_Y(P) = (1/[L:ℚ]) Σ_w n_w h_{Y,w}(P) over all places with nonzero contribution.
double global_height_subset(const ProjectivePoint& P, const ClosedSubsetSpec& Y);

// primes where t (or any coordinate/value in a list) can have nonzero valuation
std::vector<unsigned long> support_primes(const AlgebraicNumber& t);

}  // namespace suneq

#endif
