#ifndef SUNEQ_NUMBER_FIELDS_HPP
#define SUNEQ_NUMBER_FIELDS_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace suneq {

using Rational = mpq_class;
using Integer = mpz_class;

struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// ℚ or a real quadratic field ℚ(√D), D squarefree > 1.
struct FieldDescriptor {
    enum class Kind { Rational, RealQuadratic };
    Kind kind = Kind::Rational;
    long D = 0;

    static FieldDescriptor rationals() { return {}; }
    static FieldDescriptor real_quadratic(long D);

    int degree() const { return kind == Kind::Rational ? 1 : 2; }
    bool is_rational() const { return kind == Kind::Rational; }
    // field discriminant: D if D ≡ 1 (mod 4), else 4D
    long discriminant() const;

    bool operator==(const FieldDescriptor&) const = default;
};

bool is_squarefree(long n);

/// Exact element a + b√D of a FieldDescriptor's field (b = 0 over ℚ).
class AlgebraicNumber {
  public:
    AlgebraicNumber() : a_(0), b_(0) {}
    AlgebraicNumber(const Rational& a) : a_(a), b_(0) { canon(); }
    AlgebraicNumber(long a) : a_(a), b_(0) {}
    AlgebraicNumber(FieldDescriptor f, Rational a, Rational b = Rational(0));

    const FieldDescriptor& field() const { return field_; }
    const Rational& rat_part() const { return a_; }
    const Rational& quad_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational_value() const { return b_ == 0; }

    AlgebraicNumber conjugate() const;
    Rational norm() const;   // a² − D·b²
    Rational trace() const;  // 2a
    AlgebraicNumber inverse() const;

    // exact sign of the real embedding (embedding 0: √D > 0, embedding 1: √D < 0)
    int sign_at(int embedding) const;
    // real embedding value; evaluated via the conjugate when the direct sum cancels
    double embed(int embedding) const;
    // log |embedding| (t ≠ 0), accurate to a few ulp even for huge coordinates
    double log_abs_embed(int embedding) const;
    // exact sign of |embed(embedding)| − q, q ≥ 0 rational
    int cmp_abs(int embedding, const Rational& q) const;

    std::string to_string() const;

    friend AlgebraicNumber operator+(const AlgebraicNumber&, const AlgebraicNumber&);
    friend AlgebraicNumber operator-(const AlgebraicNumber&, const AlgebraicNumber&);
    friend AlgebraicNumber operator*(const AlgebraicNumber&, const AlgebraicNumber&);
    friend AlgebraicNumber operator/(const AlgebraicNumber&, const AlgebraicNumber&);
    AlgebraicNumber operator-() const;
    bool operator==(const AlgebraicNumber& o) const { return compatible(o) && a_ == o.a_ && b_ == o.b_; }

  private:
    void canon();
    bool compatible(const AlgebraicNumber& o) const;
    static FieldDescriptor join(const AlgebraicNumber& x, const AlgebraicNumber& y);

    FieldDescriptor field_;
    Rational a_, b_;
};

AlgebraicNumber pow(const AlgebraicNumber& t, long e);

/// A place of the field: a real embedding or a finite prime (ideal).
struct Place {
    enum class Kind { Archimedean, Finite };
    enum class Splitting { RationalPrime, Split, Inert, Ramified };

    Kind kind = Kind::Archimedean;
    int index = 0;  // embedding choice / split-conjugate selector
    unsigned long p = 0;
    Splitting splitting = Splitting::RationalPrime;

    static Place archimedean(int index = 0);
    static Place finite_rational(unsigned long p);

    bool finite() const { return kind == Kind::Finite; }
    Integer ideal_norm() const;  // N(w): p, or p² when inert
    int local_degree() const;    // n_w = e·f
    int ramification() const;    // e_w

    auto operator<=>(const Place&) const = default;
};

std::string to_string(const Place& w);

/// S ⊇ M_L^∞ together with its field.
struct PlaceSet {
    FieldDescriptor field;
    std::vector<Place> places;  // sorted, unique

    // all archimedean places plus every place above each listed prime
    static PlaceSet over_primes(const FieldDescriptor& f, const std::vector<unsigned long>& primes);
    static PlaceSet make(const FieldDescriptor& f, std::vector<Place> ps);  // validates

    std::size_t size() const { return places.size(); }
    std::size_t num_finite() const;
    bool contains(const Place& w) const;
};

std::vector<Place> archimedean_places(const FieldDescriptor& f);
std::vector<Place> places_above(unsigned long p, const FieldDescriptor& f);

// Principal generator of the prime ideal of w (identity for rational places: p itself).
// Deterministic; split index 1 returns the conjugate of index 0's generator.
AlgebraicNumber prime_generator(const FieldDescriptor& f, const Place& w);

// ord_w(t) for t ≠ 0 (ramified places count π-powers, so ord_w(p) = 2 there)
long valuation(const AlgebraicNumber& t, const Place& w);

// |t|_w normalized to extend the absolute values of ℚ; |0|_w = 0
double abs_value(const AlgebraicNumber& t, const Place& w);
// log|t|_w for t ≠ 0; exact-exponent −(ord_w(t)/e_w)·log p at finite places
double log_abs_value(const AlgebraicNumber& t, const Place& w);

/// Fundamental unit ε > 1 of O_{ℚ(√D)} via the continued fraction of √D
/// (of (1+√D)/2 when D ≡ 1 mod 4); norm ±1 verified exactly.
AlgebraicNumber fundamental_unit(long D);

// trial-division factorization, exponents > 0, primes ascending
std::vector<std::pair<Integer, unsigned long>> factor(Integer n);

// parses "a/b", "a/b+c/d*sqrtD", "-3+2*sqrtD", "sqrtD", ...
AlgebraicNumber parse_algebraic(const std::string& text, const FieldDescriptor& f);

void to_json(nlohmann::json& j, const FieldDescriptor& f);
void from_json(const nlohmann::json& j, FieldDescriptor& f);
void to_json(nlohmann::json& j, const Place& w);
void from_json(const nlohmann::json& j, Place& w);

}  // namespace suneq

#endif
