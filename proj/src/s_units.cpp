#include "suneq/s_units.hpp"

#include <algorithm>
#include <cmath>

namespace suneq {

long SUnitDecomposition::max_abs() const {
    long b = 0;
    for (long e : exponents) b = std::max(b, std::labs(e));
    return b;
}

bool is_s_unit(const AlgebraicNumber& t, const PlaceSet& S) {
    if (t.is_zero()) throw std::domain_error("is_s_unit(0)");
    if (!(t.field() == S.field) && !t.field().is_rational())
        throw FieldMismatchError("element not in the place set's field");
    AlgebraicNumber tt = t.field() == S.field ? t : AlgebraicNumber(S.field, t.rat_part());

    // Write tt = (u + v√D)/c with integers u, v, c > 0, gcd(u, v, c) = 1.
    // Every prime in the support divides Z = c·|N(u + v√D)|, and after the
    // content reduction any prime factor of Z carries a nonzero valuation at
    // some place above it; so tt is an S-unit iff Z is built from S-primes
    // and the valuations at the few non-S places above those primes vanish.
    // This avoids factoring Z, which can contain large primes.
    Integer c = tt.rat_part().get_den();
    mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), tt.quad_part().get_den().get_mpz_t());
    Rational uq = tt.rat_part() * c, vq = tt.quad_part() * c;
    Integer u = uq.get_num(), v = vq.get_num();
    Integer g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    u /= g;
    v /= g;
    c /= g;
    Integer norm = S.field.is_rational() ? u : u * u - static_cast<long>(S.field.D) * v * v;
    Integer Z = abs(c * norm);

    std::vector<unsigned long> s_primes;
    for (const Place& w : S.places)
        if (w.finite()) s_primes.push_back(w.p);
    s_primes.erase(std::unique(s_primes.begin(), s_primes.end()), s_primes.end());

    for (unsigned long p : s_primes) {
        Integer pz(static_cast<long>(p));
        mpz_remove(Z.get_mpz_t(), Z.get_mpz_t(), pz.get_mpz_t());
    }
    if (Z != 1) return false;
    for (unsigned long p : s_primes)
        for (const Place& w : places_above(p, S.field))
            if (!S.contains(w) && valuation(tt, w) != 0) return false;
    return true;
}

FundamentalSystem fundamental_system(const FieldDescriptor& field, const PlaceSet& S) {
    if (!(field == S.field)) throw FieldMismatchError("field/place-set mismatch");
    FundamentalSystem sys;
    sys.field = field;
    sys.S = S;
    sys.torsion = AlgebraicNumber(field, Rational(-1));
    if (!field.is_rational()) {
        sys.units.push_back(fundamental_unit(field.D));
        sys.unit_place.push_back(std::nullopt);
    }
    for (const Place& w : S.places) {
        if (!w.finite()) continue;
        sys.units.push_back(prime_generator(field, w));
        sys.unit_place.push_back(w);
    }
    if (sys.rank() + 1 != S.size())
        throw std::logic_error("fundamental system rank mismatch");
    return sys;
}

double bugeaud_gyory_c1(int d, int s) {
    if (s < 1 || d < 1) throw std::invalid_argument("bugeaud_gyory_c1: need d,s >= 1");
    double f = 1.0;
    for (int i = 2; i <= s - 1; ++i) f *= i;
    return f * f / (std::pow(2.0, s - 1) * std::pow(static_cast<double>(d), s - 2));
}

double unit_height_product(const FundamentalSystem& sys) {
    double prod = 1.0;
    for (const AlgebraicNumber& e : sys.units) prod *= weil_height(e);
    return prod;
}

double s_regulator_omitting(const FundamentalSystem& sys, std::size_t omit) {
    const std::size_t r = sys.rank();
    if (r == 0) return 1.0;
    if (omit >= sys.S.size()) throw std::out_of_range("omitted place index");
    std::vector<std::vector<double>> m(r, std::vector<double>(r));
    std::size_t col = 0;
    for (std::size_t k = 0; k < sys.S.places.size(); ++k) {
        if (k == omit) continue;
        const Place& w = sys.S.places[k];
        for (std::size_t j = 0; j < r; ++j)
            m[j][col] = w.local_degree() * log_abs_value(sys.units[j], w);
        ++col;
    }
    // |det| by Gaussian elimination with partial pivoting
    double det = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t piv = i;
        for (std::size_t k = i + 1; k < r; ++k)
            if (std::fabs(m[k][i]) > std::fabs(m[piv][i])) piv = k;
        if (m[piv][i] == 0.0)
            throw std::runtime_error("degenerate fundamental system (regulator determinant 0)");
        if (piv != i) std::swap(m[piv], m[i]);
        det *= m[i][i];
        for (std::size_t k = i + 1; k < r; ++k) {
            double factor = m[k][i] / m[i][i];
            for (std::size_t j = i; j < r; ++j) m[k][j] -= factor * m[i][j];
        }
    }
    return std::fabs(det);
}

double s_regulator(const FieldDescriptor& field, const PlaceSet& S) {
    if (S.size() == 1) return 1.0;
    FundamentalSystem sys = fundamental_system(field, S);
    return s_regulator_omitting(sys, 0);
}

SUnitDecomposition decompose(const AlgebraicNumber& u, const FundamentalSystem& sys) {
    if (!is_s_unit(u, sys.S)) throw std::domain_error("decompose: not an S-unit");
    AlgebraicNumber uu =
        u.field() == sys.field ? u : AlgebraicNumber(sys.field, u.rat_part());
    SUnitDecomposition dec;
    dec.exponents.assign(sys.rank(), 0);
    AlgebraicNumber residual = uu;
    for (std::size_t i = 0; i < sys.rank(); ++i) {
        if (!sys.unit_place[i]) continue;
        long b = valuation(uu, *sys.unit_place[i]);
        dec.exponents[i] = b;
        if (b) residual = residual / pow(sys.units[i], b);
    }
    // residual is now a unit of O_L: ±1 over ℚ, ±ε^k over a quadratic field
    for (std::size_t i = 0; i < sys.rank(); ++i) {
        if (sys.unit_place[i]) continue;
        const AlgebraicNumber& eps = sys.units[i];
        double k0 = residual.log_abs_embed(0) / eps.log_abs_embed(0);
        long k = std::lround(k0);
        bool found = false;
        for (long cand : {k, k - 1, k + 1}) {
            AlgebraicNumber t = residual / pow(eps, cand);
            if (t == AlgebraicNumber(sys.field, Rational(1)) ||
                t == AlgebraicNumber(sys.field, Rational(-1))) {
                dec.exponents[i] = cand;
                residual = t;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("unit residual not a power of the fundamental unit");
    }
    if (residual == AlgebraicNumber(sys.field, Rational(1)))
        dec.torsion_sign = 1;
    else if (residual == AlgebraicNumber(sys.field, Rational(-1)))
        dec.torsion_sign = -1;
    else
        throw std::logic_error("decomposition residual is not +-1");
    return dec;
}

AlgebraicNumber recompose(const SUnitDecomposition& dec, const FundamentalSystem& sys) {
    if (dec.exponents.size() != sys.rank())
        throw std::invalid_argument("recompose: exponent arity mismatch");
    AlgebraicNumber r(sys.field, Rational(dec.torsion_sign));
    for (std::size_t i = 0; i < sys.rank(); ++i)
        if (dec.exponents[i]) r = r * pow(sys.units[i], dec.exponents[i]);
    return r;
}

PrimeNormStats prime_norm_stats(const PlaceSet& S) {
    std::vector<Integer> norms;
    for (const Place& w : S.places)
        if (w.finite()) norms.push_back(w.ideal_norm());
    std::sort(norms.begin(), norms.end(), std::greater<Integer>());
    PrimeNormStats st{Integer(1), Integer(1)};
    if (!norms.empty()) st.P_S = norms[0];
    if (norms.size() >= 3) st.P_S_third = norms[2];
    return st;
}

nlohmann::json to_json(const FundamentalSystem& sys) {
    nlohmann::json j;
    j["schema"] = 1;
    to_json(j["field"], sys.field);
    j["places"] = nlohmann::json::array();
    for (const Place& w : sys.S.places) {
        nlohmann::json jw;
        to_json(jw, w);
        j["places"].push_back(jw);
    }
    j["units"] = nlohmann::json::array();
    for (const AlgebraicNumber& e : sys.units) j["units"].push_back(e.to_string());
    j["torsion"] = sys.torsion.to_string();
    return j;
}

}  // namespace suneq
