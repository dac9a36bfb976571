#include "suneq/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace suneq {

double log_plus(double x) {
    if (x <= 0) throw std::domain_error("log_plus: x must be positive");
    return std::max(std::log(x), 0.0);
}

double log_star(double x) {
    if (x <= 0) throw std::domain_error("log_star: x must be positive");
    return std::max(std::log(x), 1.0);
}

namespace {

double log_abs_int(const Integer& n) {
    long e;
    double d = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

long ord_int(const Integer& n, unsigned long p) {
    Integer r, pz(p);
    return static_cast<long>(mpz_remove(r.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

std::vector<unsigned long> support_primes(const AlgebraicNumber& t) {
    if (t.is_zero()) throw std::domain_error("support of zero");
    std::set<unsigned long> ps;
    auto add_factors = [&](const Integer& n) {
        for (const auto& [p, e] : factor(n)) {
            if (!p.fits_ulong_p()) throw std::overflow_error("prime exceeds unsigned long");
            ps.insert(p.get_ui());
        }
    };
    if (t.field().is_rational()) {
        if (t.rat_part().get_num() != 1 && t.rat_part().get_num() != -1)
            add_factors(t.rat_part().get_num());
        if (t.rat_part().get_den() != 1) add_factors(t.rat_part().get_den());
    } else {
        Integer m = lcm(t.rat_part().get_den(), t.quad_part().get_den());
        AlgebraicNumber u = t * AlgebraicNumber(Rational(m));
        Integer nu = u.norm().get_num();
        if (m != 1) add_factors(m);
        if (nu != 1 && nu != -1) add_factors(nu);
    }
    return {ps.begin(), ps.end()};
}

double weil_height(const AlgebraicNumber& t) {
    if (t.is_zero()) return 0.0;
    if (t.field().is_rational()) {
        const Rational& q = t.rat_part();
        Integer m = abs(q.get_num());
        if (m < q.get_den()) m = q.get_den();
        return log_abs_int(m);
    }
    double sum = 0.0;
    for (const Place& w : archimedean_places(t.field()))
        sum += std::max(0.0, t.log_abs_embed(w.index));
    for (unsigned long p : support_primes(t))
        for (const Place& w : places_above(p, t.field()))
            sum += w.local_degree() * std::max(0.0, log_abs_value(t, w));
    return sum / t.field().degree();
}

double local_height_zero(const AlgebraicNumber& t, const Place& w) {
    if (t.is_zero()) throw std::domain_error("local_height_zero at a pole");
    return std::max(0.0, -log_abs_value(t, w));
}

bool reduces_to_zero(const AlgebraicNumber& t, const Place& w) {
    if (!w.finite()) throw std::domain_error("reduces_to_zero needs a finite place");
    if (t.is_zero()) return true;
    return valuation(t, w) > 0;
}

// ---------------------------------------------------------------- MKConstant

MKConstant::MKConstant(std::map<Place, double> entries) : entries_(std::move(entries)) {
    for (auto& [v, c] : entries_)
        if (c < 0) throw std::invalid_argument("MKConstant entries must be >= 0");
    std::erase_if(entries_, [](const auto& kv) { return kv.second == 0.0; });
}

double MKConstant::at(const Place& v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? 0.0 : it->second;
}

MKConstant add(const MKConstant& x, const MKConstant& y) {
    std::map<Place, double> out = x.entries_;
    for (const auto& [v, c] : y.entries_) out[v] += c;
    return MKConstant(std::move(out));
}

MKConstant scale(const MKConstant& x, double c) {
    if (c < 0) throw std::invalid_argument("scale factor must be >= 0");
    std::map<Place, double> out;
    for (const auto& [v, cv] : x.entries_) out[v] = cv * c;
    return MKConstant(std::move(out));
}

bool dominates(std::span<const MKSample> samples, const MKConstant& c) {
    for (const MKSample& s : samples)
        if (std::fabs(s.value) > c.at(s.base_place) + 1e-12) return false;
    return true;
}

MKConstant envelope(std::span<const MKSample> samples) {
    std::map<Place, double> out;
    for (const MKSample& s : samples) {
        double& c = out[s.base_place];
        c = std::max(c, std::fabs(s.value));
    }
    return MKConstant(std::move(out));
}

// ---------------------------------------------------------------- polynomials

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (unsigned e : exponents) d += e;
    return d;
}

HomogeneousPoly HomogeneousPoly::make(int num_vars, std::vector<Monomial> terms) {
    if (terms.empty()) throw std::invalid_argument("zero polynomial");
    unsigned deg = terms.front().degree();
    for (const Monomial& m : terms) {
        if (m.coeff == 0) throw std::invalid_argument("zero coefficient term");
        if (static_cast<int>(m.exponents.size()) != num_vars)
            throw std::invalid_argument("monomial arity mismatch");
        if (m.degree() != deg) throw std::invalid_argument("polynomial not homogeneous");
    }
    HomogeneousPoly g;
    g.num_vars = num_vars;
    g.terms = std::move(terms);
    return g;
}

unsigned HomogeneousPoly::degree() const { return terms.front().degree(); }

AlgebraicNumber HomogeneousPoly::evaluate(std::span<const AlgebraicNumber> x) const {
    if (static_cast<int>(x.size()) != num_vars)
        throw std::invalid_argument("evaluate: wrong number of coordinates");
    AlgebraicNumber sum;
    for (const Monomial& m : terms) {
        AlgebraicNumber v{Rational(m.coeff)};
        for (int i = 0; i < num_vars; ++i)
            if (m.exponents[i]) v = v * pow(x[i], m.exponents[i]);
        sum = sum + v;
    }
    return sum;
}

double HomogeneousPoly::log_norm(const Place& w) const {
    if (!w.finite()) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Monomial& m : terms) {
            Integer mx = abs(m.coeff.get_num());
            best = std::max(best, log_abs_int(mx) - log_abs_int(m.coeff.get_den()));
        }
        return best;
    }
    // max |c|_p = p^{-min ord_p(c)}
    long vmin = std::numeric_limits<long>::max();
    for (const Monomial& m : terms)
        vmin = std::min(vmin, ord_int(m.coeff.get_num(), w.p) - ord_int(m.coeff.get_den(), w.p));
    return -static_cast<double>(vmin) * std::log(static_cast<double>(w.p));
}

ClosedSubsetSpec ClosedSubsetSpec::make(int ambient_dim, std::vector<HomogeneousPoly> gens) {
    if (gens.empty()) throw std::invalid_argument("subset needs at least one generator");
    for (const HomogeneousPoly& g : gens)
        if (g.num_vars != ambient_dim + 1)
            throw std::invalid_argument("generator arity must be ambient_dim + 1");
    return ClosedSubsetSpec{ambient_dim, std::move(gens)};
}

ProjectivePoint ProjectivePoint::make(FieldDescriptor f, std::vector<AlgebraicNumber> coords) {
    bool nonzero = std::any_of(coords.begin(), coords.end(),
                               [](const AlgebraicNumber& c) { return !c.is_zero(); });
    if (!nonzero) throw std::invalid_argument("projective point needs a nonzero coordinate");
    return ProjectivePoint{f, std::move(coords)};
}

// ---------------------------------------------------------------- subset heights

namespace {

// ord_w scaled by 1/e_w as an exact rational (units of log p)
Rational scaled_valuation(const AlgebraicNumber& t, const Place& w) {
    return Rational(valuation(t, w), w.ramification());
}

double local_height_subset_finite(const ProjectivePoint& P, const ClosedSubsetSpec& Y,
                                  const Place& w, const std::vector<AlgebraicNumber>& values) {
    // log‖x_P‖_w = −(min_i ord_w(x_i)/e_w)·log p over nonzero coordinates
    bool have = false;
    Rational vx;
    for (const AlgebraicNumber& c : P.coords) {
        if (c.is_zero()) continue;
        Rational v = scaled_valuation(c, w);
        if (!have || v < vx) vx = v, have = true;
    }
    // h = min_i −log(|g_i(x)|/(‖g_i‖·‖x‖^deg)) = (min_i [v_g − v_norm − deg·vx])·log p
    bool any = false;
    Rational best;
    for (std::size_t i = 0; i < Y.generators.size(); ++i) {
        if (values[i].is_zero()) continue;
        const HomogeneousPoly& g = Y.generators[i];
        long vnorm = std::numeric_limits<long>::max();
        for (const Monomial& m : g.terms)
            vnorm = std::min(vnorm, ord_int(m.coeff.get_num(), w.p) - ord_int(m.coeff.get_den(), w.p));
        Rational term = scaled_valuation(values[i], w) - Rational(vnorm) -
                        Rational(static_cast<long>(g.degree())) * vx;
        if (!any || term < best) best = term, any = true;
    }
    return best.get_d() * std::log(static_cast<double>(w.p));
}

double local_height_subset_arch(const ProjectivePoint& P, const ClosedSubsetSpec& Y, const Place& w,
                                const std::vector<AlgebraicNumber>& values) {
    double log_x = -std::numeric_limits<double>::infinity();
    for (const AlgebraicNumber& c : P.coords)
        if (!c.is_zero()) log_x = std::max(log_x, c.log_abs_embed(w.index));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < Y.generators.size(); ++i) {
        if (values[i].is_zero()) continue;
        const HomogeneousPoly& g = Y.generators[i];
        double term = -(values[i].log_abs_embed(w.index) - g.log_norm(w) - g.degree() * log_x);
        best = std::min(best, term);
    }
    return best;
}

std::vector<AlgebraicNumber> evaluate_generators(const ProjectivePoint& P, const ClosedSubsetSpec& Y) {
    if (static_cast<int>(P.coords.size()) != Y.ambient_dim + 1)
        throw std::invalid_argument("point/subset dimension mismatch");
    std::vector<AlgebraicNumber> values;
    values.reserve(Y.generators.size());
    bool any_nonzero = false;
    for (const HomogeneousPoly& g : Y.generators) {
        values.push_back(g.evaluate(P.coords));
        any_nonzero = any_nonzero || !values.back().is_zero();
    }
    if (!any_nonzero) throw PointInSubsetError("point lies in the closed subset");
    return values;
}

}  // namespace

double local_height_subset(const ProjectivePoint& P, const ClosedSubsetSpec& Y, const Place& w) {
    std::vector<AlgebraicNumber> values = evaluate_generators(P, Y);
    if (w.finite()) return local_height_subset_finite(P, Y, w, values);
    return local_height_subset_arch(P, Y, w, values);
}

double global_height_subset(const ProjectivePoint& P, const ClosedSubsetSpec& Y) {
    std::vector<AlgebraicNumber> values = evaluate_generators(P, Y);
    std::set<unsigned long> primes;
    auto gather = [&](const AlgebraicNumber& t) {
        if (t.is_zero()) return;
        for (unsigned long p : support_primes(t)) primes.insert(p);
    };
    for (const AlgebraicNumber& c : P.coords) gather(c);
    for (const AlgebraicNumber& v : values) gather(v);
    for (const HomogeneousPoly& g : Y.generators)
        for (const Monomial& m : g.terms) gather(AlgebraicNumber(m.coeff));

    double sum = 0.0;
    for (const Place& w : archimedean_places(P.field))
        sum += w.local_degree() * local_height_subset_arch(P, Y, w, values);
    for (unsigned long p : primes)
        for (const Place& w : places_above(p, P.field))
            sum += w.local_degree() * local_height_subset_finite(P, Y, w, values);
    return sum / P.field.degree();
}

}  // namespace suneq
