#include "suneq/number_fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace suneq {

namespace {

// log|q| for nonzero rational, accurate to a few ulp regardless of magnitude
double log_abs_mpz(const Integer& n) {
    long exp2;
    double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_abs_mpq(const Rational& q) {
    return log_abs_mpz(q.get_num()) - log_abs_mpz(q.get_den());
}

int sign_of(const Rational& q) { return sgn(q); }

}  // namespace

bool is_squarefree(long n) {
    if (n <= 0) return false;
    for (long d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
        while (n % d == 0) n /= d;
    }
    return true;
}

FieldDescriptor FieldDescriptor::real_quadratic(long D) {
    if (D <= 1 || !is_squarefree(D))
        throw std::invalid_argument("real_quadratic: D must be squarefree and > 1");
    FieldDescriptor f;
    f.kind = Kind::RealQuadratic;
    f.D = D;
    return f;
}

long FieldDescriptor::discriminant() const {
    if (kind == Kind::Rational) return 1;
    return (D % 4 == 1) ? D : 4 * D;
}

// ---------------------------------------------------------------- AlgebraicNumber

AlgebraicNumber::AlgebraicNumber(FieldDescriptor f, Rational a, Rational b)
    : field_(f), a_(std::move(a)), b_(std::move(b)) {
    canon();
}

void AlgebraicNumber::canon() {
    a_.canonicalize();
    b_.canonicalize();
    if (field_.is_rational() && b_ != 0)
        throw FieldMismatchError("nonzero sqrt part in a rational-field element");
}

bool AlgebraicNumber::compatible(const AlgebraicNumber& o) const {
    if (field_ == o.field_) return true;
    return field_.is_rational() || o.field_.is_rational();
}

FieldDescriptor AlgebraicNumber::join(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    if (x.field_ == y.field_) return x.field_;
    if (x.field_.is_rational()) return y.field_;
    if (y.field_.is_rational()) return x.field_;
    throw FieldMismatchError("elements of different quadratic fields");
}

AlgebraicNumber AlgebraicNumber::conjugate() const {
    return AlgebraicNumber(field_, a_, -b_);
}

Rational AlgebraicNumber::norm() const {
    if (field_.is_rational()) return a_;
    return a_ * a_ - Rational(field_.D) * b_ * b_;
}

Rational AlgebraicNumber::trace() const {
    if (field_.is_rational()) return a_;
    return 2 * a_;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (b_ == 0) return AlgebraicNumber(field_, 1 / a_, Rational(0));
    Rational n = norm();
    return AlgebraicNumber(field_, a_ / n, -b_ / n);
}

AlgebraicNumber operator+(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    return AlgebraicNumber(AlgebraicNumber::join(x, y), x.a_ + y.a_, x.b_ + y.b_);
}

AlgebraicNumber operator-(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    return AlgebraicNumber(AlgebraicNumber::join(x, y), x.a_ - y.a_, x.b_ - y.b_);
}

AlgebraicNumber operator*(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    FieldDescriptor f = AlgebraicNumber::join(x, y);
    if (f.is_rational()) return AlgebraicNumber(f, x.a_ * y.a_, Rational(0));
    Rational D(f.D);
    return AlgebraicNumber(f, x.a_ * y.a_ + D * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
}

AlgebraicNumber operator/(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    return x * y.inverse();
}

AlgebraicNumber AlgebraicNumber::operator-() const {
    return AlgebraicNumber(field_, -a_, -b_);
}

AlgebraicNumber pow(const AlgebraicNumber& t, long e) {
    if (e < 0) return pow(t.inverse(), -e);
    AlgebraicNumber r(t.field(), Rational(1));
    AlgebraicNumber base = t;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

int AlgebraicNumber::sign_at(int embedding) const {
    Rational b = (embedding == 0) ? b_ : -b_;
    if (b == 0) return sign_of(a_);
    if (a_ == 0) return sign_of(b);
    int sa = sign_of(a_), sb = sign_of(b);
    if (sa == sb) return sa;
    // compare a² against D·b² to decide which term dominates
    int c = cmp(a_ * a_, Rational(field_.D) * b * b);
    if (c == 0) throw std::logic_error("sqrt(D) rational: D not squarefree?");
    return c > 0 ? sa : sb;
}

double AlgebraicNumber::log_abs_embed(int embedding) const {
    if (is_zero()) throw std::domain_error("log of zero");
    Rational b = (embedding == 0) ? b_ : -b_;
    if (b == 0) return log_abs_mpq(a_);
    double lb = log_abs_mpq(b) + 0.5 * std::log(static_cast<double>(field_.D));
    if (a_ == 0) return lb;
    double la = log_abs_mpq(a_);
    double hi = std::max(la, lb), lo = std::min(la, lb);
    if (sign_of(a_) == sign_of(b)) return hi + std::log1p(std::exp(lo - hi));
    if (hi - lo > 0.5) return hi + std::log1p(-std::exp(lo - hi));
    // severe cancellation: |a+b√D| = |a²−Db²| / |a−b√D|, the conjugate adds cleanly
    AlgebraicNumber conj(field_, a_, (embedding == 0) ? -b_ : b_);
    return log_abs_mpq(norm()) - conj.log_abs_embed(0);
}

double AlgebraicNumber::embed(int embedding) const {
    if (is_zero()) return 0.0;
    return sign_at(embedding) * std::exp(log_abs_embed(embedding));
}

int AlgebraicNumber::cmp_abs(int embedding, const Rational& q) const {
    if (q < 0) throw std::invalid_argument("cmp_abs: q must be >= 0");
    if (is_zero()) return -sign_of(q);
    // |t| vs q  <=>  t² vs q², and t² = (a²+Db²) + 2ab·√D is again in the field
    AlgebraicNumber sq = (*this) * (*this);
    AlgebraicNumber diff = sq - AlgebraicNumber(field_, q * q);
    if (diff.is_zero()) return 0;
    return diff.sign_at(embedding);
}

std::string AlgebraicNumber::to_string() const {
    std::ostringstream os;
    if (field_.is_rational() || b_ == 0) {
        os << a_;
        return os.str();
    }
    if (a_ != 0) os << a_ << (b_ > 0 ? "+" : "");
    if (b_ == -1)
        os << "-";
    else if (b_ != 1)
        os << b_ << "*";
    os << "sqrt" << field_.D;
    return os.str();
}

// ---------------------------------------------------------------- Place

Place Place::archimedean(int index) {
    Place w;
    w.kind = Kind::Archimedean;
    w.index = index;
    return w;
}

Place Place::finite_rational(unsigned long p) {
    Place w;
    w.kind = Kind::Finite;
    w.p = p;
    w.splitting = Splitting::RationalPrime;
    return w;
}

Integer Place::ideal_norm() const {
    if (!finite()) throw std::domain_error("ideal_norm of archimedean place");
    Integer n(static_cast<unsigned long>(p));
    if (splitting == Splitting::Inert) n *= n;
    return n;
}

int Place::local_degree() const {
    if (!finite()) return 1;
    switch (splitting) {
        case Splitting::RationalPrime:
        case Splitting::Split: return 1;
        case Splitting::Inert:
        case Splitting::Ramified: return 2;
    }
    return 1;
}

int Place::ramification() const {
    return (finite() && splitting == Splitting::Ramified) ? 2 : 1;
}

std::string to_string(const Place& w) {
    if (!w.finite()) return "inf" + std::to_string(w.index);
    std::string s = "p" + std::to_string(w.p);
    switch (w.splitting) {
        case Place::Splitting::Split: s += (w.index == 0 ? "a" : "b"); break;
        case Place::Splitting::Inert: s += "i"; break;
        case Place::Splitting::Ramified: s += "r"; break;
        default: break;
    }
    return s;
}

std::vector<Place> archimedean_places(const FieldDescriptor& f) {
    if (f.is_rational()) return {Place::archimedean(0)};
    return {Place::archimedean(0), Place::archimedean(1)};
}

std::vector<Place> places_above(unsigned long p, const FieldDescriptor& f) {
    if (f.is_rational()) return {Place::finite_rational(p)};
    Place::Splitting sp;
    long D = f.D;
    if (p == 2) {
        long m = ((D % 8) + 8) % 8;
        if (m == 1)
            sp = Place::Splitting::Split;
        else if (m == 5)
            sp = Place::Splitting::Inert;
        else
            sp = Place::Splitting::Ramified;
    } else if (D % static_cast<long>(p) == 0) {
        sp = Place::Splitting::Ramified;
    } else {
        Integer Dz(D);
        int k = mpz_kronecker_ui(Dz.get_mpz_t(), p);
        sp = (k == 1) ? Place::Splitting::Split : Place::Splitting::Inert;
    }
    Place w;
    w.kind = Place::Kind::Finite;
    w.p = p;
    w.splitting = sp;
    if (sp == Place::Splitting::Split) {
        Place w2 = w;
        w2.index = 1;
        return {w, w2};
    }
    return {w};
}

// ---------------------------------------------------------------- PlaceSet

PlaceSet PlaceSet::over_primes(const FieldDescriptor& f, const std::vector<unsigned long>& primes) {
    PlaceSet S;
    S.field = f;
    S.places = archimedean_places(f);
    for (unsigned long p : primes)
        for (const Place& w : places_above(p, f)) S.places.push_back(w);
    std::sort(S.places.begin(), S.places.end());
    S.places.erase(std::unique(S.places.begin(), S.places.end()), S.places.end());
    return S;
}

PlaceSet PlaceSet::make(const FieldDescriptor& f, std::vector<Place> ps) {
    std::sort(ps.begin(), ps.end());
    if (std::adjacent_find(ps.begin(), ps.end()) != ps.end())
        throw std::invalid_argument("duplicate places");
    for (const Place& w : archimedean_places(f))
        if (!std::binary_search(ps.begin(), ps.end(), w))
            throw std::invalid_argument("PlaceSet must contain every archimedean place");
    PlaceSet S;
    S.field = f;
    S.places = std::move(ps);
    return S;
}

std::size_t PlaceSet::num_finite() const {
    return static_cast<std::size_t>(
        std::count_if(places.begin(), places.end(), [](const Place& w) { return w.finite(); }));
}

bool PlaceSet::contains(const Place& w) const {
    return std::binary_search(places.begin(), places.end(), w);
}

// ---------------------------------------------------------------- prime generators

namespace {

bool in_ring_of_integers(const AlgebraicNumber& t) {
    long D = t.field().D;
    if (D % 4 == 1) {
        Rational ta = 2 * t.rat_part(), tb = 2 * t.quad_part();
        if (ta.get_den() != 1 || tb.get_den() != 1) return false;
        return (ta.get_num() - tb.get_num()) % 2 == 0;
    }
    return t.rat_part().get_den() == 1 && t.quad_part().get_den() == 1;
}

// smallest-y principal element of norm ±p (or ±4p on the half-integral basis)
AlgebraicNumber search_generator(const FieldDescriptor& f, unsigned long p) {
    const long D = f.D;
    const long radius = 2'000'000;
    Integer Dz(D), pz(static_cast<unsigned long>(p));
    for (long y = 0; y <= radius; ++y) {
        Integer dy2 = Dz * y * y;
        for (int sign : {-1, +1}) {
            // integral basis Z[√D]: x² − Dy² = ±p
            Integer x2 = dy2 + sign * pz;
            if (x2 >= 0 && mpz_perfect_square_p(x2.get_mpz_t())) {
                Integer x = sqrt(x2);
                if (!(x == 0 && y == 0))
                    return AlgebraicNumber(f, Rational(x), Rational(y));
            }
            if (D % 4 == 1) {
                // half basis: (x + y√D)/2 with x ≡ y (mod 2), x² − Dy² = ±4p
                Integer x2h = dy2 + sign * 4 * pz;
                if (x2h >= 0 && mpz_perfect_square_p(x2h.get_mpz_t())) {
                    Integer x = sqrt(x2h);
                    if ((x - y) % 2 == 0 && !(x == 0 && y == 0))
                        return AlgebraicNumber(f, Rational(x) / 2, Rational(y) / 2);
                }
            }
        }
    }
    throw std::runtime_error("no principal generator of norm +-" + std::to_string(p) +
                             " within search radius; field may not have class number 1");
}

std::map<std::pair<long, unsigned long>, AlgebraicNumber>& generator_cache() {
    static std::map<std::pair<long, unsigned long>, AlgebraicNumber> cache;
    return cache;
}
std::mutex generator_mutex;

}  // namespace

AlgebraicNumber prime_generator(const FieldDescriptor& f, const Place& w) {
    if (!w.finite()) throw std::domain_error("prime_generator: archimedean place");
    if (f.is_rational() || w.splitting == Place::Splitting::RationalPrime)
        return AlgebraicNumber(Rational(static_cast<long>(w.p)));
    if (w.splitting == Place::Splitting::Inert)
        return AlgebraicNumber(f, Rational(static_cast<long>(w.p)));
    std::lock_guard<std::mutex> lock(generator_mutex);
    auto key = std::make_pair(f.D, w.p);
    auto it = generator_cache().find(key);
    AlgebraicNumber g;
    if (it != generator_cache().end())
        g = it->second;
    else
        generator_cache().emplace(key, g = search_generator(f, w.p));
    return (w.index == 0) ? g : g.conjugate();
}

// ---------------------------------------------------------------- valuations

namespace {

long mpz_ord(const Integer& n, unsigned long p) {
    if (n == 0) throw std::domain_error("ord of zero");
    Integer r, pz(p);
    return static_cast<long>(mpz_remove(r.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

long valuation(const AlgebraicNumber& t, const Place& w) {
    if (t.is_zero()) throw std::domain_error("valuation of zero");
    if (!w.finite()) throw std::domain_error("valuation at archimedean place");
    if (t.field().is_rational() || t.is_rational_value()) {
        long vq = mpz_ord(t.rat_part().get_num(), w.p) - mpz_ord(t.rat_part().get_den(), w.p);
        return vq * w.ramification();
    }
    const FieldDescriptor f = t.field();
    // clear denominators: u = m·t has integer coordinates, hence lies in O
    Integer m = lcm(t.rat_part().get_den(), t.quad_part().get_den());
    AlgebraicNumber u = t * AlgebraicNumber(Rational(m));
    AlgebraicNumber pi = prime_generator(f, w);
    Rational npi = pi.norm();
    long count = 0;
    for (;;) {
        AlgebraicNumber q = u * pi.conjugate();
        q = AlgebraicNumber(f, q.rat_part() / npi, q.quad_part() / npi);
        if (!in_ring_of_integers(q)) break;
        u = q;
        ++count;
    }
    return count - w.ramification() * mpz_ord(m, w.p);
}

double log_abs_value(const AlgebraicNumber& t, const Place& w) {
    if (t.is_zero()) throw std::domain_error("log_abs_value of zero");
    if (!w.finite()) return t.log_abs_embed(w.index);
    long v = valuation(t, w);
    return -(static_cast<double>(v) / w.ramification()) * std::log(static_cast<double>(w.p));
}

double abs_value(const AlgebraicNumber& t, const Place& w) {
    if (t.is_zero()) return 0.0;
    return std::exp(log_abs_value(t, w));
}

// ---------------------------------------------------------------- fundamental unit

AlgebraicNumber fundamental_unit(long D) {
    FieldDescriptor f = FieldDescriptor::real_quadratic(D);  // validates D
    Integer Dz(D);
    if (D % 4 == 1) {
        // smallest y > 0 with Dy² ± 4 square gives ε = (x + y√D)/2
        const long radius = 5'000'000;
        for (long y = 1; y <= radius; ++y) {
            Integer dy2 = Dz * y * y;
            for (int sign : {-1, +1}) {
                Integer x2 = dy2 + sign * 4;
                if (x2 > 0 && mpz_perfect_square_p(x2.get_mpz_t())) {
                    Integer x = sqrt(x2);
                    if ((x - y) % 2 == 0) {
                        AlgebraicNumber eps(f, Rational(x) / 2, Rational(y) / 2);
                        Rational n = eps.norm();
                        if (n != 1 && n != -1) throw std::logic_error("unit norm check failed");
                        return eps;
                    }
                }
            }
        }
        throw std::runtime_error("fundamental unit search exceeded radius for D=" + std::to_string(D));
    }
    // continued fraction of √D; the first convergent with h² − Dk² = ±1 is fundamental
    Integer a0 = sqrt(Dz);
    Integer P = 0, Q = 1, a = a0;
    Integer h_prev = 1, h = a0, k_prev = 0, k = 1;
    for (int iter = 0; iter < 100000; ++iter) {
        Integer n = h * h - Dz * k * k;
        if (n == 1 || n == -1) {
            AlgebraicNumber eps(f, Rational(h), Rational(k));
            Rational nn = eps.norm();
            if (nn != 1 && nn != -1) throw std::logic_error("unit norm check failed");
            return eps;
        }
        P = a * Q - P;
        Q = (Dz - P * P) / Q;
        a = (P + a0) / Q;
        Integer h_next = a * h + h_prev, k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    throw std::runtime_error("continued fraction did not close for D=" + std::to_string(D));
}

// ---------------------------------------------------------------- factorization

std::vector<std::pair<Integer, unsigned long>> factor(Integer n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::domain_error("factor(0)");
    std::vector<std::pair<Integer, unsigned long>> out;
    auto strip = [&](const Integer& d) {
        unsigned long e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    };
    strip(Integer(2));
    strip(Integer(3));
    for (Integer d = 5; d * d <= n; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational: '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return q;
}

}  // namespace

AlgebraicNumber parse_algebraic(const std::string& text, const FieldDescriptor& f) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty element");
    // split into signed terms at top-level +/-
    Rational a(0), b(0);
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        if (term.empty()) throw std::invalid_argument("bad element: '" + text + "'");
        auto star = term.find("*sqrt");
        if (star != std::string::npos || term.rfind("sqrt", 0) == 0) {
            std::string coeff = (star == std::string::npos) ? "1" : term.substr(0, star);
            std::string dpart = (star == std::string::npos) ? term.substr(4) : term.substr(star + 5);
            long D = std::stol(dpart);
            if (f.is_rational() || D != f.D)
                throw FieldMismatchError("sqrt" + dpart + " not in the declared field");
            b += sign * parse_rational(coeff);
        } else {
            a += sign * parse_rational(term);
        }
    }
    return AlgebraicNumber(f, a, b);
}

// ---------------------------------------------------------------- JSON

void to_json(nlohmann::json& j, const FieldDescriptor& f) {
    if (f.is_rational())
        j = {{"kind", "rational"}};
    else
        j = {{"kind", "real_quadratic"}, {"D", f.D}};
}

void from_json(const nlohmann::json& j, FieldDescriptor& f) {
    std::string kind = j.at("kind");
    if (kind == "rational")
        f = FieldDescriptor::rationals();
    else if (kind == "real_quadratic")
        f = FieldDescriptor::real_quadratic(j.at("D").get<long>());
    else
        throw std::invalid_argument("unknown field kind: " + kind);
}

namespace {
const std::map<Place::Splitting, std::string> kSplitNames = {
    {Place::Splitting::RationalPrime, "rational"},
    {Place::Splitting::Split, "split"},
    {Place::Splitting::Inert, "inert"},
    {Place::Splitting::Ramified, "ramified"},
};
}

void to_json(nlohmann::json& j, const Place& w) {
    if (!w.finite()) {
        j = {{"type", "arch"}, {"index", w.index}};
        return;
    }
    j = {{"type", "finite"}, {"p", w.p}, {"split", kSplitNames.at(w.splitting)}, {"index", w.index}};
}

void from_json(const nlohmann::json& j, Place& w) {
    std::string type = j.at("type");
    if (type == "arch") {
        w = Place::archimedean(j.at("index").get<int>());
        return;
    }
    if (type != "finite") throw std::invalid_argument("unknown place type: " + type);
    w.kind = Place::Kind::Finite;
    w.p = j.at("p").get<unsigned long>();
    w.index = j.value("index", 0);
    std::string split = j.at("split");
    for (const auto& [k, v] : kSplitNames)
        if (v == split) {
            w.splitting = k;
            return;
        }
    throw std::invalid_argument("unknown splitting: " + split);
}

}  // namespace suneq
