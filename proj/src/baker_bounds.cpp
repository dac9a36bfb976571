#include "suneq/baker_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace suneq {

namespace {

long double factorial_ld(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

double c1_const(int d, int s) {
    if (s < 2) throw std::invalid_argument("c1_const: s >= 2 required");
    if (d < 1) throw std::invalid_argument("c1_const: d >= 1 required");
    long double fac2 = factorial_ld(s - 1);
    fac2 *= fac2;
    if (d == 1) return static_cast<double>(fac2 / (std::pow(2.0L, s - 3) * std::log(2.0L)));
    long double l = std::log(3.0L * d);
    return static_cast<double>(fac2 / std::pow(2.0L, s - 2) * l * l * l);
}

double c2_const(int d, int s) {
    if (s < 2 || d < 1) throw std::invalid_argument("c2_const: need d >= 1, s >= 2");
    const long double pi = std::numbers::pi_v<long double>;
    long double branch_a =
        1.451L * std::pow(30.0L * std::sqrt(2.0L), s + 4) * std::pow(static_cast<long double>(s + 1), 5.5L);
    long double branch_b = pi * std::pow(2.0L, 6.5L * s + 27);
    long double dd = d;
    return static_cast<double>(dd * dd * dd * std::log(std::numbers::e_v<long double> * dd) *
                               std::min(branch_a, branch_b));
}

double c3_const(int d, int s) {
    if (s < 3) throw std::invalid_argument("c3_const: s >= 3 required (sqrt(s-2) factor)");
    if (d < 1) throw std::invalid_argument("c3_const: d >= 1 required");
    const long double pi = std::numbers::pi_v<long double>;
    long double fac2 = factorial_ld(s - 1);
    fac2 *= fac2;
    long double v = std::numbers::e_v<long double> * std::sqrt(static_cast<long double>(s - 2)) *
                    (fac2 / std::pow(2.0L, s - 2)) * std::pow(pi, s - 2);
    long double tail = (d == 1) ? 8.5L : 29.0L * d * std::log(static_cast<long double>(d));
    return static_cast<double>(v * tail);
}

double h_parameter(const AlgebraicNumber& alpha, const AlgebraicNumber& beta, int d) {
    if (alpha.is_zero() || beta.is_zero())
        throw std::invalid_argument("h_parameter: zero coefficient");
    return std::max({weil_height(alpha), weil_height(beta), 1.0, std::numbers::pi / d});
}

BakerConstants BakerConstants::builtin(int d, int s) {
    BakerConstants c;
    c.d = d;
    c.s = s;
    // the s-dependent constants only enter for s >= 3 (c1, c2 also make
    // sense at s = 2); leave them 0 where the formula does not apply
    c.c1 = (s >= 2) ? c1_const(d, s) : 0.0;
    c.c2 = (s >= 2) ? c2_const(d, s) : 0.0;
    c.c3 = (s >= 3) ? c3_const(d, s) : 0.0;
    c.bg_c1 = bugeaud_gyory_c1(d, s);
    return c;
}

InjectedConstants InjectedConstants::from_json(const nlohmann::json& j) {
    InjectedConstants c;
    if (j.contains("C_prop23")) c.C_prop23 = j.at("C_prop23").get<double>();
    if (j.contains("gy_c26")) c.gy_c26 = j.at("gy_c26").get<double>();
    if (j.contains("gy_c1")) c.gy_c1 = j.at("gy_c1").get<double>();
    return c;
}

double baker_lower_bound(double h_alpha, const Place& w, const BakerConstants& consts, double R_S) {
    if (!consts.injected_C)
        throw std::invalid_argument("baker_lower_bound: injected C(d,s) required");
    double nw = w.finite() ? mpz_get_d(w.ideal_norm().get_mpz_t()) : 2.0;
    return -(*consts.injected_C) * nw * R_S * log_star(std::max(h_alpha, 1e-300));
}

double regulator_extension_bound(double h_L, double R_S, long m, int d) {
    if (m < 1) throw std::invalid_argument("regulator_extension_bound: m >= 1");
    return h_L * R_S * std::pow(static_cast<double>(m), d / std::numbers::e);
}

namespace {

struct SolverResult {
    double root;
    int iterations;
};

SolverResult solve_inequality_impl(int s, int d, int n_w, double R_S, double H,
                                   const BakerConstants& consts) {
    if (s < 3) throw std::invalid_argument("inequality solver needs s >= 3");
    if (R_S < 0 || H <= 0 || n_w < 1) throw std::invalid_argument("solver inputs must be positive");
    const double c1 = consts.c1;
    const double K = (static_cast<double>(n_w) / d) * consts.c2 * consts.c3 * R_S * H;
    if (K == 0.0) return {s * H, 0};  // K -> 0 limit of the largest root
    auto f = [&](double h) { return h / s - H - K * std::log(c1 * h / (std::numbers::sqrt2 * H)); };

    const double lo0 = std::numbers::sqrt2 * std::numbers::e * H / c1;  // log term ≥ 1 here
    double a = std::max(lo0, static_cast<double>(s) * K);               // argmin of f
    int iter = 0;
    if (f(a) > 0) {
        // f already positive at its minimum's clamp: every h ≥ a violates the inequality
        if (f(lo0) > 0) return {lo0, 0};
        double blo = lo0, bhi = a;
        while ((bhi - blo) > 1e-9 * bhi && iter < 500) {
            double mid = 0.5 * (blo + bhi);
            (f(mid) <= 0 ? blo : bhi) = mid;
            ++iter;
        }
        return {bhi, iter};
    }
    double b = 2 * a;
    while (f(b) <= 0) {
        b *= 2;
        if (++iter > 2000) throw std::runtime_error("solver bracket expansion did not converge");
    }
    while ((b - a) > 1e-9 * b && iter < 500) {
        double mid = 0.5 * (a + b);
        (f(mid) <= 0 ? a : b) = mid;
        ++iter;
    }
    if ((b - a) > 1e-9 * b) throw std::runtime_error("solver iteration cap exceeded");
    return {b, iter};
}

}  // namespace

double solve_height_inequality(int s, int d, int n_w, double R_S, double H,
                               const BakerConstants& consts) {
    return solve_inequality_impl(s, d, n_w, R_S, H, consts).root;
}

SUnitEquation SUnitEquation::make(FieldDescriptor f, PlaceSet S, AlgebraicNumber alpha,
                                  AlgebraicNumber beta) {
    if (!(S.field == f)) throw FieldMismatchError("equation field/place-set mismatch");
    if (alpha.is_zero() || beta.is_zero())
        throw std::invalid_argument("alpha, beta must be nonzero");
    return SUnitEquation{std::move(f), std::move(S), std::move(alpha), std::move(beta)};
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    suneq::to_json(j["field"], equation.field);
    j["S"] = nlohmann::json::array();
    for (const Place& w : equation.S.places) {
        nlohmann::json jw;
        suneq::to_json(jw, w);
        j["S"].push_back(jw);
    }
    j["alpha"] = equation.alpha.to_string();
    j["beta"] = equation.beta.to_string();
    j["branch"] = branch;
    j["H"] = H;
    j["R_S"] = R_S;
    j["P_S"] = P_S.get_str();
    j["P_S_third"] = P_S_third.get_str();
    j["constants"] = {
        {"d", constants.d},
        {"s", constants.s},
        {"c1", constants.c1},
        {"c2", constants.c2},
        {"c3", constants.c3},
        {"bg_c1", constants.bg_c1},
        {"provenance", "builtin-formula"},
    };
    if (constants.injected_C) j["constants"]["C_prop23"] = {{"value", *constants.injected_C}, {"provenance", "injected-config"}};
    if (constants.injected_gy_c26) j["constants"]["gy_c26"] = {{"value", *constants.injected_gy_c26}, {"provenance", "injected-config"}};
    if (constants.injected_gy_c1) j["constants"]["gy_c1"] = {{"value", *constants.injected_gy_c1}, {"provenance", "injected-config"}};
    if (!branch2_provenance.empty()) j["branch2_provenance"] = branch2_provenance;
    if (solver_root > 0) {
        j["solver"] = {{"root", solver_root},
                       {"iterations", solver_iterations},
                       {"relative_tolerance", solver_tolerance}};
    }
    if (closed_form_branch1) j["closed_form_branch1"] = *closed_form_branch1;
    if (closed_form_branch2) j["closed_form_branch2"] = *closed_form_branch2;
    j["bound"] = bound;
    return j;
}

BoundReport sunit_bound(const SUnitEquation& eq, const InjectedConstants& injected) {
    const int d = eq.field.degree();
    const int s = static_cast<int>(eq.S.size());
    BoundReport rep;
    rep.equation = eq;
    rep.H = h_parameter(eq.alpha, eq.beta, d);
    rep.R_S = s_regulator(eq.field, eq.S);
    PrimeNormStats stats = prime_norm_stats(eq.S);
    rep.P_S = stats.P_S;
    rep.P_S_third = stats.P_S_third;
    rep.constants = BakerConstants::builtin(d, s);
    rep.constants.injected_C = injected.C_prop23;
    rep.constants.injected_gy_c26 = injected.gy_c26;
    rep.constants.injected_gy_c1 = injected.gy_c1;

    const double H = rep.H;
    const double trivial = 4 * H + std::log(2.0);
    const double collision = 3 * H;

    if (s <= 2) {
        rep.branch = "trivial-s<=2";
        rep.bound = trivial;
    } else if (eq.S.num_finite() <= 2) {
        rep.branch = "archimedean";
        // worst case n_w = d: maximizes the right side, so the root is a sound bound
        SolverResult sol = solve_inequality_impl(s, d, d, rep.R_S, H, rep.constants);
        rep.solver_root = sol.root;
        rep.solver_iterations = sol.iterations;
        rep.bound = std::max({sol.root, collision, trivial});
    } else {
        rep.branch = "finite-PS'";
        double pps = mpz_get_d(stats.P_S_third.get_mpz_t());
        double shape = pps * rep.R_S * (1.0 + log_star(rep.R_S) / log_star(pps)) * H;
        double cprime;
        if (injected.gy_c1) {
            cprime = *injected.gy_c1;
            rep.branch2_provenance = "injected";
        } else {
            cprime = rep.constants.c2 * rep.constants.c3;
            rep.branch2_provenance = "surrogate";
        }
        rep.bound = std::max({cprime * shape, collision, trivial});
    }
    if (injected.gy_c26)
        rep.closed_form_branch1 = *injected.gy_c26 * rep.R_S * log_star(rep.R_S) * H;
    if (injected.gy_c1) {
        double pps = mpz_get_d(stats.P_S_third.get_mpz_t());
        rep.closed_form_branch2 =
            *injected.gy_c1 * pps * rep.R_S * (1.0 + log_star(rep.R_S) / log_star(pps)) * H;
    }
    rep.bound = std::max(rep.bound, H);
    return rep;
}

}  // namespace suneq
