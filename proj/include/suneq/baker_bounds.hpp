#ifndef SUNEQ_BAKER_BOUNDS_HPP
#define SUNEQ_BAKER_BOUNDS_HPP

#include <optional>
#include <string>

#include "suneq/s_units.hpp"

namespace suneq {

// c₁(d,s): ((s−1)!)²/(2^{s−3} log 2) for d = 1,
//          (((s−1)!)²/2^{s−2})·log(3d)³ for d ≥ 2
double c1_const(int d, int s);
// c₂(d,s) = d³ log(ed)·min(1.451(30√2)^{s+4}(s+1)^{5.5}, π·2^{6.5s+27})
double c2_const(int d, int s);
// c₃(d,s) = e√(s−2)·(((s−1)!)²/2^{s−2})·π^{s−2}·(8.5 | 29 d log d); needs s ≥ 3
double c3_const(int d, int s);

// H = max(h(α), h(β), 1, π/d)
double h_parameter(const AlgebraicNumber& alpha, const AlgebraicNumber& beta, int d);

struct BakerConstants {
    int d = 1, s = 2;
    double c1 = 0, c2 = 0, c3 = 0;
    double bg_c1 = 0;  // Bugeaud–Győry c₁(s)
    std::optional<double> injected_C;       // C(d,s) for the Baker lower bound
    std::optional<double> injected_gy_c26;  // c(d,s) closed form, branch 1
    std::optional<double> injected_gy_c1;   // c′(d,s) closed form, branch 2

    static BakerConstants builtin(int d, int s);  // c3 left 0 when s < 3
};

struct InjectedConstants {
    std::optional<double> C_prop23;
    std::optional<double> gy_c26;
    std::optional<double> gy_c1;

    static InjectedConstants from_json(const nlohmann::json& j);
};

// −C(d,s)·N(w)·R_S·log*(h_alpha); requires injected_C
double baker_lower_bound(double h_alpha, const Place& w, const BakerConstants& consts, double R_S);

// h_L·R_S·m^{d/e}, e = Euler's number; upper bound for R_{S∪S_m}
double regulator_extension_bound(double h_L, double R_S, long m, int d);

/// Largest root h* of h/s − H = K·log(c₁h/(√2 H)), K = (n_w/d)·c₂·c₃·R_S·H.
/// Bisection to relative tolerance 1e−9; returns s·H in the K → 0 limit.
double solve_height_inequality(int s, int d, int n_w, double R_S, double H,
                               const BakerConstants& consts);

struct SUnitEquation {
    FieldDescriptor field;
    PlaceSet S;
    AlgebraicNumber alpha, beta;

    static SUnitEquation make(FieldDescriptor f, PlaceSet S, AlgebraicNumber alpha,
                              AlgebraicNumber beta);
};

struct BoundReport {
    SUnitEquation equation;
    std::string branch;  // trivial-s<=2 | collision-3H | archimedean | finite-PS'
    double H = 0, R_S = 0;
    Integer P_S{1}, P_S_third{1};
    BakerConstants constants;
    std::string branch2_provenance;  // "injected" | "surrogate" | ""
    double solver_root = 0;          // h* when the solver ran, else 0
    int solver_iterations = 0;
    double solver_tolerance = 1e-9;
    double bound = 0;  // final height bound, ≥ H always
    std::optional<double> closed_form_branch1;  // c·R_S·log*(R_S)·H when gy_c26 injected
    std::optional<double> closed_form_branch2;  // c′·P′_S·R_S·(1+log*R_S/log*P′_S)·H

    nlohmann::json to_json() const;
};

/// Branch selection and final effective height bound; see BoundReport.
BoundReport sunit_bound(const SUnitEquation& eq, const InjectedConstants& injected = {});

}  // namespace suneq

#endif
