#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "suneq/sunit_solver.hpp"
#include "suneq/tubular.hpp"

namespace {

using namespace suneq;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitMissingConstants = 3;
constexpr int kExitResourceLimit = 4;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstantsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string field = "Q";
    unsigned long D = 0;
    std::string s_primes;
    std::string alpha = "1";
    std::string beta = "1";
    long cap = 12;
    std::string constants_path;
    std::string format = "json";
    std::string incidence_path;
    int cap_inf = 4;
    int cap_fin = 4;
};

FieldDescriptor make_field(const RunConfig& cfg) {
    if (cfg.field == "Q" || cfg.field == "q") return FieldDescriptor::rationals();
    if (cfg.field == "quad") {
        if (cfg.D == 0) throw ValidationError("--field quad requires --D");
        return FieldDescriptor::real_quadratic(cfg.D);
    }
    throw ValidationError("unknown --field (expected Q or quad): " + cfg.field);
}

std::vector<unsigned long> parse_primes(const std::string& text) {
    std::vector<unsigned long> primes;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        char* end = nullptr;
        unsigned long p = std::strtoul(tok.c_str(), &end, 10);
        if (!end || *end != '\0' || p < 2) throw ValidationError("bad prime in --S: " + tok);
        Integer pz(static_cast<long>(p));
        if (mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
            throw ValidationError("--S entry is not prime: " + tok);
        if (std::find(primes.begin(), primes.end(), p) != primes.end())
            throw ValidationError("--S primes must be distinct: " + tok);
        primes.push_back(p);
    }
    return primes;
}

SUnitEquation make_equation(const RunConfig& cfg) {
    FieldDescriptor f = make_field(cfg);
    PlaceSet S = PlaceSet::over_primes(f, parse_primes(cfg.s_primes));
    AlgebraicNumber a = parse_algebraic(cfg.alpha, f);
    AlgebraicNumber b = parse_algebraic(cfg.beta, f);
    return SUnitEquation::make(f, S, a, b);
}

InjectedConstants load_constants(const RunConfig& cfg) {
    if (cfg.constants_path.empty()) return {};
    std::ifstream in(cfg.constants_path);
    if (!in) throw ConstantsError("cannot open constants file: " + cfg.constants_path);
    nlohmann::json j;
    try {
        in >> j;
        return InjectedConstants::from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConstantsError(std::string("bad constants file: ") + e.what());
    }
}

void print_bound(const BoundReport& rep, const std::string& format) {
    if (format == "json") {
        std::cout << rep.to_json().dump(2) << "\n";
    } else if (format == "tsv") {
        nlohmann::json j = rep.to_json();
        std::cout << "branch\t" << rep.branch << "\n"
                  << "H\t" << j["H"].dump() << "\n"
                  << "R_S\t" << j["R_S"].dump() << "\n"
                  << "bound\t" << j["bound"].dump() << "\n";
    } else if (format == "human") {
        std::printf("branch: %s\nH = %.10g\nR_S = %.10g\nbound = %.10g\n", rep.branch.c_str(),
                    rep.H, rep.R_S, rep.bound);
    } else {
        throw ValidationError("unknown --format: " + format);
    }
}

int cmd_bound(const RunConfig& cfg) {
    SUnitEquation eq = make_equation(cfg);
    BoundReport rep = sunit_bound(eq, load_constants(cfg));
    print_bound(rep, cfg.format);
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg) {
    if (cfg.cap < 1) throw ValidationError("--cap must be >= 1");
    SUnitEquation eq = make_equation(cfg);
    std::vector<Solution> sols = enumerate_solutions(eq, cfg.cap);
    for (const Solution& s : sols) {
        if (cfg.format == "json") {
            std::cout << solution_to_json(s).dump() << "\n";
        } else if (cfg.format == "tsv") {
            nlohmann::json j = solution_to_json(s);
            std::cout << j["x"].get<std::string>() << "\t" << j["y"].get<std::string>() << "\t"
                      << j["hx"].dump() << "\t" << j["hy"].dump() << "\n";
        } else if (cfg.format == "human") {
            std::printf("x = %s, y = %s, h = %.10g\n", s.x.to_string().c_str(),
                        s.y.to_string().c_str(), s.h());
        } else {
            throw ValidationError("unknown --format: " + cfg.format);
        }
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    if (cfg.cap < 1) throw ValidationError("--cap must be >= 1");
    SUnitEquation eq = make_equation(cfg);
    BoundReport rep = sunit_bound(eq, load_constants(cfg));
    std::vector<Solution> sols = enumerate_solutions(eq, cfg.cap);
    Verdict v = verify_bound(eq, rep, sols);
    if (cfg.format == "json") {
        nlohmann::json j = {{"schema", 1},
                            {"pass", v.pass},
                            {"solutions", v.solutions},
                            {"worst_margin", v.worst_margin},
                            {"bound", rep.bound},
                            {"branch", rep.branch}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%s margin=%.10g solutions=%zu bound=%.10g\n", v.pass ? "PASS" : "FAIL",
                    v.worst_margin, v.solutions, v.solutions ? rep.bound : rep.bound);
    }
    return v.pass ? kExitOk : kExitFail;
}

int cmd_tubular(const RunConfig& cfg) {
    if (cfg.incidence_path.empty()) throw ValidationError("tubular requires --incidence <path>");
    std::ifstream in(cfg.incidence_path);
    if (!in) throw ValidationError("cannot open incidence file: " + cfg.incidence_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad incidence JSON: ") + e.what());
    }
    IncidenceData inc = IncidenceData::from_json(j);
    nlohmann::json rep = tubular_report(inc, cfg.cap_inf, cfg.cap_fin);
    if (cfg.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else {
        if (rep["m_B"].is_null())
            std::printf("m_B does not exist\n");
        else
            std::printf("m_B = %d\n", rep["m_B"].get<int>());
        if (rep["m_Y"].is_null())
            std::printf("m_Y does not exist (full intersection not contained)\n");
        else
            std::printf("m_Y = %d\n", rep["m_Y"].get<int>());
        std::printf("feasible signatures (r_inf, r_fin):");
        for (const auto& sig : rep["feasible_signatures"])
            std::printf(" (%d,%d)", sig[0].get<int>(), sig[1].get<int>());
        std::printf("\n");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effective height bounds for S-unit equations"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_equation_flags = [&](CLI::App* sub) {
        sub->add_option("--field", cfg.field, "Q or quad");
        sub->add_option("--D", cfg.D, "squarefree D for --field quad");
        sub->add_option("--S", cfg.s_primes, "comma-separated primes of S");
        sub->add_option("--alpha", cfg.alpha, "exact coefficient, e.g. 3/2 or 1+2*sqrt2");
        sub->add_option("--beta", cfg.beta, "exact coefficient");
        sub->add_option("--constants", cfg.constants_path, "injected constants JSON");
        sub->add_option("--format", cfg.format, "json | tsv | human");
    };

    CLI::App* bound = app.add_subcommand("bound", "compute the effective height bound");
    add_equation_flags(bound);
    CLI::App* solve = app.add_subcommand("solve", "enumerate solutions up to an exponent cap");
    add_equation_flags(solve);
    solve->add_option("--cap", cfg.cap, "exponent cap (default 12)");
    CLI::App* verify = app.add_subcommand("verify", "check the bound against enumeration");
    add_equation_flags(verify);
    verify->add_option("--cap", cfg.cap, "exponent cap (default 12)");
    CLI::App* tubular = app.add_subcommand("tubular", "check the tubular condition");
    tubular->add_option("--incidence", cfg.incidence_path, "incidence data JSON");
    tubular->add_option("--cap-inf", cfg.cap_inf, "max r_inf in signature search");
    tubular->add_option("--cap-fin", cfg.cap_fin, "max r_fin in signature search");
    tubular->add_option("--format", cfg.format, "json | human");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (bound->parsed()) return cmd_bound(cfg);
        if (solve->parsed()) return cmd_solve(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (tubular->parsed()) return cmd_tubular(cfg);
    } catch (const ConstantsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMissingConstants;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
