// Command-line front end: field data, lattice queries, Eisenstein tables, L-function evaluation
// and the verification suites. All machine output is JSON.

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include "arithlift/eisenstein.hpp"
#include "arithlift/errors.hpp"
#include "arithlift/fqm.hpp"
#include "arithlift/hermlat.hpp"
#include "arithlift/intersect.hpp"
#include "arithlift/io.hpp"
#include "arithlift/lfunc.hpp"
#include "arithlift/numtheory.hpp"
#include "arithlift/quadfield.hpp"
#include "arithlift/special.hpp"

using namespace arithlift;

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitInsufficient = 3;

struct Output {
    bool pretty = false;
    std::string path;

    void emit(const json& j) const {
        std::string text = pretty ? j.dump(2) : j.dump();
        if (path.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream out(path);
            if (!out) throw ParseError("cannot write " + path);
            out << text << "\n";
        }
    }
};

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::shared_ptr<const QuadField> field_of(long d) { return std::make_shared<QuadField>(d); }

// ---------------------------------------------------------------------------------------------
// field

json cmd_field(long d) {
    auto K = field_of(d);
    json reps = json::array();
    for (auto& r : K->ideal_class_reps())
        reps.push_back(json{{"form", {r.form_a, r.form_b, r.form_c}}, {"norm", to_string(r.norm())}});
    long double lchi = K->lchi();
    return json{{"d", K->d()},
                {"D", K->D()},
                {"h", K->class_number()},
                {"w", K->unit_count()},
                {"o", K->o()},
                {"primes_of_D", K->primes_of_D()},
                {"class_reps", reps},
                {"L_chi_1", static_cast<double>(K->dirichlet_L(1).real())},
                {"L_prime_chi_0", static_cast<double>(K->dirichlet_L_prime_at_0())},
                {"lchi", static_cast<double>(lchi)}};
}

// ---------------------------------------------------------------------------------------------
// lattice

struct LatticeArgs {
    std::string path;
    std::string rep;
    long ideal = 1;
    bool aut = false;
    std::string diff;
    std::string s0 = "default";
    bool invariants = false;
};

json cmd_lattice(const LatticeArgs& a) {
    HermitianLattice L = load_lattice(a.path);
    const QuadField& K = L.field();
    json out{{"lattice", lattice_to_json(L)}, {"integral", L.is_integral()}, {"self_dual", L.is_self_dual()}};
    if (!a.rep.empty()) {
        Rat m = parse_rational(a.rep);
        if (K.D() % a.ideal != 0) throw DomainError("--ideal must divide D");
        out["rep"] = json{{"m", to_string(m)}, {"ideal", a.ideal}, {"count", L.rep_number(m, a.ideal)}};
    }
    if (a.aut) out["aut"] = L.aut_size();
    if (!a.diff.empty()) {
        HermSpaceSpec s0 = parse_space_spec(L.field_ptr(), a.s0);
        DiffSet ds = diff_set(s0, parse_rational(a.diff));
        out["diff"] = json{{"m", to_string(ds.m)}, {"primes", std::vector<long>(ds.primes.begin(), ds.primes.end())}};
    }
    if (a.invariants) {
        json inv = json::object();
        for (long p : K.primes_of_D()) inv[std::to_string(p)] = L.local_invariant(p);
        out["local_invariants"] = inv;
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// eisenstein

json cmd_eisenstein(long d, const std::string& inv, const std::string& max_m) {
    auto K = field_of(d);
    HermSpaceSpec s0 = parse_space_spec(K, inv);
    Rat bound = parse_rational(max_m);
    double lchi = static_cast<double>(K->lchi());
    json rows = json::array();
    long kmax = to_long(floor_rat(bound * K->D()));
    for (long k = 0; k <= kmax; ++k) {
        Rat m = make_rat(k, K->D());
        json row{{"m", to_string(m)}};
        if (m > 0) {
            DiffSet ds = diff_set(s0, m);
            row["diff"] = std::vector<long>(ds.primes.begin(), ds.primes.end());
        }
        json vals = json::object();
        for (long R : divisors(K->D())) vals[std::to_string(R)] = arithmetic_to_json(aplus_r(s0, m, R), lchi);
        row["a_plus"] = vals;
        rows.push_back(row);
    }
    json inv_json = json::object();
    for (auto& [p, e] : s0.inv) inv_json[std::to_string(p)] = e;
    return json{{"d", d}, {"s0", inv_json}, {"rows", rows}};
}

// ---------------------------------------------------------------------------------------------
// lfun

struct LfunArgs {
    std::string newform;
    std::string lattice;
    std::string s0 = "default";
    std::string eta;
    long terms = 10000;
    int weight = 0;
    std::vector<double> eval;
    bool deriv0 = false;
    std::vector<double> decompose;
    bool main2 = false;
    double t0 = 1.2;
};

json cmd_lfun(const LfunArgs& a) {
    HermitianLattice L = load_lattice(a.lattice);
    auto K = L.field_ptr();
    int n = a.weight ? a.weight : L.rank() + 1;
    NewformData g = ingest_newform(a.newform, K->D(), n);
    HermSpaceSpec s0 = parse_space_spec(K, a.s0);
    std::optional<ClassCharacter> eta;
    if (!a.eta.empty()) eta = parse_class_character(*K, a.eta);
    AFEOptions opt;
    opt.t0 = a.t0;
    json out{{"level", g.level}, {"weight", g.weight}, {"terms", a.terms}};
    json eps = json::object();
    for (long Q : divisors(g.level)) eps[std::to_string(Q)] = scalar_to_json(epsilon_Q(g, Q));
    out["epsilon"] = eps;

    bool need_series = !a.eval.empty() || a.deriv0;
    if (need_series) {
        if (eta) throw DomainError("--eval and --deriv0 use the lattice itself; use --main2 for a character");
        FQMPtr mod = FiniteQuadraticModule::direct_sum(*FiniteQuadraticModule::rank_one(s0),
                                                       *FiniteQuadraticModule::from_lattice(L));
        InducedForm F = induce(g, orthogonal_sum(s0, L), mod, Rat(a.terms));
        RankinSeries V = vector_series(F, L, Rat(a.terms));
        json evals = json::array();
        for (double s : a.eval) {
            json e{{"s", s}, {"completed", cplx_json(completed_L(V, s, opt))}};
            try {
                DirectValue dv = direct_completed(V, s);
                e["direct_completed"] = cplx_json(dv.value);
                e["direct_tail_bound"] = dv.tail_bound;
            } catch (const OutsideConvergence&) {
                e["direct_completed"] = nullptr;
            }
            evals.push_back(e);
        }
        if (!a.eval.empty()) out["eval"] = evals;
        if (a.deriv0) {
            DerivativeValue dv = L_prime_at_0(V, opt);
            out["deriv0"] = json{{"value", dv.value},
                                 {"error_estimate", std::abs(dv.fd_h - dv.value) + std::abs(dv.fd_h2 - dv.fd_h)},
                                 {"richardson_h", dv.fd_h},
                                 {"richardson_h2", dv.fd_h2},
                                 {"step", dv.fd_step},
                                 {"lambda_at_0", dv.lambda_at_0},
                                 {"antisymmetry", dv.antisymmetry},
                                 {"pole_suspected", dv.pole_suspected()}};
        }
    }
    json decs = json::array();
    for (double s : a.decompose) {
        DecompositionCheck dc = scalar_vector_decomposition_check(g, L, s0, eta, s, a.terms);
        json e{{"s", s},
               {"vector", cplx_json(dc.lhs)},
               {"scalar_sum", cplx_json(dc.rhs)},
               {"residual", dc.residual},
               {"tail_bound", dc.tail_bound},
               {"pass", dc.passes()}};
        if (dc.product_form_checked) e["product_form_equal"] = dc.product_form_equal;
        decs.push_back(e);
    }
    if (!a.decompose.empty()) out["decompose"] = decs;
    if (a.main2) {
        MainTheorem2Value mv = theorem_maintheo2_rhs(g, L, s0, eta, a.terms, opt);
        out["main2"] = json{{"scalar_route", mv.scalar_route}, {"vector_route", mv.vector_route}, {"degree", mv.degree}};
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// verify

struct Report {
    json entries = json::array();
    bool all_pass = true;

    void add(const std::string& suite, const std::string& identity, bool pass, json details) {
        details["suite"] = suite;
        details["identity"] = identity;
        details["pass"] = pass;
        entries.push_back(std::move(details));
        all_pass = all_pass && pass;
    }
};

const std::vector<long> kSuiteFields{-7, -11, -23};

void suite_local(Report& rep, bool perturb) {
    for (long d : kSuiteFields) {
        auto K = field_of(d);
        HermSpaceSpec s0 = default_incoherent(K);
        long checks = 0, failures = 0;
        std::set<int> cases;
        json first_failure;
        for (long l : K->primes_of_D())
            for (long R : divisors(K->D()))
                for (long k = 1; k <= 60 * K->D(); ++k) {
                    Rat m1 = make_rat(k, K->D() * K->D());
                    LocalComboCheck c = local_combo_check(s0, l, m1, R);
                    if (!c.applicable) continue;
                    Rat rhs = c.rhs + ((perturb && checks == 0) ? Rat(1) : Rat(0));
                    ++checks;
                    cases.insert(c.case_id);
                    if (c.lhs != rhs) {
                        if (failures++ == 0)
                            first_failure = json{{"l", l}, {"m1", to_string(m1)}, {"R", R},
                                                 {"lhs", to_string(c.lhs)}, {"rhs", to_string(rhs)}};
                    }
                }
        bool pass = failures == 0 && cases.size() == 5;
        json det{{"d", d}, {"checks", checks}, {"failures", failures}, {"cases", std::vector<int>(cases.begin(), cases.end())}};
        if (failures) det["first_failure"] = first_failure;
        rep.add("local", "local combination identity", pass, det);
    }
}

void suite_proper(Report& rep, bool perturb) {
    for (long d : kSuiteFields) {
        auto K = field_of(d);
        HermSpaceSpec s0 = default_incoherent(K);
        long checks = 0, failures = 0;
        json sample, first_failure;
        for (auto& Lam : genus_rank_one(K)) {
            CycleConfig cfg = CycleConfig::make(s0, Lam);
            for (long R : divisors(K->D()))
                for (long k = 1; k <= 30 * K->D(); ++k)
                    for (long m2 = 0; m2 <= 10; ++m2) {
                        Rat m1 = make_rat(k, K->D());
                        IdentityCheck c = proper_identity_check(cfg, m1, Rat(m2), R);
                        ArithmeticNumber rhs = c.rhs;
                        if (perturb && checks == 0) rhs += ArithmeticNumber::log_prime(2);
                        ++checks;
                        bool ok = c.lhs == rhs;
                        if (!ok && failures++ == 0)
                            first_failure = json{{"m1", to_string(m1)}, {"m2", m2}, {"R", R},
                                                 {"lhs", c.lhs.to_string()}, {"rhs", rhs.to_string()}};
                        if (d == -7 && k == 7 && m2 == 1 && R == 1 && sample.is_null())
                            sample = json{{"lhs", c.lhs.to_string()}, {"rhs", rhs.to_string()}};
                    }
        }
        json det{{"d", d}, {"checks", checks}, {"failures", failures}};
        if (!sample.is_null()) det["m1=m2=1,r=O"] = sample;
        if (failures) det["first_failure"] = first_failure;
        rep.add("proper", "proper intersection identity", failures == 0, det);
    }
}

void suite_weil(Report& rep, bool perturb) {
    for (long d : {-7L, -11L}) {
        auto K = field_of(d);
        for (int rank : {1, 2}) {
            FQMPtr M = FiniteQuadraticModule::from_lattice(unit_lattice(K, rank));
            WeilGenerators w = weil_generators(*M);
            if (perturb) w.S(0, 0) += 1e-6;
            Eigen::MatrixXcd ST = w.S * w.T;
            Eigen::MatrixXcd S2 = w.S * w.S;
            double braid = (ST * ST * ST - S2).cwiseAbs().maxCoeff();
            long n = static_cast<long>(M->size());
            double unitary = (w.S * w.S.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
            std::complex<double> sigma = S2(static_cast<long>(M->neg(0)), 0);
            double involution = 0;
            for (long mu = 0; mu < n; ++mu)
                for (long nu = 0; nu < n; ++nu) {
                    std::complex<double> expect = (nu == static_cast<long>(M->neg(static_cast<size_t>(mu)))) ? sigma : 0.0;
                    involution = std::max(involution, std::abs(S2(nu, mu) - expect));
                }
            double eighth = std::abs(std::pow(sigma, 8) - 1.0);
            bool pass = braid <= 1e-12 && unitary <= 1e-12 && involution <= 1e-12 && eighth <= 1e-12;
            rep.add("weil", "Weil representation relations", pass,
                    json{{"d", d}, {"rank", rank}, {"size", n}, {"braid", braid}, {"unitarity", unitary},
                         {"S2_permutation", involution}, {"sigma8", eighth}});
        }
    }
}

void suite_special(Report& rep, bool perturb) {
    double worst = 0;
    std::vector<double> grid{0, 0.5, 1, 2, 5};
    for (int n : {3, 4, 5})
        for (double A : grid)
            for (double B : grid) {
                if (A == 0 && B == 0) continue;
                double c = special_V_closed(n, A, B);
                double q = special_V_quadrature(n, A, B, 1e-13);
                worst = std::max(worst, std::abs(c - q) / std::max(std::abs(c), 1e-300));
            }
    if (perturb) worst += 1.0;
    rep.add("special", "closed form against quadrature", worst <= 1e-9, json{{"max_relative_difference", worst}});
    double spot = special_V_closed(3, 0, 1);
    double expect = std::sqrt(M_PI) * std::exp(-2.0);
    rep.add("special", "V_3(0, 1) = sqrt(pi) exp(-2)", std::abs(spot - expect) <= 1e-9,
            json{{"value", spot}, {"expected", expect}});
}

void suite_lfun(Report& rep, const std::string& newform, long terms, bool perturb) {
    NewformData g = ingest_newform(newform, 11, 2);
    auto K = g.field;
    HermSpaceSpec s0 = default_incoherent(K);
    HermitianLattice L = unit_lattice(K, 1);
    FQMPtr mod = FiniteQuadraticModule::direct_sum(*FiniteQuadraticModule::rank_one(s0),
                                                   *FiniteQuadraticModule::from_lattice(L));
    InducedForm F = induce(g, orthogonal_sum(s0, L), mod, Rat(terms));
    RankinSeries V = vector_series(F, L, Rat(terms));
    double worst = 0;
    for (double s : {3.0, 4.0, 5.0}) {
        cplx a = completed_L(V, s), b = direct_completed(V, s).value;
        worst = std::max(worst, std::abs(a - b));
    }
    if (perturb) worst += 1.0;
    rep.add("lfun", "direct against continued evaluation", worst <= 1e-8, json{{"max_difference", worst}});
    double at0 = std::abs(completed_L(V, 0.0));
    rep.add("lfun", "vanishing at s = 0", at0 <= 1e-6, json{{"abs_value", at0}});
    double anti = 0;
    for (double s : {0.1, 0.5}) anti = std::max(anti, std::abs(completed_L(V, s) + completed_L(V, -s)));
    rep.add("lfun", "odd functional equation", anti <= 1e-6, json{{"max_residual", anti}});
    DerivativeValue dv = L_prime_at_0(V);
    double rel = std::abs(dv.fd_h - dv.fd_h2) / std::abs(dv.fd_h2);
    rep.add("lfun", "derivative stable under step halving", rel <= 1e-6,
            json{{"value", dv.value}, {"richardson_h", dv.fd_h}, {"richardson_h2", dv.fd_h2}, {"relative", rel}});
    DecompositionCheck dc = scalar_vector_decomposition_check(g, L, s0, std::nullopt, 4.0, terms);
    rep.add("lfun", "scalar-vector decomposition", dc.passes(),
            json{{"residual", dc.residual}, {"tail_bound", dc.tail_bound}, {"product_form_equal", dc.product_form_equal}});
}

int cmd_verify(const std::string& suite, const std::string& newform, long terms, bool perturb, const Output& out) {
    static const std::set<std::string> known{"local", "proper", "weil", "special", "lfun", "all"};
    if (!known.count(suite)) throw ParseError("unknown suite '" + suite + "'");
    Report rep;
    bool all = suite == "all";
    if (all || suite == "local") suite_local(rep, perturb);
    if (all || suite == "proper") suite_proper(rep, perturb);
    if (all || suite == "weil") suite_weil(rep, perturb);
    if (all || suite == "special") suite_special(rep, perturb);
    if (all || suite == "lfun") {
        if (newform.empty()) throw MissingCoefficient("the lfun suite needs --newform with the level-11 table");
        suite_lfun(rep, newform, terms, perturb);
    }
    out.emit(json{{"suite", suite}, {"pass", rep.all_pass}, {"results", rep.entries}});
    return rep.all_pass ? 0 : kExitVerifyFailure;
}

int exit_code_for(const Error& e) {
    switch (e.error_class()) {
        case ErrorClass::Input: return kExitInput;
        case ErrorClass::InsufficientData:
        case ErrorClass::Numeric: return kExitInsufficient;
        default: return kExitVerifyFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic intersection numbers on unitary Shimura varieties: computable side"};
    app.set_config("--config", "", "TOML/INI configuration file (command-line flags take precedence)");
    app.require_subcommand(1);
    Output out;
    int threads = 0;
    int prec = 53;
    app.add_flag("--pretty", out.pretty, "Indented JSON output");
    app.add_option("-o,--output", out.path, "Write JSON to this file instead of stdout");
    app.add_option("--threads", threads, "Worker threads (default: ARITHLIFT_THREADS or all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--prec", prec, "Floating-point precision in bits (53 is supported)")->check(CLI::PositiveNumber);

    long d = 0;
    auto* field = app.add_subcommand("field", "Class data and L(chi, s) values of k = Q(sqrt d)");
    field->add_option("-d,--discriminant", d, "Odd fundamental discriminant d < 0")->required();

    LatticeArgs la;
    auto* lattice = app.add_subcommand("lattice", "Queries on a hermitian lattice given as JSON");
    lattice->add_option("file", la.path, "Lattice JSON")->required();
    lattice->add_option("--rep", la.rep, "Representation number of m (rational)");
    lattice->add_option("--ideal", la.ideal, "Use r^{-1} L for r = R O + sqrt(d) O with this R | D");
    lattice->add_flag("--aut", la.aut, "Order of the unitary automorphism group");
    lattice->add_option("--diff", la.diff, "Diff set of m for the space given by --s0");
    lattice->add_option("--s0", la.s0, "Incoherent rank-one space: 'default' or 'p:e,...'");
    lattice->add_flag("--invariants", la.invariants, "Local invariants at primes dividing D");

    long ed = 0;
    std::string einv = "default", emax = "5";
    auto* eis = app.add_subcommand("eisenstein", "Holomorphic-part coefficients a+(m, r)");
    eis->add_option("-d,--discriminant", ed, "Odd fundamental discriminant d < 0")->required();
    eis->add_option("--inv", einv, "Local invariants 'p:e,...' or 'default'");
    eis->add_option("--max", emax, "Largest exponent m");

    LfunArgs lf;
    auto* lfun = app.add_subcommand("lfun", "Rankin-Selberg L-function of a newform against a theta series");
    lfun->add_option("--newform", lf.newform, "Newform CSV with header m,a_m")->required();
    lfun->add_option("--lattice", lf.lattice, "Self-dual lattice JSON")->required();
    lfun->add_option("--s0", lf.s0, "Incoherent rank-one space");
    lfun->add_option("--eta", lf.eta, "Class group character as turns on the class representatives");
    lfun->add_option("--terms", lf.terms, "Truncation M of the exponent range")->check(CLI::PositiveNumber);
    lfun->add_option("--weight", lf.weight, "Weight n (default rank + 1)");
    lfun->add_option("--eval", lf.eval, "Evaluate Lambda*(s) at these s");
    lfun->add_flag("--deriv0", lf.deriv0, "Central derivative L'(0)");
    lfun->add_option("--decompose", lf.decompose, "Scalar-vector decomposition check at these s");
    lfun->add_flag("--main2", lf.main2, "Scalar-form main theorem right-hand side");
    lfun->add_option("--t0", lf.t0, "Splitting point of the smoothed functional equation");

    std::string suite = "all", vnewform;
    long vterms = 10000;
    bool perturb = false;
    auto* verify = app.add_subcommand("verify", "Run identity suites and report pass/fail");
    verify->add_option("--suite", suite, "local, proper, weil, special, lfun or all");
    verify->add_option("--newform", vnewform, "Level-11 weight-2 newform CSV for the lfun suite");
    verify->add_option("--terms", vterms, "Truncation for the lfun suite")->check(CLI::PositiveNumber);
    verify->add_flag("--inject-failure", perturb, "Perturb one side of each identity (test hook)");

    for (auto* sub : {field, lattice, eis, lfun, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    if (threads == 0) {
        if (const char* env = std::getenv("ARITHLIFT_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (prec != 53) throw PrecisionUnachievable("only 53-bit floating point is available");
        if (*field) out.emit(cmd_field(d));
        if (*lattice) out.emit(cmd_lattice(la));
        if (*eis) out.emit(cmd_eisenstein(ed, einv, emax));
        if (*lfun) out.emit(cmd_lfun(lf));
        if (*verify) return cmd_verify(suite, vnewform, vterms, perturb, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
