// lamsym command-line harness: runs the verification suites and writes JSON reports.
//
// Exit status: 0 when every identity holds, 1 on an identity violation,
// 2 on a configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lamsym/suites.hpp"

namespace {

using namespace lamsym;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kConfig = 2;

bool is_violation(ErrorCode c) {
    return c == ErrorCode::IdentityViolation || c == ErrorCode::RouteMismatch ||
           c == ErrorCode::FactorizationMismatch || c == ErrorCode::ProjectionMismatch;
}

void require_prime(long p) {
    if (!is_odd_prime(p)) fail(ErrorCode::InvalidArgument, "p must be an odd prime, got " + std::to_string(p));
}

std::vector<int> k_range(int k, int kmax) {
    std::vector<int> ks;
    if (kmax < 0) kmax = k;
    if (k < 0 || kmax < k) fail(ErrorCode::InvalidArgument, "need 0 <= k <= k-max");
    for (int i = k; i <= kmax; ++i) ks.push_back(i);
    return ks;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Parse, path + ": " + e.what());
    }
}

/// Writes to --out, else to $LAMSYM_REPORT_DIR/<suite>.json, else to stdout.
void emit(const json& report, const std::string& suite, const std::string& out) {
    std::string path = out;
    if (path.empty()) {
        if (const char* dir = std::getenv("LAMSYM_REPORT_DIR"); dir && *dir)
            path = (std::filesystem::path(dir) / (suite + ".json")).string();
    }
    std::string text = report.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + path);
    f << text;
}

int conclude(const SuiteResult& r, const std::string& suite, const std::string& out) {
    emit(r.report, suite, out);
    std::cerr << suite << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.summary << ")\n";
    return r.passed ? kPass : kViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lamsym: exact checks for Lambda-adic modular symbol identities"};
    app.require_subcommand(1);

    long p = 3;
    long M = 10;
    int k = 2;
    int kmax = -1;
    int trials = -1;
    std::uint64_t seed = 42;
    std::string out;
    std::string input;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "corpus seed")->capture_default_str();
        sub->add_option("--out", out, "report path (default: $LAMSYM_REPORT_DIR/<suite>.json or stdout)");
    };

    auto* disc = app.add_subcommand("verify-discrepancy", "Ev_X(U_p mu) - Ev_X'(U_p mu) = p^(k+1) Ev_X(mu)");
    disc->add_option("--p", p, "prime")->capture_default_str();
    disc->add_option("--M", M, "precision exponent")->capture_default_str();
    disc->add_option("--k", k, "weight (first weight with --k-max)")->capture_default_str();
    disc->add_option("--k-max", kmax, "last weight of the range");
    disc->add_option("--trials", trials, "random measures per weight");
    disc->add_option("--input", input, "O-valued measure JSON instead of the random corpus");

    auto* spec = app.add_subcommand("verify-specialization", "sp_k(Pi(mu)) = Ev_X'(sp_k(mu))");
    spec->add_option("--p", p, "prime")->capture_default_str();
    spec->add_option("--M", M, "precision exponent (also the truncation level)")->capture_default_str();
    spec->add_option("--k", k, "weight")->capture_default_str();
    spec->add_option("--k-max", kmax, "last weight of the range");
    spec->add_option("--trials", trials, "random measures per weight");
    spec->add_option("--input", input, "Lambda-valued measure JSON instead of the random corpus");

    auto* equi = app.add_subcommand("verify-equivariance", "rho_k(gamma mu) = gamma rho_k(mu)");
    equi->add_option("--p", p, "prime")->capture_default_str();
    equi->add_option("--M", M, "precision exponent")->capture_default_str();
    equi->add_option("--k", k, "weight")->capture_default_str();
    equi->add_option("--k-max", kmax, "last weight of the range");
    equi->add_option("--trials", trials, "random pairs per weight");

    int n = 5;
    auto* cg = app.add_subcommand("verify-cg", "Clebsch-Gordan round trip and projection sign");
    cg->add_option("--p", p, "prime, must exceed n")->capture_default_str();
    cg->add_option("--M", M, "precision exponent")->capture_default_str();
    cg->add_option("--n", n, "largest degree")->capture_default_str();
    cg->add_option("--trials", trials, "random polynomials per degree");

    auto* iw = app.add_subcommand("verify-iwahori", "Iwahori invariance of (z1-z2)^k and 1_X'(z1-z2)^k");
    iw->add_option("--p", p, "prime")->capture_default_str();
    iw->add_option("--M", M, "precision exponent")->capture_default_str();
    iw->add_option("--k", k, "weight")->capture_default_str();
    iw->add_option("--k-max", kmax, "last weight of the range");
    iw->add_option("--trials", trials, "random Iwahori elements per weight");

    int esh_n = 0;
    int esh_max = -1;
    auto* esh = app.add_subcommand("esh", "Eichler-Shimura expansion, restriction and projection");
    esh->add_option("--n", esh_n, "level n")->capture_default_str();
    esh->add_option("--n-max", esh_max, "check every level from --n to --n-max");

    long ell = 5;
    std::string al = "2";
    std::string psi = "1";
    std::string eta = "1";
    long weight = 2;
    int order = 8;
    bool split = false;
    bool inert = false;
    bool ramified = false;
    int factor_trials = 0;
    auto* fac = app.add_subcommand("factors", "Asai = Dirichlet x adjoint at one prime");
    fac->add_option("--l", ell, "prime l")->capture_default_str();
    auto* split_flag = fac->add_flag("--split", split, "l splits in K");
    auto* inert_flag = fac->add_flag("--inert", inert, "l is inert in K");
    auto* ram_flag = fac->add_flag("--ramified", ramified, "l ramifies in K (rejected)");
    split_flag->excludes(inert_flag)->excludes(ram_flag);
    inert_flag->excludes(ram_flag);
    fac->add_option("--al", al, "a_l (rational)")->capture_default_str();
    fac->add_option("--psi", psi, "psi(l)")->capture_default_str();
    fac->add_option("--k", weight, "weight of f")->capture_default_str();
    fac->add_option("--eta", eta, "eta(l)")->capture_default_str();
    fac->add_option("--order", order, "truncation order in T")->capture_default_str();
    fac->add_option("--random", factor_trials, "ignore the datum and check this many random data per branch");

    std::vector<long> weights{2, 4};
    long r = 0;
    bool filter = false;
    std::string alpha_spec = "p2";
    int max_atoms = 3;
    auto* asm_l = app.add_subcommand("assemble-L", "specialisation table of Pi(Phi) for Phi = U_p nu");
    asm_l->add_option("--p", p, "prime")->capture_default_str();
    asm_l->add_option("--M", M, "precision exponent (also the truncation level)")->capture_default_str();
    asm_l->add_option("--weights", weights, "weights k")->delimiter(',');
    asm_l->add_option("--r", r, "residue class for the A_r filter")->capture_default_str();
    asm_l->add_flag("--filter", filter, "require k = r mod (p-1)");
    asm_l->add_option("--alpha", alpha_spec, "declared eigenvalue: p2 for p^2 [1], or a unit u for [u]")
        ->capture_default_str();
    asm_l->add_option("--atoms", max_atoms, "maximum number of atoms of nu")->capture_default_str();

    for (auto* sub : {disc, spec, equi, cg, iw, asm_l}) common(sub);
    esh->add_option("--out", out, "report path");
    fac->add_option("--seed", seed, "seed for --random")->capture_default_str();
    fac->add_option("--out", out, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kConfig;
    }

    if (trials < 0) trials = disc->parsed() || spec->parsed() ? 200 : equi->parsed() ? 100 : 50;

    try {
        if (disc->parsed()) {
            if (!input.empty()) {
                OMeasure mu = o_measure_from_json(read_json(input));
                require_prime(mu.prime());
                json cases = json::array();
                bool ok = true;
                for (int kk : k_range(k, kmax)) {
                    IdentityReport rep = discrepancy_check(mu, kk);
                    ok = ok && rep.holds;
                    cases.push_back(to_json(rep));
                }
                return conclude(finish("verify-discrepancy", cases, ok, input), "verify-discrepancy", out);
            }
            require_prime(p);
            return conclude(discrepancy_suite({p}, k_range(k, kmax), M, trials, seed), "verify-discrepancy", out);
        }
        if (spec->parsed()) {
            if (!input.empty()) {
                LambdaMeasure mu = lambda_measure_from_json(read_json(input));
                require_prime(mu.prime());
                json cases = json::array();
                bool ok = true;
                for (int kk : k_range(k, kmax)) {
                    IdentityReport rep = specialization_check(mu, kk);
                    ok = ok && rep.holds;
                    cases.push_back(to_json(rep));
                }
                return conclude(finish("verify-specialization", cases, ok, input), "verify-specialization", out);
            }
            require_prime(p);
            return conclude(specialization_suite({p}, k_range(k, kmax), M, trials, seed), "verify-specialization", out);
        }
        if (equi->parsed()) {
            require_prime(p);
            return conclude(equivariance_suite(p, k_range(k, kmax), M, trials, seed), "verify-equivariance", out);
        }
        if (cg->parsed()) {
            require_prime(p);
            if (p <= n) fail(ErrorCode::SmallPrime, "verify-cg needs p > n");
            return conclude(cg_suite(p, n, M, trials, seed), "verify-cg", out);
        }
        if (iw->parsed()) {
            require_prime(p);
            return conclude(iwahori_suite(p, k_range(k, kmax), M, trials, seed), "verify-iwahori", out);
        }
        if (esh->parsed()) {
            if (esh_n < 0) fail(ErrorCode::InvalidArgument, "n must be >= 0");
            return conclude(esh_suite(esh_n, esh_max < 0 ? esh_n : esh_max), "esh", out);
        }
        if (fac->parsed()) {
            if (order < 0) fail(ErrorCode::InvalidArgument, "order must be >= 0");
            if (factor_trials > 0) return conclude(factor_suite(factor_trials, order, seed), "factors", out);
            if (!split && !inert && !ramified) fail(ErrorCode::InvalidArgument, "choose --split or --inert");
            HeckeDatum d;
            try {
                d = {ell, mpq_class(al), mpq_class(psi), weight,
                     split ? SplitType::Split : inert ? SplitType::Inert : SplitType::Ramified};
                mpq_class e(eta);
                d.a.canonicalize();
                d.psi.canonicalize();
                e.canonicalize();
                FactorizationReport rep = check_factorization(d, e, order);
                return conclude(finish("factors", json::array({to_json(rep)}), rep.holds(),
                                       rep.holds() ? "factorization holds"
                                                   : "first mismatch at T^" + std::to_string(*rep.first_mismatch)),
                                "factors", out);
            } catch (const std::invalid_argument&) {
                fail(ErrorCode::Parse, "rational arguments must look like 3 or -2/5");
            }
        }
        if (asm_l->parsed()) {
            require_prime(p);
            if (M < 1) fail(ErrorCode::InvalidArgument, "M must be >= 1");
            return conclude(assemble_suite(p, M, weights, r, filter, alpha_spec, seed, max_atoms), "assemble-L", out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_violation(e.code()) ? kViolation : kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error [InvalidArgument]: " << e.what() << "\n";
        return kConfig;
    }
    return kConfig;
}
