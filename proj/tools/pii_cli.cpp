// pii: tabulate soft-edge distributions, Painleve II transcendents and
// related quantities; run the property suites.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pii/distributions.hpp"
#include "pii/finite_n.hpp"
#include "pii/kernels.hpp"
#include "pii/ladder.hpp"
#include "pii/laxpair.hpp"
#include "pii/table.hpp"
#include "pii/verify.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// Thrown for flag values that parse but are not acceptable.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Range {
    double lo = 0.0, hi = 0.0, step = 1.0;
};

Range parse_range(const std::string& text) {
    Range r;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':' || !in.eof())
        throw UsageError("--range must look like min:max:step, got '" + text + "'");
    if (!(r.step > 0.0)) throw UsageError("--range step must be positive");
    if (r.hi < r.lo) throw UsageError("--range max must not be below min");
    return r;
}

struct Common {
    std::string range = "-8:4:0.5";
    std::string output = "csv";
    double xi = 1.0;
    std::optional<double> tol;
};

void add_common(CLI::App* sub, Common& c, const char* default_range) {
    c.range = default_range;
    sub->add_option("--range", c.range, "Sample grid min:max:step")->capture_default_str();
    sub->add_option("--output", c.output, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

void add_xi(CLI::App* sub, Common& c) {
    sub->add_option("--xi", c.xi, "Thinning parameter in [0, 1]")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sub->add_option("--tol", c.tol, "Solver tolerance override (1e-14 .. 1e-6)")->check(CLI::Range(1e-14, 1e-6));
}

// Solution for the requested xi: the shared default solve unless a
// tolerance override is given.
const pii::TranscendentSolution& solution_for(const Common& c) {
    if (!c.tol) return pii::cached_solution(c.xi);
    static std::map<std::pair<double, double>, pii::TranscendentSolution> own;
    const auto key = std::make_pair(c.xi, *c.tol);
    auto it = own.find(key);
    if (it == own.end())
        it = own.emplace(key, pii::solve_q0(c.xi, pii::default_t_min(c.xi), pii::default_t_max, *c.tol)).first;
    return it->second;
}

nlohmann::json base_meta(const std::string& command, const Common& c) {
    nlohmann::json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["range"] = c.range;
    m["tolerance"] = c.tol ? *c.tol : pii::SolveOptions{}.tol;
    return m;
}

void emit(const pii::DistributionTable& t, const std::string& format) { std::cout << pii::serialize(t, format); }

pii::DistributionTable sampled(const std::string& kind, double xi, const Common& c,
                               const std::function<double(double)>& f) {
    const Range r = parse_range(c.range);
    return pii::tabulate(kind, xi, pii::range_grid(r.lo, r.hi, r.step), f);
}

std::string normalize_kind(std::string k) {
    for (auto& ch : k)
        if (ch == '_') ch = '-';
    static const std::map<std::string, std::string> alias = {
        {"tw2", "e2"},        {"gue", "e2"},        {"lpp-beta2", "e2"}, {"lis", "e2"},
        {"tw1", "e1"},        {"goe", "e1"},        {"lpp-beta1", "e1"}, {"lis-symmetric", "e1"},
        {"e4tilde", "e4"},    {"tw4", "e4"},        {"lpp-beta4", "e4"}, {"lis-fixed-point", "e4"},
        {"pdf", "pdf2"},      {"perturbed", "perturbed2"}};
    auto it = alias.find(k);
    return it == alias.end() ? k : it->second;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Painleve II and soft-edge distribution toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // dist
    Common dist_c;
    std::string dist_kind = "e2";
    double dist_w = 0.0;
    std::string dist_norm = "decaying";
    CLI::App* dist = app.add_subcommand("dist", "Tabulate E2, E1, E4, the beta=2 density or a perturbed law");
    add_common(dist, dist_c, "-8:4:0.5");
    add_xi(dist, dist_c);
    dist->add_option("--kind", dist_kind,
                     "e2 | e1 | e4 | pdf2 | perturbed2 | perturbed4 (aliases: tw2, gue, lpp-beta2, lis, tw1, goe, "
                     "lpp-beta1, tw4, lpp-beta4, e4tilde)")
        ->capture_default_str();
    dist->add_option("--w", dist_w, "Perturbation strength for perturbed laws")->capture_default_str();
    dist->add_option("--normalization", dist_norm, "Lax normalization for perturbed laws")
        ->check(CLI::IsMember({"decaying", "connected"}))
        ->capture_default_str();

    // transcendent
    Common tr_c;
    std::string tr_field = "q";
    CLI::App* tr = app.add_subcommand("transcendent", "Tabulate q0(t; xi) or its integrals");
    add_common(tr, tr_c, "-8:8:0.5");
    add_xi(tr, tr_c);
    tr->add_option("--field", tr_field, "q | qp | u0 | int-u0 | int-q | q-half")
        ->check(CLI::IsMember({"q", "qp", "u0", "int-u0", "int-q", "q-half"}))
        ->capture_default_str();

    // ladder
    Common la_c;
    double la_mu = 1.0;
    bool la_exp = false;
    CLI::App* la = app.add_subcommand("ladder", "Tabulate a sigma-form ladder member u_mu(x; xi)");
    add_common(la, la_c, "0:6:0.5");
    add_xi(la, la_c);
    la->add_option("--mu", la_mu, "Ladder index: -0.5, 0, 0.5, 1, 2, 3 (1.5, 2.5 with --experimental)")
        ->capture_default_str();
    la->add_flag("--experimental", la_exp, "Include the half-integer members 3/2 and 5/2");

    // kernel
    Common ke_c;
    int ke_mu = 0;
    double ke_c_shift = 0.0, ke_y = 0.0;
    CLI::App* ke = app.add_subcommand("kernel", "Tabulate K_mu(x, y; c) in x");
    add_common(ke, ke_c, "0:4:0.25");
    ke->add_option("--mu", ke_mu, "Even kernel index")->capture_default_str();
    ke->add_option("--c", ke_c_shift, "Edge shift c")->capture_default_str();
    ke->add_option("--y", ke_y, "Second argument y; use --diagonal for K(x, x)")->capture_default_str();
    bool ke_diag = false;
    ke->add_flag("--diagonal", ke_diag, "Tabulate the diagonal K(x, x; c)");

    // lax
    Common lx_c;
    double lx_w = 1.0;
    std::string lx_field = "f", lx_norm = "decaying";
    CLI::App* lx = app.add_subcommand("lax", "Tabulate the Lax pair solution (f, g)(s; w)");
    add_common(lx, lx_c, "-6:4:0.5");
    lx->add_option("--w", lx_w, "Perturbation strength w")->capture_default_str();
    lx->add_option("--field", lx_field, "f | g")->check(CLI::IsMember({"f", "g"}))->capture_default_str();
    lx->add_option("--normalization", lx_norm, "decaying | connected")
        ->check(CLI::IsMember({"decaying", "connected"}))
        ->capture_default_str();

    // finite-n
    std::string fn_kind = "hammersley", fn_out = "json";
    int fn_N = 1;
    std::optional<double> fn_lambda, fn_L;
    std::optional<std::string> fn_range;
    CLI::App* fn = app.add_subcommand("finite-n", "Finite-N laws: Hammersley process and excursion theta sums");
    fn->add_option("--kind", fn_kind, "hammersley | excursion | f-tilde | e-tilde")
        ->check(CLI::IsMember({"hammersley", "excursion", "f-tilde", "e-tilde", "lis-poissonized"}))
        ->capture_default_str();
    fn->add_option("--N", fn_N, "N")->required();
    fn->add_option("--lambda", fn_lambda, "Intensity parameter lambda (hammersley)");
    fn->add_option("--L", fn_L, "Level L (theta sums)");
    fn->add_option("--range", fn_range, "Grid over lambda or L instead of a single value");
    fn->add_option("--output", fn_out, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    // verify
    std::string ve_suite = "all", ve_out = "json";
    CLI::App* ve = app.add_subcommand("verify", "Run property suites; exit 1 if any check fails");
    ve->add_option("--suite", ve_suite, "all | sigma | gambier | ladder | kernels | fredholm | distributions | lax | finite_n")
        ->capture_default_str();
    ve->add_option("--output", ve_out, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (dist->parsed()) {
            const std::string kind = normalize_kind(dist_kind);
            nlohmann::json meta = base_meta("dist", dist_c);
            std::function<double(double)> f;
            if (kind == "e2" || kind == "pdf2") {
                const pii::TranscendentSolution& sol = solution_for(dist_c);
                if (kind == "e2") f = [&sol](double s) { return pii::e2_soft(s, sol); };
                else f = [&sol](double s) { return pii::pdf_largest_beta2(s, sol); };
            } else if (kind == "e1" || kind == "e4") {
                if (dist_c.xi != 1.0) throw UsageError("dist: --kind " + dist_kind + " requires --xi 1");
                const pii::TranscendentSolution& sol = solution_for(dist_c);
                if (kind == "e1") f = [&sol](double s) { return pii::e1_soft(s, sol); };
                else f = [&sol](double s) { return pii::e4_soft(s, sol); };
            } else if (kind == "perturbed2" || kind == "perturbed4") {
                if (dist_c.xi != 1.0) throw UsageError("dist: perturbed laws require --xi 1");
                pii::LaxOptions o;
                o.normalization =
                    dist_norm == "connected" ? pii::LaxNormalization::connected : pii::LaxNormalization::decaying;
                meta["w"] = dist_w;
                meta["normalization"] = dist_norm;
                if (kind == "perturbed2") f = [=](double s) { return pii::perturbed_cdf_beta2(s, dist_w, o); };
                else f = [=](double s) { return pii::perturbed_cdf_beta4(s, dist_w, o); };
            } else {
                throw UsageError("dist: unknown --kind '" + dist_kind + "'");
            }
            pii::DistributionTable t = sampled(kind, dist_c.xi, dist_c, f);
            meta["alias_of"] = kind;
            t.meta = meta;
            emit(t, dist_c.output);
        } else if (tr->parsed()) {
            const pii::TranscendentSolution& sol = solution_for(tr_c);
            std::function<double(double)> f;
            std::optional<pii::HalfTranscendent> half;
            if (tr_field == "q") f = [&](double t) { return sol.q(t); };
            else if (tr_field == "qp") f = [&](double t) { return sol.q_prime(t); };
            else if (tr_field == "u0") f = [&](double t) { return sol.u0(t); };
            else if (tr_field == "int-u0") f = [&](double t) { return sol.int_u0(t); };
            else if (tr_field == "int-q") f = [&](double t) { return sol.int_q(t); };
            else {
                half.emplace(pii::q_half_from_q0(sol));
                f = [&](double t) { return half->q(t); };
            }
            pii::DistributionTable t = sampled(tr_field, tr_c.xi, tr_c, f);
            t.x_name = "t";
            t.meta = base_meta("transcendent", tr_c);
            t.meta["t_min"] = sol.t_min();
            t.meta["t_max"] = sol.t_max();
            emit(t, tr_c.output);
        } else if (la->parsed()) {
            const pii::TranscendentSolution& sol = solution_for(la_c);
            const pii::SigmaLadder l = pii::build_ladder(sol, la_exp);
            const pii::SigmaSolution& u = l.at(la_mu);
            pii::DistributionTable t = sampled("u_mu", la_c.xi, la_c, [&](double x) { return u.u(x); });
            t.x_name = "x";
            t.meta = base_meta("ladder", la_c);
            t.meta["mu"] = la_mu;
            t.meta["provenance"] = u.provenance;
            emit(t, la_c.output);
        } else if (ke->parsed()) {
            const pii::KernelEvaluator k = pii::KernelEvaluator::even(ke_mu, ke_c_shift);
            pii::DistributionTable t = sampled("kernel", 1.0, ke_c, [&](double x) {
                return ke_diag ? k.diagonal(x) : k(x, ke_y);
            });
            t.x_name = "x";
            t.meta = base_meta("kernel", ke_c);
            t.meta["mu"] = ke_mu;
            t.meta["c"] = ke_c_shift;
            if (ke_diag) t.meta["diagonal"] = true;
            else t.meta["y"] = ke_y;
            emit(t, ke_c.output);
        } else if (lx->parsed()) {
            const Range r = parse_range(lx_c.range);
            pii::LaxOptions o;
            o.normalization = lx_norm == "connected" ? pii::LaxNormalization::connected : pii::LaxNormalization::decaying;
            if (r.hi > o.s_max) throw UsageError("lax: --range must stay below s_max = 12");
            const pii::LaxSolution sol = pii::solve_fg_in_s(lx_w, std::min(r.lo, o.s_max - 1.0), o);
            pii::DistributionTable t = pii::tabulate(lx_field, 1.0, pii::range_grid(r.lo, r.hi, r.step), [&](double s) {
                const auto [fv, gv] = sol(s);
                return lx_field == "f" ? fv : gv;
            });
            t.meta = base_meta("lax", lx_c);
            t.meta["w"] = lx_w;
            t.meta["normalization"] = lx_norm;
            t.meta["unstable"] = sol.unstable;
            t.meta["rerun_difference"] = sol.rerun_difference;
            if (sol.unstable) std::cerr << "warning: half-tolerance rerun disagrees; values may be contaminated\n";
            emit(t, lx_c.output);
        } else if (fn->parsed()) {
            const bool ham = fn_kind == "hammersley" || fn_kind == "lis-poissonized";
            std::function<double(double)> f;
            if (ham) f = [&](double l) { return pii::hammersley_cdf(fn_N, l); };
            else {
                const pii::ThetaKind k = fn_kind == "e-tilde" ? pii::ThetaKind::E_tilde : pii::ThetaKind::F_tilde;
                f = [&, k](double L) { return pii::theta_sum({fn_N, L, 0, k}); };
            }
            const std::optional<double>& point = ham ? fn_lambda : fn_L;
            if (fn_range) {
                Common c;
                c.range = *fn_range;
                pii::DistributionTable t = sampled(fn_kind, 1.0, c, f);
                t.x_name = ham ? "lambda" : "L";
                t.meta = {{"command", "finite-n"}, {"version", kVersion}, {"N", fn_N}, {"range", *fn_range}};
                emit(t, fn_out);
            } else {
                if (!point) throw UsageError(std::string("finite-n: give ") + (ham ? "--lambda" : "--L") + " or --range");
                const double v = f(*point);
                if (fn_out == "json") std::cout << nlohmann::json(v).dump() << "\n";
                else std::cout << (ham ? "lambda" : "L") << ",value\n" << pii::format_double(*point) << "," << pii::format_double(v) << "\n";
            }
        } else if (ve->parsed()) {
            std::vector<std::string> names = ve_suite == "all" ? pii::suite_names() : std::vector<std::string>{ve_suite};
            bool ok = true;
            nlohmann::json reports = nlohmann::json::array();
            std::string csv = "suite,check,value,tolerance,passed\n";
            for (const auto& n : names) {
                const pii::SuiteReport r = pii::run_suite(n);
                ok = ok && r.passed();
                nlohmann::json checks = nlohmann::json::array();
                for (const auto& c : r.checks) {
                    checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
                    csv += r.suite + ",\"" + c.name + "\"," + pii::format_double(c.value) + "," +
                           pii::format_double(c.tolerance) + "," + (c.passed ? "true" : "false") + "\n";
                }
                reports.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"max_residual", r.max_value()}, {"checks", checks}});
            }
            if (ve_out == "json")
                std::cout << nlohmann::json{{"meta", {{"command", "verify"}, {"version", kVersion}}}, {"passed", ok}, {"suites", reports}}.dump(2)
                          << "\n";
            else std::cout << csv;
            return ok ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
