// boxmesh: anisotropic box meshes for multilinear interpolation.
//
//   boxmesh mesh     --function exp-elliptic --N 10000 --out mesh.json
//   boxmesh stitch   --function exp-elliptic --N 10000 --out stitched.json
//   boxmesh error    --function quad-saddle --signature 1,2 --N 10000 --epsilon 0.01
//   boxmesh converge --function exp-elliptic --ladder 2500,10000,40000 --out conv.csv
//   boxmesh verify-quadratic --dim 3 --cases 50
//
// Exit codes: 0 success, 1 property failure, 2 usage or configuration error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "boxmesh/analysis.hpp"
#include "boxmesh/builtins.hpp"
#include "boxmesh/errors.hpp"
#include "boxmesh/expr.hpp"
#include "boxmesh/io.hpp"
#include "boxmesh/meshgen.hpp"
#include "boxmesh/parallel.hpp"
#include "boxmesh/quadratic.hpp"
#include "boxmesh/stitch.hpp"

namespace {

using namespace boxmesh;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string function = "exp-elliptic";
    std::string f_expr;
    std::string omega = "one";
    std::string omega_expr;
    std::string signature;
    long long N = 10000;
    std::string ladder;
    double epsilon = 0.1;
    int grid = 21;
    bool stitched = false;
    std::uint64_t seed = 1;
    std::string out;
    int workers = 0;
    int dim = 2;
    int cases = 200;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Signature parse_signature(const std::string& s) {
    int k = 0, d = 0;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> k >> comma >> d) || comma != ',' || !is.eof()) {
        throw UsageError("--signature expects k,d (e.g. 1,2), got '" + s + "'");
    }
    const Signature sig{k, d};
    validate_signature(sig);
    return sig;
}

std::vector<long long> parse_ladder(const std::string& s) {
    std::vector<long long> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            std::size_t used = 0;
            // Accept 2.5e3 style rungs.
            const double v = std::stod(item, &used);
            if (used != item.size() || v < 1 || v != std::floor(v)) throw std::invalid_argument(item);
            out.push_back(static_cast<long long>(v));
        } catch (const std::exception&) {
            throw UsageError("--ladder entries must be positive integers, got '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("--ladder must list at least one N");
    return out;
}

struct Problem {
    TargetFunction f;
    WeightFunction w;
};

Problem resolve_problem(const RunConfig& cfg) {
    Signature sig;
    if (!cfg.signature.empty()) {
        sig = parse_signature(cfg.signature);
    } else if (!cfg.f_expr.empty() || builtin_is_definite(cfg.function)) {
        sig = {2, 2};
    } else {
        sig = {1, 2};
    }
    Problem p;
    if (!cfg.f_expr.empty()) {
        p.f = to_target_function(Expression::parse(cfg.f_expr, sig.d), sig, cfg.seed);
    } else {
        p.f = make_builtin(cfg.function, sig);
    }
    if (!cfg.omega_expr.empty()) {
        p.w = to_weight_function(Expression::parse(cfg.omega_expr, sig.d), cfg.seed);
    } else {
        p.w = make_weight(cfg.omega);
    }
    return p;
}

void check_common(const RunConfig& cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
    if (cfg.N < 1) throw ConfigError("N must be at least 1");
    if (cfg.grid < 2) throw ConfigError("--grid must be at least 2");
}

// Writes text to --out, or to stdout when --out is empty.
void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw ConfigError("cannot open '" + cfg.out + "' for writing");
    os << text;
}

std::ostream& report(const RunConfig& cfg) { return cfg.out.empty() ? std::cerr : std::cout; }

int cmd_mesh(const RunConfig& cfg, bool stitched) {
    check_common(cfg);
    const auto pr = resolve_problem(cfg);
    const MeshPlan plan = build_plan(pr.f, pr.w, cfg.N, cfg.epsilon);
    const BoxPartition p = build_partition(plan);
    auto& log = report(cfg);
    log << "m = " << plan.m << "\n";
    log << "budget_sum = " << plan.budget_sum() << "\n";
    log << "boxes = " << p.box_count() << "\n";
    log << "admissibility = " << admissibility_metric(p) << "\n";
    if (!stitched) {
        emit(cfg, mesh_to_json(plan, p).dump() + "\n");
        return kExitOk;
    }
    const StitchedMesh sm = refine_interfaces(plan, p);
    const int workers = resolve_workers(cfg.workers);
    const auto s = build_quasi_interpolating_spline(pr.f, sm, workers);
    const auto jumps = continuity_report(s, sm, 16, workers);
    log << "stitched_boxes = " << sm.partition.box_count() << "\n";
    log << "irregular_boxes = " << sm.irregular_box_count << "\n";
    log << "irregular_vertices = " << sm.irregular_vertex_count() << "\n";
    log << "max_jump = " << jumps.max_jump << "\n";
    emit(cfg, stitched_to_json(sm).dump() + "\n");
    return kExitOk;
}

std::string records_csv(std::span<const ConvergenceRecord> records) {
    std::ostringstream os;
    write_csv(os, records);
    return os.str();
}

int cmd_error(const RunConfig& cfg) {
    check_common(cfg);
    const auto pr = resolve_problem(cfg);
    StudyOptions opts;
    opts.epsilon = cfg.epsilon;
    opts.stitched = cfg.stitched;
    opts.grid_per_axis = cfg.grid;
    opts.workers = resolve_workers(cfg.workers);
    const double constant = theorem_constant_converged(pr.f, pr.w, 1e-6, 16, 1LL << 24, opts.workers);
    const ConvergenceRecord r = measure_rung(pr.f, pr.w, cfg.N, opts, constant);
    emit(cfg, records_csv(std::span<const ConvergenceRecord>(&r, 1)));
    return kExitOk;
}

int cmd_converge(const RunConfig& cfg) {
    if (cfg.ladder.empty()) throw UsageError("converge needs --ladder N1,N2,...");
    const auto ladder = parse_ladder(cfg.ladder);
    check_common(cfg);
    const auto pr = resolve_problem(cfg);
    StudyOptions opts;
    opts.epsilon = cfg.epsilon;
    opts.stitched = cfg.stitched;
    opts.grid_per_axis = cfg.grid;
    opts.workers = resolve_workers(cfg.workers);
    const auto records = convergence_study(pr.f, pr.w, ladder, opts);
    const std::string csv = records_csv(records);
    emit(cfg, csv);
    if (!cfg.out.empty()) std::cout << csv;
    return kExitOk;
}

int cmd_verify_quadratic(const RunConfig& cfg) {
    if (cfg.dim < 1 || cfg.dim > 3) throw UsageError("verify-quadratic supports --dim 1, 2 or 3");
    if (cfg.cases < 1) throw UsageError("--cases must be positive");
    QuadraticSuiteOptions opts;
    opts.dim = cfg.dim;
    opts.cases = cfg.cases;
    opts.seed = cfg.seed;
    bool all = true;
    std::ostringstream os;
    for (const auto& r : run_quadratic_suite(opts)) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) os << " (" << r.detail << ")";
        os << "\n";
        all = all && r.passed;
    }
    emit(cfg, os.str());
    return all ? kExitOk : kExitFailure;
}

void add_problem_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--function", cfg.function, "built-in target function")->capture_default_str();
    sub->add_option("--f-expr", cfg.f_expr, "target function as an expression in x1..xd");
    sub->add_option("--omega", cfg.omega, "built-in weight (one, linear)")->capture_default_str();
    sub->add_option("--omega-expr", cfg.omega_expr, "weight as an expression in x1..xd");
    sub->add_option("--signature", cfg.signature, "Hessian signature k,d");
    sub->add_option("--epsilon", cfg.epsilon, "budget reserve in (0,1)")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for sampling checks")->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--workers", cfg.workers, "worker threads (default $BOXMESH_WORKERS or all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Anisotropic box meshes for multilinear spline interpolation"};
    app.require_subcommand(1);

    auto* mesh = app.add_subcommand("mesh", "build the adaptive partition and write mesh JSON");
    add_problem_options(mesh, cfg);
    mesh->add_option("--N", cfg.N, "box budget")->capture_default_str();
    mesh->add_flag("--stitched", cfg.stitched, "refine subregion interfaces");

    auto* stitch = app.add_subcommand("stitch", "build the stitched partition and write mesh JSON");
    add_problem_options(stitch, cfg);
    stitch->add_option("--N", cfg.N, "box budget")->capture_default_str();

    auto* error = app.add_subcommand("error", "measure the weighted sup error for one N");
    add_problem_options(error, cfg);
    error->add_option("--N", cfg.N, "box budget")->capture_default_str();
    error->add_option("--grid", cfg.grid, "samples per axis per box")->capture_default_str();
    error->add_flag("--stitched", cfg.stitched, "use the continuous quasi-interpolant");

    auto* converge = app.add_subcommand("converge", "convergence study over an N ladder, CSV output");
    add_problem_options(converge, cfg);
    converge->add_option("--ladder", cfg.ladder, "comma-separated N values")->required();
    converge->add_option("--grid", cfg.grid, "samples per axis per box")->capture_default_str();
    converge->add_flag("--stitched", cfg.stitched, "use the continuous quasi-interpolant");

    auto* verify = app.add_subcommand("verify-quadratic", "brute-force checks of the quadratic closed forms");
    verify->add_option("--dim", cfg.dim, "dimension (1, 2 or 3)")->capture_default_str();
    verify->add_option("--cases", cfg.cases, "random cases per property")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    verify->add_option("--out", cfg.out, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*mesh) return cmd_mesh(cfg, cfg.stitched);
        if (*stitch) return cmd_mesh(cfg, true);
        if (*error) return cmd_error(cfg);
        if (*converge) return cmd_converge(cfg);
        if (*verify) return cmd_verify_quadratic(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        // Configuration and input problems: bad epsilon, unknown names,
        // unparsable expressions, infeasible budgets.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
