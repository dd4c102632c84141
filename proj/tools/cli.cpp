#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "hyperrod/elastica.hpp"
#include "hyperrod/errors.hpp"
#include "hyperrod/redundancy.hpp"
#include "hyperrod/serialize.hpp"
#include "hyperrod/special_functions.hpp"

namespace hyperrod::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Config {
    std::string command;
    std::string target;  // problem, load kind or function name
    double L = kNaN, E = kNaN, J = kNaN, EJ = kNaN;
    double q = kNaN, P = kNaN, M0 = kNaN;
    std::string method;
    std::size_t n = 0;
    bool n_given = false;
    std::string kernel = "consistent";
    std::string integral = "quadrature";
    double rtol = kNaN;
    std::string format;
    std::string out_path;
    std::vector<double> params;
};

bool given(double v) { return !std::isnan(v); }

elastica::RodProperties make_rod(const Config& c) {
    if (!given(c.L)) throw UsageError("--L is required");
    const bool modulus = given(c.E) || given(c.J);
    if (modulus == given(c.EJ)) throw UsageError("give exactly one of (--E and --J) or --EJ");
    if (modulus && !(given(c.E) && given(c.J))) throw UsageError("--E and --J must be given together");
    auto positive = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0) throw UsageError(std::string(name) + " must be positive");
    };
    positive(c.L, "--L");
    if (modulus) {
        positive(c.E, "--E");
        positive(c.J, "--J");
        return elastica::RodProperties::from_modulus(c.L, c.E, c.J);
    }
    positive(c.EJ, "--EJ");
    return elastica::RodProperties::from_stiffness(c.L, c.EJ);
}

double require_load(double v, const char* flag) {
    if (!given(v)) throw UsageError(std::string(flag) + " is required");
    if (!std::isfinite(v)) throw UsageError(std::string(flag) + " must be finite");
    return v;
}

double require_q(const Config& c) {
    const double q = require_load(c.q, "--q");
    if (q < 0.0) throw UsageError("--q must be non-negative (loads act downward)");
    return q;
}

special::Settings make_settings(const Config& c, const Environment& env) {
    special::Settings s;
    if (given(c.rtol)) {
        s.rtol = c.rtol;
    } else if (env.hyp_rtol) {
        try {
            std::size_t used = 0;
            s.rtol = std::stod(*env.hyp_rtol, &used);
            if (used != env.hyp_rtol->size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw UsageError("ELASTICA_HYP_RTOL is not a number: '" + *env.hyp_rtol + "'");
        }
    }
    if (!(s.rtol > 0.0) || !std::isfinite(s.rtol)) throw UsageError("tolerance must be positive");
    return s;
}

redundancy::Problem parse_problem(const std::string& s) {
    return s == "roller" ? redundancy::Problem::roller : redundancy::Problem::builtin;
}

redundancy::ReversionKernel parse_kernel(const std::string& s) {
    return s == "published" ? redundancy::ReversionKernel::published : redundancy::ReversionKernel::consistent;
}

std::string csv_header() { return "# " + io::generator(); }

std::string fmt(double v) { return io::format_double(v); }

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---- solve -----------------------------------------------------------------

std::string cmd_solve(const Config& c, const special::Settings& settings) {
    const auto rod = make_rod(c);
    const double q = require_q(c);
    const auto problem = parse_problem(c.target);

    redundancy::SolveOptions opt;
    opt.settings = settings;
    opt.kernel = parse_kernel(c.kernel);
    opt.mode = c.integral == "hyp-approx" ? redundancy::TipIntegralMode::hyp_approx
                                          : redundancy::TipIntegralMode::quadrature;
    const std::string m = c.method.empty() ? "root-find" : c.method;
    if (m == "linearized") {
        opt.method = redundancy::Method::linearized;
    } else if (m == "series") {
        opt.method = redundancy::Method::series;
    } else if (m == "root-find") {
        opt.method = redundancy::Method::root_find;
    } else if (m == "closed") {
        if (problem == redundancy::Problem::roller) throw UsageError("--method closed applies to builtin only");
        opt.method = redundancy::Method::closed;
    } else {
        throw UsageError("unknown solve method '" + m + "'");
    }
    opt.n_terms = c.n_given ? c.n : (problem == redundancy::Problem::roller ? 7 : 11);

    const auto sol = redundancy::solve(problem, rod, q, opt);
    const auto report = redundancy::max_bending_moment_report(problem, rod, q, sol.X);

    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header() << "\n";
        os << "problem,method,n_terms,X,units,X_linearized,residual,deviation_pct\n";
        os << redundancy::problem_name(sol.problem) << "," << redundancy::method_name(sol.method) << ","
           << sol.n_terms << "," << fmt(sol.X) << "," << redundancy::units(sol.problem) << ","
           << fmt(sol.X_linearized) << "," << (sol.residual ? fmt(*sol.residual) : std::string()) << ","
           << fmt(sol.deviation_pct) << "\n";
        return os.str();
    }
    json j = io::to_json(sol);
    j["L_m"] = rod.length();
    j["EJ_Nm2"] = rod.stiffness();
    j["q_N_per_m"] = q;
    if (sol.method == redundancy::Method::series && problem == redundancy::Problem::roller) {
        j["kernel"] = redundancy::kernel_name(opt.kernel);
    }
    if (sol.method == redundancy::Method::closed) j["integral_mode"] = redundancy::mode_name(opt.mode);
    j["max_moment"] = io::to_json(report);
    return json_text(j);
}

// ---- deflect ---------------------------------------------------------------

std::string cmd_deflect(const Config& c, const special::Settings& settings) {
    const auto rod = make_rod(c);
    elastica::LoadCase load;
    if (c.target == "uniform") {
        load = elastica::UniformLoad{require_load(c.q, "--q")};
    } else if (c.target == "shear") {
        load = elastica::TipShear{require_load(c.P, "--P")};
    } else if (c.target == "moment") {
        load = elastica::TipMoment{require_load(c.M0, "--M0")};
    } else {
        load = elastica::BuiltInCombined{require_load(c.q, "--q")};
    }
    const std::string m = c.method.empty() ? "quadrature" : c.method;
    elastica::ProfileMethod method;
    if (m == "quadrature") {
        method = elastica::ProfileMethod::quadrature;
    } else if (m == "closed-form") {
        method = elastica::ProfileMethod::closed_form;
    } else {
        throw UsageError("unknown deflect method '" + m + "' (quadrature | closed-form)");
    }
    elastica::ProfileOptions opt;
    opt.settings = settings;
    if (c.n_given) {
        if (c.n < 2) throw UsageError("--n must be at least 2 for a profile");
        opt.points = c.n;
    }
    elastica::require_feasible(load, rod);
    const auto exact = elastica::deflection_profile(load, rod, method, opt);
    const auto linear = elastica::deflection_profile(load, rod, elastica::ProfileMethod::linearized, opt);
    const double L = rod.length();

    if (c.format == "json") {
        json samples = json::array();
        for (std::size_t i = 0; i < exact.samples.size(); ++i) {
            samples.push_back({{"x_m", exact.samples[i].x},
                               {"y_exact_m", exact.samples[i].y},
                               {"y_linear_m", linear.samples[i].y}});
        }
        json j{{"generator", io::generator()},
               {"load", elastica::load_name(load)},
               {"method", elastica::method_name(method)},
               {"L_m", L},
               {"EJ_Nm2", rod.stiffness()},
               {"samples", samples}};
        return json_text(j);
    }
    std::ostringstream os;
    os << csv_header() << " load=" << elastica::load_name(load) << " method=" << elastica::method_name(method)
       << "\n";
    os << "xi,x_m,y_exact_m,y_linear_m,eta_exact,eta_linear\n";
    for (std::size_t i = 0; i < exact.samples.size(); ++i) {
        const double x = exact.samples[i].x;
        const double ye = exact.samples[i].y;
        const double yl = linear.samples[i].y;
        os << fmt(x / L) << "," << fmt(x) << "," << fmt(ye) << "," << fmt(yl) << "," << fmt(ye / L) << ","
           << fmt(yl / L) << "\n";
    }
    return os.str();
}

// ---- table -----------------------------------------------------------------

std::string cmd_table(const Config& c, const special::Settings& settings) {
    const auto rod = make_rod(c);
    const double q = require_q(c);
    const auto problem = parse_problem(c.target);
    const auto kernel = parse_kernel(c.kernel);
    const std::size_t n_max = c.n_given ? c.n : 20;

    redundancy::SolveOptions opt;
    opt.settings = settings;
    opt.method = redundancy::Method::root_find;
    const double X_root = redundancy::solve(problem, rod, q, opt).X;
    const auto trace = redundancy::series_trace(problem, rod, q, n_max, kernel);
    auto rel = [&](double X) { return X_root == 0.0 ? 0.0 : std::abs(X - X_root) / std::abs(X_root); };
    const std::string unit_col = problem == redundancy::Problem::roller ? "X_n_N" : "X_n_Nm";

    if (c.format == "json") {
        json rows = json::array();
        for (const auto& e : trace) rows.push_back({{"n", e.n}, {"X_n", e.X}, {"rel_diff", rel(e.X)}});
        json j{{"generator", io::generator()},
               {"problem", redundancy::problem_name(problem)},
               {"kernel", redundancy::kernel_name(kernel)},
               {"units", redundancy::units(problem)},
               {"X_root", X_root},
               {"rows", rows}};
        return json_text(j);
    }
    std::ostringstream os;
    os << csv_header() << " problem=" << redundancy::problem_name(problem)
       << " kernel=" << redundancy::kernel_name(kernel) << " X_root=" << fmt(X_root) << "\n";
    os << "n," << unit_col << ",rel_diff\n";
    for (const auto& e : trace) os << e.n << "," << fmt(e.X) << "," << fmt(rel(e.X)) << "\n";
    return os.str();
}

// ---- eval ------------------------------------------------------------------

std::string cmd_eval(const Config& c, const special::Settings& settings) {
    const auto& p = c.params;
    auto expect = [&](std::size_t n, const char* signature) {
        if (p.size() != n) {
            throw UsageError("eval " + c.target + " takes " + std::to_string(n) + " numbers: " + signature);
        }
    };
    special::Estimate est;
    if (c.target == "2f1") {
        expect(4, "a b c x");
        est = special::gauss_2f1_estimate(p[0], p[1], p[2], p[3], settings);
    } else if (c.target == "3f2") {
        expect(6, "a1 a2 a3 b1 b2 x");
        est = special::hypergeometric_series({{p[0], p[1], p[2]}, {p[3], p[4]}, p[5]}, settings);
    } else if (c.target == "f1") {
        expect(6, "a b1 b2 c x1 x2");
        est = special::appell_f1_estimate(p[0], p[1], p[2], p[3], p[4], p[5], settings);
    } else if (c.target == "fd3") {
        expect(8, "a b1 b2 b3 c x1 x2 x3");
        est = special::lauricella_fd3_estimate(p[0], {p[1], p[2], p[3]}, p[4], {p[5], p[6], p[7]}, settings);
    } else {
        expect(3, "a b c");
        est.value = special::gauss_summation(p[0], p[1], p[2]);
        // log-gamma rounding only
        est.error = 16.0 * std::numeric_limits<double>::epsilon() * std::abs(est.value);
    }
    if (c.format == "csv") {
        return csv_header() + "\nfunction,value,error\n" + c.target + "," + fmt(est.value) + "," + fmt(est.error) +
               "\n";
    }
    json j{{"generator", io::generator()},
           {"function", c.target},
           {"args", p},
           {"value", est.value},
           {"error", est.error}};
    return json_text(j);
}

void add_rod_flags(CLI::App* sc, Config& c) {
    sc->add_option("--L", c.L, "rod length [m]");
    sc->add_option("--E", c.E, "Young modulus [N/m^2]");
    sc->add_option("--J", c.J, "second moment of area [m^4]");
    sc->add_option("--EJ", c.EJ, "flexural stiffness [N m^2]");
}

void add_common_flags(CLI::App* sc, Config& c, const std::string& default_format) {
    sc->add_option("--rtol", c.rtol, "series tolerance (overrides ELASTICA_HYP_RTOL)");
    sc->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_str(default_format);
    sc->add_option("--out", c.out_path, "write output to this file instead of stdout");
    c.format = default_format;
}

}  // namespace

Environment read_environment() {
    Environment env;
    if (const char* v = std::getenv("ELASTICA_HYP_RTOL")) env.hyp_rtol = v;
    return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
    CLI::App app{"Large-deflection rods: exact deflections and redundant reactions", "hyperrod"};
    app.require_subcommand(1);
    app.set_version_flag("--version", io::generator());

    Config solve_c, deflect_c, table_c, eval_c;

    auto* solve = app.add_subcommand("solve", "solve a redundant rod problem");
    solve->add_option("problem", solve_c.target, "roller | builtin")->required()->check(CLI::IsMember({"roller", "builtin"}));
    add_rod_flags(solve, solve_c);
    solve->add_option("--q", solve_c.q, "uniform load [N/m]");
    solve->add_option("--method", solve_c.method, "linearized | series | root-find | closed");
    solve->add_option("--n", solve_c.n, "highest series index (series method)");
    solve->add_option("--kernel", solve_c.kernel, "roller series kernel")->check(CLI::IsMember({"consistent", "published"}));
    solve->add_option("--integral", solve_c.integral, "builtin closed method: tip integral")
        ->check(CLI::IsMember({"quadrature", "hyp-approx"}));
    add_common_flags(solve, solve_c, "json");

    auto* deflect = app.add_subcommand("deflect", "deflection profile, exact and linearized");
    deflect->add_option("load", deflect_c.target, "uniform | shear | moment | builtin")
        ->required()
        ->check(CLI::IsMember({"uniform", "shear", "moment", "builtin"}));
    add_rod_flags(deflect, deflect_c);
    deflect->add_option("--q", deflect_c.q, "uniform load [N/m]");
    deflect->add_option("--P", deflect_c.P, "downward tip force [N]");
    deflect->add_option("--M0", deflect_c.M0, "tip couple [N m]");
    deflect->add_option("--method", deflect_c.method, "quadrature | closed-form");
    deflect->add_option("--n", deflect_c.n, "number of grid points (default 201)");
    add_common_flags(deflect, deflect_c, "csv");

    auto* table = app.add_subcommand("table", "series partial sums versus number of terms");
    table->add_option("problem", table_c.target, "roller | builtin")->required()->check(CLI::IsMember({"roller", "builtin"}));
    add_rod_flags(table, table_c);
    table->add_option("--q", table_c.q, "uniform load [N/m]");
    table->add_option("--n", table_c.n, "highest series index (default 20)");
    table->add_option("--kernel", table_c.kernel, "roller series kernel")->check(CLI::IsMember({"consistent", "published"}));
    add_common_flags(table, table_c, "csv");

    auto* eval = app.add_subcommand("eval", "evaluate a special function");
    eval->add_option("function", eval_c.target, "2f1 | 3f2 | f1 | fd3 | gauss-sum")
        ->required()
        ->check(CLI::IsMember({"2f1", "3f2", "f1", "fd3", "gauss-sum"}));
    eval->add_option("params", eval_c.params, "numeric arguments in signature order");
    eval->add_option("--rtol", eval_c.rtol, "series tolerance (overrides ELASTICA_HYP_RTOL)");
    eval->add_option("--format", eval_c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    eval->add_option("--out", eval_c.out_path, "write output to this file instead of stdout");
    eval_c.format = "json";

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return ok;
        }
        err << "error: " << e.what() << "\n";
        return usage;
    }

    Config* c = nullptr;
    std::string (*command)(const Config&, const special::Settings&) = nullptr;
    if (*solve) {
        c = &solve_c;
        command = cmd_solve;
    } else if (*deflect) {
        c = &deflect_c;
        command = cmd_deflect;
    } else if (*table) {
        c = &table_c;
        command = cmd_table;
    } else {
        c = &eval_c;
        command = cmd_eval;
    }
    for (auto* sc : {solve, deflect, table}) {
        if (*sc && sc->count("--n") > 0) c->n_given = true;
    }

    try {
        const auto settings = make_settings(*c, env);
        const std::string text = command(*c, settings);
        if (c->out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(c->out_path, std::ios::binary);
            if (!file) throw UsageError("cannot open '" + c->out_path + "' for writing");
            file << text;
        }
        return ok;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const InfeasibleLoad& e) {
        err << "infeasible load: " << e.what() << "\n";
        return infeasible;
    } catch (const Error& e) {
        err << "domain error: " << e.what() << "\n";
        return domain;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

}  // namespace hyperrod::cli
