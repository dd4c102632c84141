#include "hyperrod/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace hyperrod::io {

using nlohmann::json;
using redundancy::Method;
using redundancy::Problem;
using redundancy::RedundancySolution;

std::string generator() { return std::string("hyperrod ") + HYPERROD_VERSION; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const RedundancySolution& s) {
    json trace = json::array();
    for (const auto& e : s.trace) trace.push_back({{"n", e.n}, {"X_n", e.X}});
    json j;
    j["generator"] = generator();
    j["problem"] = redundancy::problem_name(s.problem);
    j["method"] = redundancy::method_name(s.method);
    if (s.method == Method::series) j["n_terms"] = s.n_terms;
    j["X"] = s.X;
    j["units"] = redundancy::units(s.problem);
    j[s.problem == Problem::roller ? "X_N" : "X_Nm"] = s.X;
    j["X_linearized"] = s.X_linearized;
    j["residual"] = s.residual ? json(*s.residual) : json(nullptr);
    j["trace"] = trace;
    j["deviation_pct"] = s.deviation_pct;
    return j;
}

RedundancySolution solution_from_json(const json& j) {
    RedundancySolution s;
    const auto problem = j.at("problem").get<std::string>();
    if (problem == "roller") {
        s.problem = Problem::roller;
    } else if (problem == "builtin") {
        s.problem = Problem::builtin;
    } else {
        throw std::invalid_argument("unknown problem '" + problem + "'");
    }
    const auto method = j.at("method").get<std::string>();
    bool found = false;
    for (Method m : {Method::linearized, Method::series, Method::root_find, Method::closed}) {
        if (redundancy::method_name(m) == method) {
            s.method = m;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("unknown method '" + method + "'");
    s.n_terms = j.value("n_terms", std::size_t{0});
    s.X = j.at("X").get<double>();
    s.X_linearized = j.at("X_linearized").get<double>();
    if (!j.at("residual").is_null()) s.residual = j.at("residual").get<double>();
    for (const auto& e : j.at("trace")) s.trace.push_back({e.at("n").get<std::size_t>(), e.at("X_n").get<double>()});
    s.deviation_pct = j.at("deviation_pct").get<double>();
    return s;
}

json to_json(const series::PowerSeries<series::Rational>& s) {
    json out = json::array();
    const auto& c = s.coefficients();
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (c[n] == 0) continue;
        out.push_back({{"power", n}, {"num", numerator(c[n]).str()}, {"den", denominator(c[n]).str()}});
    }
    return out;
}

json to_json(const redundancy::MaxMomentReport& r) {
    return {{"problem", redundancy::problem_name(r.problem)},
            {"X_nonlinear", r.X_nonlinear},
            {"X_linearized", r.X_linearized},
            {"M_nonlinear_Nm", r.M_nonlinear},
            {"x_nonlinear_m", r.x_nonlinear},
            {"M_linearized_Nm", r.M_linearized},
            {"x_linearized_m", r.x_linearized},
            {"linear_excess_pct", r.linear_excess_pct},
            {"nonlinear_deficit_pct", r.nonlinear_deficit_pct}};
}

series::Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return series::Rational(boost::multiprecision::cpp_int(text));
        return series::Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                                boost::multiprecision::cpp_int(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

}  // namespace hyperrod::io
