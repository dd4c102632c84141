#include "hyperrod/redundancy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "hyperrod/errors.hpp"
#include "hyperrod/roots.hpp"

namespace hyperrod::redundancy {

using elastica::RodProperties;
using series::PowerSeries;
using series::Rational;

namespace {

Rational frac(long n, long d) { return Rational(n) / Rational(d); }

std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void check_load(double q) {
    if (!std::isfinite(q)) throw DomainError("load q must be finite");
    if (q < 0.0) throw DomainError("negative q is rejected: loads act downward (got q = " + num(q) + ")");
}

// The rational pipeline is deterministic, so finished series are shared.
template <class Build>
PowerSeries<Rational> cached(int tag, std::size_t terms, Build&& build) {
    static std::mutex mutex;
    static std::map<std::pair<int, std::size_t>, PowerSeries<Rational>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find({tag, terms});
        if (it != cache.end()) return it->second;
    }
    PowerSeries<Rational> s = build();
    std::lock_guard lock(mutex);
    cache.emplace(std::make_pair(tag, terms), s);
    return s;
}

std::vector<Rational> odd_coefficients(const PowerSeries<Rational>& s, std::size_t terms) {
    std::vector<Rational> out;
    out.reserve(terms);
    for (std::size_t k = 0; k < terms; ++k) out.push_back(s[2 * k + 1]);
    return out;
}

// sum_{k <= n} c_k p^{2k+1}, for every n.
std::vector<TraceEntry> partial_sums(const std::vector<Rational>& c, double p, double unit) {
    std::vector<TraceEntry> trace;
    double acc = 0.0;
    double pw = p;
    for (std::size_t k = 0; k < c.size(); ++k) {
        acc += series::to_double(c[k]) * pw;
        pw *= p * p;
        trace.push_back({k, unit * acc});
    }
    return trace;
}

double deviation(double X_lin, double X) { return X == 0.0 ? 0.0 : (X_lin - X) / X * 100.0; }

}  // namespace

std::string problem_name(Problem p) { return p == Problem::roller ? "roller" : "builtin"; }

std::string method_name(Method m) {
    switch (m) {
        case Method::linearized: return "linearized";
        case Method::series: return "series";
        case Method::root_find: return "root-find";
        case Method::closed: return "closed";
    }
    return "unknown";
}

std::string kernel_name(ReversionKernel k) { return k == ReversionKernel::consistent ? "consistent" : "published"; }

std::string mode_name(TipIntegralMode m) { return m == TipIntegralMode::quadrature ? "quadrature" : "hyp-approx"; }

std::string units(Problem p) { return p == Problem::roller ? "N" : "N m"; }

PowerSeries<Rational> roller_reaction_series(std::size_t terms, ReversionKernel kernel) {
    if (terms == 0) throw DomainError("roller_reaction_series needs at least one term");
    const int tag = kernel == ReversionKernel::consistent ? 0 : 1;
    return cached(tag, terms, [&] {
        const std::size_t order = 2 * terms - 1;
        const Rational half = frac(1, 2), one(1), three_halves = frac(3, 2);
        // f(Y) = Y 3F2(1/2, 1, 3/2; b1, b2; Y^2)
        const auto f = kernel == ReversionKernel::consistent
                           ? series::hyp3f2_taylor(half, one, three_halves, frac(5, 4), frac(7, 4), order)
                           : series::hyp3f2_taylor(half, one, three_halves, frac(7, 6), frac(5, 3), order);
        const auto g = series::lagrange_revert(f);
        // Z(p) = (3/16) p 3F2(1/2, 1, 3/2; 7/6, 5/3; p^2 / 36)
        auto z = series::hypergeometric_odd_taylor({half, one, three_halves}, {frac(7, 6), frac(5, 3)}, order,
                                                   frac(1, 36));
        std::vector<Rational> zc = z.coefficients();
        for (auto& c : zc) c *= frac(3, 16);
        const auto y = series::compose(g, PowerSeries<Rational>(zc, order, series::Parity::odd));
        std::vector<Rational> xc = y.coefficients();
        for (auto& c : xc) c *= 2;  // X = (2EJ/L^2) Y
        return PowerSeries<Rational>(std::move(xc), order, series::Parity::odd);
    });
}

std::vector<Rational> roller_coefficients(std::size_t terms, ReversionKernel kernel) {
    return odd_coefficients(roller_reaction_series(terms, kernel), terms);
}

PowerSeries<Rational> builtin_moment_series(std::size_t terms) {
    if (terms == 0) throw DomainError("builtin_moment_series needs at least one term");
    return cached(2, terms, [&] {
        const std::size_t order = 2 * terms - 1;
        // w = I / L = (p/24) 2F1(1/2, 2/3; 5/3; p^2/36)
        auto w = series::hypergeometric_odd_taylor({frac(1, 2), frac(2, 3)}, {frac(5, 3)}, order, frac(1, 36));
        std::vector<Rational> wc = w.coefficients();
        for (auto& c : wc) c /= 24;
        // X L / EJ = 2 w / (1 + w^2)
        std::vector<Rational> hc(order + 1, Rational(0));
        for (std::size_t k = 0; 2 * k + 1 <= order; ++k) hc[2 * k + 1] = (k % 2 == 0) ? 2 : -2;
        return series::compose(PowerSeries<Rational>(hc, order, series::Parity::odd),
                               PowerSeries<Rational>(wc, order, series::Parity::odd));
    });
}

std::vector<Rational> builtin_coefficients(std::size_t terms) {
    return odd_coefficients(builtin_moment_series(terms), terms);
}

double roller_consistency(const RodProperties& rod, double q, double X, const special::Settings& s) {
    elastica::require_feasible(elastica::UniformLoad{q}, rod);
    elastica::require_feasible(elastica::TipShear{-X}, rod);
    const double L = rod.length();
    const double EJ = rod.stiffness();
    const double z = L * L * L * q / (6.0 * EJ);
    const double w = L * L * X / (2.0 * EJ);
    return 3.0 * L * q * special::hyp_3f2(0.5, 1.0, 1.5, 7.0 / 6.0, 5.0 / 3.0, z * z, s) -
           8.0 * X * special::hyp_3f2(0.5, 1.0, 1.5, 1.25, 1.75, w * w, s);
}

double builtin_tip_integral(const RodProperties& rod, double q, TipIntegralMode mode, const SolveOptions& options) {
    check_load(q);
    elastica::require_feasible(elastica::BuiltInCombined{q}, rod);
    if (q == 0.0) return 0.0;
    const double L = rod.length();
    const double EJ = rod.stiffness();
    if (mode == TipIntegralMode::quadrature) {
        return -quadrature::integrate_deflection(elastica::BuiltInCombined{q}, rod, 0.0, options.tol);
    }
    const double z = L * L * L * q / (6.0 * EJ);
    return std::pow(L, 4) * q / (24.0 * EJ) * special::gauss_2f1(0.5, 2.0 / 3.0, 5.0 / 3.0, z * z, options.settings);
}

namespace {

// Magnitude of the tip deflection produced by a clamping moment X alone.
double moment_deflection(const RodProperties& rod, double X) {
    return -elastica::tip_deflection_moment(rod, X);
}

}  // namespace

double builtin_consistency(const RodProperties& rod, double q, double X, const SolveOptions& options) {
    return builtin_tip_integral(rod, q, TipIntegralMode::quadrature, options) - moment_deflection(rod, X);
}

std::vector<TraceEntry> series_trace(Problem problem, const RodProperties& rod, double q, std::size_t n_max,
                                     ReversionKernel kernel) {
    check_load(q);
    const double L = rod.length();
    const double EJ = rod.stiffness();
    const double p = L * L * L * q / EJ;
    if (problem == Problem::roller) {
        elastica::require_feasible(elastica::UniformLoad{q}, rod);
        return partial_sums(roller_coefficients(n_max + 1, kernel), p, EJ / (L * L));
    }
    elastica::require_feasible(elastica::BuiltInCombined{q}, rod);
    if (p > 6.0) {
        throw DomainError("built-in series needs q <= 6EJ/L^3 = " + num(6.0 * EJ / (L * L * L)) +
                          " N/m, where its 2F1 tip integral converges");
    }
    return partial_sums(builtin_coefficients(n_max + 1), p, EJ / L);
}

RedundancySolution solve_roller(const RodProperties& rod, double q, const SolveOptions& options) {
    check_load(q);
    elastica::require_feasible(elastica::UniformLoad{q}, rod);
    const double L = rod.length();
    const double EJ = rod.stiffness();

    RedundancySolution sol;
    sol.problem = Problem::roller;
    sol.method = options.method;
    sol.X_linearized = 3.0 * q * L / 8.0;

    auto residual_if_feasible = [&](double X) -> std::optional<double> {
        if (!elastica::feasibility_check(elastica::TipShear{-X}, rod).feasible()) return std::nullopt;
        return roller_consistency(rod, q, X, options.settings);
    };

    switch (options.method) {
        case Method::linearized:
            sol.X = sol.X_linearized;
            sol.residual = residual_if_feasible(sol.X);
            break;
        case Method::series:
            sol.n_terms = options.n_terms;
            sol.trace = series_trace(Problem::roller, rod, q, options.n_terms, options.kernel);
            sol.X = sol.trace.back().X;
            sol.residual = residual_if_feasible(sol.X);
            break;
        case Method::root_find: {
            if (q == 0.0) {
                sol.X = 0.0;
                sol.residual = 0.0;
                break;
            }
            // Scaled form: Y 3F2(..5/4, 7/4; Y^2) = Zt with Y = X L^2 / 2EJ in (0, 1).
            const double z = L * L * L * q / (6.0 * EJ);
            double target = 0.0;
            try {
                target = 3.0 * L * L * L * q / (16.0 * EJ) *
                         special::hyp_3f2(0.5, 1.0, 1.5, 7.0 / 6.0, 5.0 / 3.0, z * z, options.settings);
            } catch (const ConvergenceError& e) {
                throw NearCriticalLoad(std::string("roller load near critical: ") + e.what(), z);
            }
            auto h = [&](double Y) {
                return Y * special::hyp_3f2(0.5, 1.0, 1.5, 1.25, 1.75, Y * Y, options.settings) - target;
            };
            // The left side exceeds Y, so the root lies below min(target, 1).
            // Start from 1.1 Y_lin and widen toward 1 while the sign stays put.
            const double y_lin = 3.0 * L * L * L * q / (16.0 * EJ);
            std::vector<double> candidates;
            if (1.1 * y_lin < 1.0) candidates.push_back(1.1 * y_lin);
            if (target < 1.0) candidates.push_back(target);
            for (int k = 1; k <= 6; ++k) candidates.push_back(1.0 - std::pow(10.0, -k));
            double hi = -1.0;
            try {
                for (double c : candidates) {
                    if (h(c) > 0.0) {
                        hi = c;
                        break;
                    }
                }
            } catch (const ConvergenceError& e) {
                throw BracketError(std::string("roller root not bracketed, load near critical: ") + e.what(),
                                   y_lin);
            }
            if (hi < 0.0) {
                throw BracketError("roller root not bracketed below Y = 1 - 1e-6; load near critical", y_lin);
            }
            const auto root = roots::bracketed_root(h, 0.0, hi, options.rtol);
            sol.X = 2.0 * EJ / (L * L) * root.x;
            sol.residual = roller_consistency(rod, q, sol.X, options.settings);
            break;
        }
        case Method::closed:
            throw DomainError("the closed method applies to the built-in problem only");
    }
    sol.deviation_pct = deviation(sol.X_linearized, sol.X);
    return sol;
}

RedundancySolution solve_builtin(const RodProperties& rod, double q, const SolveOptions& options) {
    check_load(q);
    elastica::require_feasible(elastica::BuiltInCombined{q}, rod);
    const double L = rod.length();
    const double EJ = rod.stiffness();

    RedundancySolution sol;
    sol.problem = Problem::builtin;
    sol.method = options.method;
    sol.X_linearized = q * L * L / 12.0;

    auto residual_if_defined = [&](double X) -> std::optional<double> {
        if (q == 0.0) return 0.0;
        if (!(std::abs(X) * L < EJ)) return std::nullopt;
        return builtin_consistency(rod, q, X, options);
    };

    auto require_below_length = [&](double I) {
        if (!(I < L)) {
            throw BracketError("built-in problem: tip integral I = " + num(I) + " m is not below L = " + num(L) +
                                   " m, so no clamping moment can cancel it (load near critical)",
                               I / L);
        }
    };

    switch (options.method) {
        case Method::linearized:
            sol.X = sol.X_linearized;
            sol.residual = residual_if_defined(sol.X);
            break;
        case Method::series:
            sol.n_terms = options.n_terms;
            sol.trace = series_trace(Problem::builtin, rod, q, options.n_terms);
            sol.X = sol.trace.back().X;
            sol.residual = residual_if_defined(sol.X);
            break;
        case Method::closed: {
            const double I = builtin_tip_integral(rod, q, options.mode, options);
            require_below_length(I);
            sol.X = 2.0 * EJ * I / (L * L + I * I);
            sol.residual = residual_if_defined(sol.X);
            break;
        }
        case Method::root_find: {
            const double I = builtin_tip_integral(rod, q, TipIntegralMode::quadrature, options);
            if (I == 0.0) {
                sol.X = 0.0;
                sol.residual = 0.0;
                break;
            }
            require_below_length(I);
            // r = X L / EJ; the moment deflection over L is r / (1 + sqrt(1 - r^2)).
            const double t = I / L;
            auto h = [t](double r) { return r / (1.0 + std::sqrt((1.0 - r) * (1.0 + r))) - t; };
            const auto root = roots::bracketed_root(h, 0.0, 1.0, options.rtol);
            sol.X = root.x * EJ / L;
            sol.residual = I - moment_deflection(rod, sol.X);
            break;
        }
    }
    sol.deviation_pct = deviation(sol.X_linearized, sol.X);
    return sol;
}

RedundancySolution solve(Problem problem, const RodProperties& rod, double q, const SolveOptions& options) {
    return problem == Problem::roller ? solve_roller(rod, q, options) : solve_builtin(rod, q, options);
}

Stabilization stabilization(const std::vector<TraceEntry>& trace, std::size_t n0, double threshold) {
    Stabilization out;
    std::vector<double> change(trace.size(), 0.0);
    for (std::size_t i = 1; i < trace.size(); ++i) {
        const double x = trace[i].X;
        change[i] = x == 0.0 ? 0.0 : std::abs(x - trace[i - 1].X) / std::abs(x);
    }
    // Smallest n from which every later change is below threshold.
    std::size_t first = trace.size();
    for (std::size_t i = trace.size(); i-- > 1;) {
        if (change[i] < threshold) {
            first = i;
        } else {
            break;
        }
    }
    if (first < trace.size()) out.first_stable_n = trace[first].n;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].n >= n0) out.worst_change = std::max(out.worst_change, change[i]);
    }
    out.stable = trace.size() > 1 && trace.back().n >= n0 && out.worst_change < threshold;
    return out;
}

MaxMomentReport max_bending_moment_report(Problem problem, const RodProperties& rod, double q, double X_nonlinear) {
    check_load(q);
    const double L = rod.length();
    MaxMomentReport r{};
    r.problem = problem;
    r.X_nonlinear = X_nonlinear;
    if (problem == Problem::roller) {
        r.X_linearized = 3.0 * q * L / 8.0;
        auto span = [&](double X, double& M, double& x) {
            M = q == 0.0 ? 0.0 : X * X / (2.0 * q);
            x = q == 0.0 ? 0.0 : X / q;
        };
        span(r.X_nonlinear, r.M_nonlinear, r.x_nonlinear);
        span(r.X_linearized, r.M_linearized, r.x_linearized);
    } else {
        r.X_linearized = q * L * L / 12.0;
        auto peak = [&](double X, double& M, double& x) {
            const double mid = std::abs(q * L * L / 8.0 - X);
            if (std::abs(X) >= mid) {
                M = std::abs(X);
                x = L;
            } else {
                M = mid;
                x = 0.5 * L;
            }
        };
        peak(r.X_nonlinear, r.M_nonlinear, r.x_nonlinear);
        peak(r.X_linearized, r.M_linearized, r.x_linearized);
    }
    const double diff = r.M_linearized - r.M_nonlinear;
    r.linear_excess_pct = r.M_nonlinear == 0.0 ? 0.0 : diff / r.M_nonlinear * 100.0;
    r.nonlinear_deficit_pct = r.M_linearized == 0.0 ? 0.0 : diff / r.M_linearized * 100.0;
    return r;
}

}  // namespace hyperrod::redundancy
