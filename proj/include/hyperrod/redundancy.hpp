#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyperrod/elastica.hpp"
#include "hyperrod/quadrature.hpp"
#include "hyperrod/series.hpp"
#include "hyperrod/special_functions.hpp"

namespace hyperrod::redundancy {

/// roller: cantilever clamped at x = L, propped by a roller at the tip; the
///         unknown is the upward tip reaction X [N].
/// builtin: both ends clamped; the tip carries qL/2 upward and the unknown
///          is the magnitude of the clamping moment X [N m].
enum class Problem { roller, builtin };

/// closed applies to the built-in problem only: X = 2EJ I / (L^2 + I^2).
enum class Method { linearized, series, root_find, closed };

/// Which f(Y) the roller series reverts. `consistent` uses the shear kernel
/// 3F2(1/2, 1, 3/2; 5/4, 7/4) of the consistency equation; `published`
/// reuses the uniform-load lower parameters (7/6, 5/3), which is what
/// reproduces the printed roller coefficients.
enum class ReversionKernel { consistent, published };

/// How the built-in tip integral I is obtained.
enum class TipIntegralMode { quadrature, hyp_approx };

std::string problem_name(Problem p);
std::string method_name(Method m);
std::string kernel_name(ReversionKernel k);
std::string mode_name(TipIntegralMode m);
/// "N" for the roller reaction, "N m" for the built-in moment.
std::string units(Problem p);

struct TraceEntry {
    std::size_t n;
    double X;
};

struct RedundancySolution {
    Problem problem = Problem::roller;
    Method method = Method::linearized;
    std::size_t n_terms = 0;          ///< highest series index for Method::series
    double X = 0.0;
    std::optional<double> residual;   ///< consistency-equation value at X
    std::vector<TraceEntry> trace;    ///< X_n for n = 0..n_terms (series only)
    double X_linearized = 0.0;
    double deviation_pct = 0.0;       ///< (X_linearized - X) / X * 100
};

struct SolveOptions {
    Method method = Method::root_find;
    std::size_t n_terms = 7;
    ReversionKernel kernel = ReversionKernel::consistent;
    TipIntegralMode mode = TipIntegralMode::quadrature;
    double rtol = 1e-12;              ///< root finder tolerance on the scaled unknown
    special::Settings settings{};
    quadrature::Tolerances tol{};
};

/// Series in p = L^3 q / EJ whose coefficient of p^{2k+1} is a_k, so that
/// X = (EJ / L^2) sum_k a_k p^{2k+1} = sum_k a_k L^{6k+1} q^{2k+1} / EJ^{2k}.
/// `terms` is the number of a_k kept; coefficients are exact.
series::PowerSeries<series::Rational> roller_reaction_series(std::size_t terms,
                                                             ReversionKernel kernel = ReversionKernel::consistent);

/// a_0 .. a_{terms-1}.
std::vector<series::Rational> roller_coefficients(std::size_t terms,
                                                  ReversionKernel kernel = ReversionKernel::consistent);

/// Same layout for the built-in moment: X = (EJ / L) sum_k b_k p^{2k+1}.
series::PowerSeries<series::Rational> builtin_moment_series(std::size_t terms);
std::vector<series::Rational> builtin_coefficients(std::size_t terms);

/// 3Lq 3F2(1/2,1,3/2; 7/6,5/3; (L^3 q/6EJ)^2) - 8X 3F2(1/2,1,3/2; 5/4,7/4; (L^2 X/2EJ)^2).
/// Zero when the tip deflections of the two sub-loads cancel.
double roller_consistency(const elastica::RodProperties& rod, double q, double X,
                          const special::Settings& s = {});

/// I = magnitude of the tip deflection of the built-in structure with the
/// clamping moment removed. The quadrature mode integrates the hyperelliptic
/// integral; hyp_approx is (L^4 q / 24EJ) 2F1(1/2, 2/3; 5/3; (L^3 q/6EJ)^2).
double builtin_tip_integral(const elastica::RodProperties& rod, double q, TipIntegralMode mode,
                            const SolveOptions& options = {});

/// I - (EJ - sqrt(EJ^2 - X^2 L^2)) / X, with I from quadrature.
double builtin_consistency(const elastica::RodProperties& rod, double q, double X,
                           const SolveOptions& options = {});

RedundancySolution solve_roller(const elastica::RodProperties& rod, double q, const SolveOptions& options = {});
RedundancySolution solve_builtin(const elastica::RodProperties& rod, double q, const SolveOptions& options = {});
RedundancySolution solve(Problem problem, const elastica::RodProperties& rod, double q,
                         const SolveOptions& options = {});

/// Partial sums X_0 .. X_{n_max} of the reaction series.
std::vector<TraceEntry> series_trace(Problem problem, const elastica::RodProperties& rod, double q,
                                     std::size_t n_max, ReversionKernel kernel = ReversionKernel::consistent);

/// Stabilization: |X_n - X_{n-1}| / |X_n| < threshold for every n in
/// [n0, last n of the trace].
struct Stabilization {
    bool stable = false;
    std::optional<std::size_t> first_stable_n;  ///< smallest n0 for which the rule holds
    double worst_change = 0.0;                  ///< largest relative change for n >= n0
};

Stabilization stabilization(const std::vector<TraceEntry>& trace, std::size_t n0, double threshold = 1e-4);

/// Largest bending moments with the nonlinear and the linearized redundant.
/// roller: span maximum X^2 / 2q at x = X/q.
/// builtin: max(X, |qL^2/8 - X|), clamp or midspan.
struct MaxMomentReport {
    Problem problem;
    double X_nonlinear;
    double X_linearized;
    double M_nonlinear;
    double x_nonlinear;
    double M_linearized;
    double x_linearized;
    /// (M_lin - M_nl) / M_nl * 100: how much the linearized stress exceeds the nonlinear one.
    double linear_excess_pct;
    /// (M_lin - M_nl) / M_lin * 100: how much lower the nonlinear stress is.
    double nonlinear_deficit_pct;
};

MaxMomentReport max_bending_moment_report(Problem problem, const elastica::RodProperties& rod, double q,
                                          double X_nonlinear);

}  // namespace hyperrod::redundancy
