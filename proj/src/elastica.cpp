#include "hyperrod/elastica.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperrod/errors.hpp"

namespace hyperrod::elastica {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
    std::ostringstream os;
    os.precision(8);
    os << v;
    return os.str();
}

void check_position(const RodProperties& rod, double x) {
    const double L = rod.length();
    if (!(x >= 0.0 && x <= L)) {
        throw DomainError("section x = " + num(x) + " lies outside [0, " + num(L) + "]");
    }
}

void check_positive(double v, const char* what) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw DomainError(std::string(what) + " must be positive and finite (got " + num(v) + ")");
    }
}

}  // namespace

RodProperties RodProperties::from_modulus(double length, double young_modulus, double second_moment) {
    check_positive(length, "L");
    check_positive(young_modulus, "E");
    check_positive(second_moment, "J");
    return RodProperties(length, young_modulus * second_moment, young_modulus, second_moment);
}

RodProperties RodProperties::from_stiffness(double length, double flexural_stiffness) {
    check_positive(length, "L");
    check_positive(flexural_stiffness, "EJ");
    return RodProperties(length, flexural_stiffness, std::nullopt, std::nullopt);
}

std::string load_name(const LoadCase& load) {
    return std::visit(overloaded{[](const UniformLoad&) { return std::string("uniform"); },
                                 [](const TipShear&) { return std::string("shear"); },
                                 [](const TipMoment&) { return std::string("moment"); },
                                 [](const BuiltInCombined&) { return std::string("builtin"); }},
                      load);
}

double bending_moment(const LoadCase& load, const RodProperties& rod, double x) {
    check_position(rod, x);
    const double L = rod.length();
    return std::visit(overloaded{[&](const UniformLoad& u) { return -0.5 * u.q * x * x; },
                                 [&](const TipShear& s) { return -s.P * x; },
                                 [&](const TipMoment& m) { return m.M0; },
                                 [&](const BuiltInCombined& b) { return 0.5 * b.q * (L * x - x * x); }},
                      load);
}

double cumulative_moment(const LoadCase& load, const RodProperties& rod, double x) {
    check_position(rod, x);
    const double L = rod.length();
    const double d = L - x;
    return std::visit(
        overloaded{[&](const UniformLoad& u) { return -u.q * (L * L * L - x * x * x) / 6.0; },
                   [&](const TipShear& s) { return -0.5 * s.P * d * (L + x); },
                   [&](const TipMoment& m) { return m.M0 * d; },
                   [&](const BuiltInCombined& b) { return b.q * d * d * (L + 2.0 * x) / 12.0; }},
        load);
}

FeasibilityReport feasibility_check(const LoadCase& load, const RodProperties& rod) {
    const double L = rod.length();
    const double EJ = rod.stiffness();
    // |H| is non-increasing along [0, L] for every load shape, so the
    // maximum sits at the free tip.
    const double ratio = std::abs(cumulative_moment(load, rod, 0.0)) / EJ;
    return std::visit(
        overloaded{
            [&](const UniformLoad&) {
                const double bound = 6.0 * EJ / (L * L * L);
                return FeasibilityReport{ratio, bound, "q < 6EJ/L^3 = " + num(bound) + " N/m"};
            },
            [&](const TipShear&) {
                const double bound = 2.0 * EJ / (L * L);
                return FeasibilityReport{ratio, bound, "|P| < 2EJ/L^2 = " + num(bound) + " N"};
            },
            [&](const TipMoment&) {
                const double bound = EJ / L;
                return FeasibilityReport{ratio, bound, "|M0| < EJ/L = " + num(bound) + " N m"};
            },
            [&](const BuiltInCombined&) {
                const double bound = 12.0 * EJ / (L * L * L);
                return FeasibilityReport{ratio, bound, "q < 12EJ/L^3 = " + num(bound) + " N/m"};
            }},
        load);
}

void require_feasible(const LoadCase& load, const RodProperties& rod) {
    const auto report = feasibility_check(load, rod);
    if (!report.feasible()) {
        throw InfeasibleLoad("infeasible " + load_name(load) + " load: max |H|/EJ = " +
                                 num(report.max_ratio) + " >= 1; requires " + report.bound_text,
                             report.max_ratio);
    }
}

double tip_deflection_uniform(const RodProperties& rod, double q, const special::Settings& s) {
    require_feasible(UniformLoad{q}, rod);
    if (q == 0.0) return 0.0;
    const double L = rod.length();
    const double EJ = rod.stiffness();
    const double z = L * L * L * q / (6.0 * EJ);
    return std::pow(L, 4) * q / (8.0 * EJ) *
           special::hyp_3f2(0.5, 1.0, 1.5, 7.0 / 6.0, 5.0 / 3.0, z * z, s);
}

double tip_deflection_shear(const RodProperties& rod, double X, const special::Settings& s) {
    require_feasible(TipShear{-X}, rod);
    if (X == 0.0) return 0.0;
    const double L = rod.length();
    const double EJ = rod.stiffness();
    const double w = L * L * X / (2.0 * EJ);
    return -L * L * L * X / (3.0 * EJ) * special::hyp_3f2(0.5, 1.0, 1.5, 1.25, 1.75, w * w, s);
}

double tip_deflection_moment(const RodProperties& rod, double X) {
    require_feasible(TipMoment{X}, rod);
    const double L = rod.length();
    const double EJ = rod.stiffness();
    const double r = X * L / EJ;
    return -X * L * L / (EJ * (1.0 + std::sqrt((1.0 - r) * (1.0 + r))));
}

double linearized_tip_deflection(const LoadCase& load, const RodProperties& rod) {
    return linearized_deflection(load, rod, 0.0);
}

double linearized_deflection(const LoadCase& load, const RodProperties& rod, double x) {
    check_position(rod, x);
    const double L = rod.length();
    const double EJ = rod.stiffness();
    const double d = L - x;
    return std::visit(
        overloaded{
            [&](const UniformLoad& u) {
                return u.q * (3.0 * std::pow(L, 4) - 4.0 * L * L * L * x + std::pow(x, 4)) / (24.0 * EJ);
            },
            [&](const TipShear& s) { return s.P * d * d * (2.0 * L + x) / (6.0 * EJ); },
            [&](const TipMoment& m) { return -m.M0 * d * d / (2.0 * EJ); },
            [&](const BuiltInCombined& b) { return -b.q * d * d * d * (L + x) / (24.0 * EJ); }},
        load);
}

double closed_form_deflection(const LoadCase& load, const RodProperties& rod, double x,
                              const special::Settings& s) {
    check_position(rod, x);
    require_feasible(load, rod);
    const double L = rod.length();
    const double EJ = rod.stiffness();
    if (x == L) return 0.0;
    return std::visit(
        overloaded{
            [&](const UniformLoad& u) {
                if (u.q == 0.0) return 0.0;
                const double cube = L * L * L - x * x * x;
                const double z = u.q * cube / (6.0 * EJ);
                const double unit = cube / (L * L * L);
                return u.q * cube * cube / (36.0 * EJ * L * L) *
                       special::lauricella_fd3(2.0, {0.5, 0.5, 2.0 / 3.0}, 3.0, {z, -z, unit}, s);
            },
            [&](const TipShear& sh) {
                const double X = -sh.P;  // upward reaction
                if (X == 0.0) return 0.0;
                const double sq = (x - L) * (x + L);
                const double w = sq * X / (2.0 * EJ);
                const double unit = (L - x) * (L + x) / (L * L);
                return -sq * sq * X / (8.0 * EJ * L) *
                       special::lauricella_fd3(2.0, {0.5, 0.5, 0.5}, 3.0, {w, -w, unit}, s);
            },
            [&](const TipMoment& m) {
                const double d = L - x;
                const double r = m.M0 * d / EJ;
                return -m.M0 * d * d / (EJ * (1.0 + std::sqrt((1.0 - r) * (1.0 + r))));
            },
            [&](const BuiltInCombined&) -> double {
                throw DomainError("built-in combined load has no closed-form deflection "
                                  "(hyperelliptic integral); use quadrature");
            }},
        load);
}

FirstExample first_example_profile(const RodProperties& rod, double P, double xi,
                                   const quadrature::Tolerances& tol) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw DomainError("xi must lie in [0, 1] (got " + num(xi) + ")");
    }
    const double L = rod.length();
    const double mu = P * L * L / (2.0 * rod.stiffness());
    require_feasible(TipShear{P}, rod);
    const double exact = quadrature::integrate_deflection(TipShear{P}, rod, xi * L, tol) / L;
    const double approx = mu / 3.0 * (2.0 - 3.0 * xi + xi * xi * xi);
    return {mu, exact, approx};
}

std::string method_name(ProfileMethod m) {
    switch (m) {
        case ProfileMethod::quadrature: return "quadrature";
        case ProfileMethod::closed_form: return "closed-form";
        case ProfileMethod::linearized: return "linearized";
    }
    return "unknown";
}

DeflectionProfile deflection_profile(const LoadCase& load, const RodProperties& rod,
                                     ProfileMethod method, const ProfileOptions& options) {
    if (options.points < 2) {
        throw DomainError("a profile needs at least two points");
    }
    const double L = rod.length();
    const std::size_t n = options.points;
    DeflectionProfile profile{std::vector<ProfileSample>(n), method};
    for (std::size_t i = 0; i < n; ++i) {
        profile.samples[i].x = (i + 1 == n) ? L : L * static_cast<double>(i) / static_cast<double>(n - 1);
    }

    switch (method) {
        case ProfileMethod::linearized:
            for (auto& s : profile.samples) s.y = linearized_deflection(load, rod, s.x);
            break;
        case ProfileMethod::closed_form:
            for (auto& s : profile.samples) s.y = closed_form_deflection(load, rod, s.x, options.settings);
            break;
        case ProfileMethod::quadrature: {
            require_feasible(load, rod);
            profile.samples[n - 1].y = 0.0;
            for (std::size_t i = n - 1; i-- > 0;) {
                const auto seg = quadrature::integrate_deflection_segment(
                    load, rod, profile.samples[i].x, profile.samples[i + 1].x, options.tol);
                profile.samples[i].y = profile.samples[i + 1].y + seg.value;
            }
            break;
        }
    }
    return profile;
}

}  // namespace hyperrod::elastica

namespace hyperrod::quadrature {

Result integrate_deflection_segment(const elastica::LoadCase& load, const elastica::RodProperties& rod,
                                    double lo, double hi, const Tolerances& tol) {
    if (!(lo <= hi)) throw DomainError("deflection segment needs lo <= hi");
    const double EJ = rod.stiffness();
    // |H| is largest at the left end of any segment.
    const double ratio = std::abs(elastica::cumulative_moment(load, rod, lo)) / EJ;
    if (ratio >= 1.0) {
        const auto report = elastica::feasibility_check(load, rod);
        throw InfeasibleLoad("infeasible " + elastica::load_name(load) + " load: |H|/EJ = " +
                                 std::to_string(ratio) + " >= 1; requires " + report.bound_text,
                             ratio);
    }
    if (1.0 - ratio < 1e-6) {
        throw NearCriticalLoad("near-critical " + elastica::load_name(load) +
                                   " load: (EJ - |H|)/EJ = " + std::to_string(1.0 - ratio) + " < 1e-6",
                               ratio);
    }
    (void)elastica::cumulative_moment(load, rod, hi);  // range check on hi
    if (lo == hi) return {};

    IntegrandSpec spec;
    spec.lo = lo;
    spec.hi = hi;
    spec.tol = tol;
    spec.f = [&](const Point& p) {
        const double H = elastica::cumulative_moment(load, rod, std::clamp(p.x, lo, hi));
        return -H / std::sqrt((EJ - H) * (EJ + H));
    };
    return integrate(spec);
}

double integrate_deflection(const elastica::LoadCase& load, const elastica::RodProperties& rod,
                            double x, const Tolerances& tol) {
    return integrate_deflection_segment(load, rod, x, rod.length(), tol).value;
}

}  // namespace hyperrod::quadrature
