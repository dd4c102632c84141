#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperrod/quadrature.hpp"
#include "hyperrod/special_functions.hpp"

namespace hyperrod::elastica {

/// Straight rod of uniform flexural stiffness. Coordinates: x runs from the
/// free tip (x = 0) to the clamped end (x = L); y is positive downward.
class RodProperties {
public:
    /// EJ = E * J exactly.
    static RodProperties from_modulus(double length, double young_modulus, double second_moment);
    static RodProperties from_stiffness(double length, double flexural_stiffness);

    double length() const noexcept { return length_; }
    double stiffness() const noexcept { return stiffness_; }
    std::optional<double> young_modulus() const noexcept { return young_modulus_; }
    std::optional<double> second_moment() const noexcept { return second_moment_; }

private:
    RodProperties(double length, double stiffness, std::optional<double> e, std::optional<double> j)
        : length_(length), stiffness_(stiffness), young_modulus_(e), second_moment_(j) {}

    double length_;
    double stiffness_;
    std::optional<double> young_modulus_;
    std::optional<double> second_moment_;
};

/// Uniform downward load q [N/m]: M(x) = -q x^2 / 2.
struct UniformLoad {
    double q;
};

/// Downward tip force P [N]: M(x) = -P x. An upward reaction X is P = -X.
struct TipShear {
    double P;
};

/// Tip couple M0 [N m]: M(x) = M0.
struct TipMoment {
    double M0;
};

/// Uniform load q with the upward half-load reaction qL/2 at the tip:
/// M(x) = q (L x - x^2) / 2.
struct BuiltInCombined {
    double q;
};

using LoadCase = std::variant<UniformLoad, TipShear, TipMoment, BuiltInCombined>;

std::string load_name(const LoadCase& load);

/// Bending moment M(x) [N m], 0 <= x <= L.
double bending_moment(const LoadCase& load, const RodProperties& rod, double x);

/// H(x) = int_x^L M [N m^2], closed form per load.
double cumulative_moment(const LoadCase& load, const RodProperties& rod, double x);

struct FeasibilityReport {
    double max_ratio;         ///< max over [0, L] of |H| / EJ
    double load_bound;        ///< largest admissible load magnitude
    std::string bound_text;   ///< e.g. "q < 6EJ/L^3 = 1200"

    bool feasible() const noexcept { return max_ratio < 1.0; }
};

/// Pure report; never throws for finite input.
FeasibilityReport feasibility_check(const LoadCase& load, const RodProperties& rod);

/// Throws InfeasibleLoad (with the bound in the message) unless feasible.
void require_feasible(const LoadCase& load, const RodProperties& rod);

/// Tip deflection under uniform load, (L^4 q / 8EJ) 3F2(1/2,1,3/2; 7/6,5/3; (L^3 q/6EJ)^2).
double tip_deflection_uniform(const RodProperties& rod, double q, const special::Settings& s = {});

/// Tip deflection under an upward tip reaction X,
/// -(L^3 X / 3EJ) 3F2(1/2,1,3/2; 5/4,7/4; (L^2 X / 2EJ)^2).
double tip_deflection_shear(const RodProperties& rod, double X, const special::Settings& s = {});

/// Tip deflection under a tip couple X, (sqrt(EJ^2 - X^2 L^2) - EJ) / X,
/// evaluated in the cancellation-free form -X L^2 / (EJ (1 + sqrt(1 - (XL/EJ)^2))).
double tip_deflection_moment(const RodProperties& rod, double X);

/// Small-slope tip deflection: qL^4/8EJ, PL^3/3EJ, -M0 L^2/2EJ, -qL^4/24EJ.
double linearized_tip_deflection(const LoadCase& load, const RodProperties& rod);

/// Small-slope deflection y(x) = -(1/EJ) int_x^L H.
double linearized_deflection(const LoadCase& load, const RodProperties& rod, double x);

/// Closed-form deflection at any section: elementary for TipMoment, through
/// F_D^(3) for UniformLoad and TipShear. DomainError for BuiltInCombined,
/// whose integral is hyperelliptic.
double closed_form_deflection(const LoadCase& load, const RodProperties& rod, double x,
                              const special::Settings& s = {});

struct FirstExample {
    double mu;      ///< P L^2 / (2 EJ)
    double exact;   ///< eta(xi) = y(xi L) / L from the exact integral
    double approx;  ///< (mu / 3)(2 - 3 xi + xi^3)
};

/// Tip-sheared cantilever in dimensionless form. Requires mu < 1.
FirstExample first_example_profile(const RodProperties& rod, double P, double xi,
                                   const quadrature::Tolerances& tol = {});

enum class ProfileMethod { quadrature, closed_form, linearized };

std::string method_name(ProfileMethod m);

struct ProfileSample {
    double x;
    double y;
};

struct DeflectionProfile {
    std::vector<ProfileSample> samples;
    ProfileMethod method;
};

struct ProfileOptions {
    std::size_t points = 201;
    quadrature::Tolerances tol{};
    special::Settings settings{};
};

/// Deflection sampled on a uniform grid over [0, L]. The quadrature variant
/// accumulates panel integrals from the clamped end toward the tip.
DeflectionProfile deflection_profile(const LoadCase& load, const RodProperties& rod,
                                     ProfileMethod method, const ProfileOptions& options = {});

}  // namespace hyperrod::elastica

namespace hyperrod::quadrature {

/// y(x) = -int_x^L H / sqrt(EJ^2 - H^2). Throws InfeasibleLoad when |H| >= EJ
/// on [x, L] and NearCriticalLoad when the margin (EJ - |H|)/EJ < 1e-6.
double integrate_deflection(const elastica::LoadCase& load, const elastica::RodProperties& rod,
                            double x, const Tolerances& tol = {});

/// Same integral between two sections, lo <= hi.
Result integrate_deflection_segment(const elastica::LoadCase& load,
                                    const elastica::RodProperties& rod, double lo, double hi,
                                    const Tolerances& tol = {});

}  // namespace hyperrod::quadrature
