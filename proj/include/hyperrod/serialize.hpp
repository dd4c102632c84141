#pragma once

#include <string>

#include <json.hpp>

#include "hyperrod/elastica.hpp"
#include "hyperrod/redundancy.hpp"
#include "hyperrod/series.hpp"

namespace hyperrod::io {

/// "hyperrod <version>"; appears once per output, never inside data rows.
std::string generator();

/// 17 significant digits, '.' separator, no grouping. Round-trips doubles.
std::string format_double(double v);

/// {problem, method, X, units, X_N | X_Nm, X_linearized, residual, trace,
///  deviation_pct, n_terms, generator}. residual is null when undefined.
nlohmann::json to_json(const redundancy::RedundancySolution& s);
redundancy::RedundancySolution solution_from_json(const nlohmann::json& j);

/// [{power, num, den}] for the nonzero coefficients; num/den as decimal strings.
nlohmann::json to_json(const series::PowerSeries<series::Rational>& s);

nlohmann::json to_json(const redundancy::MaxMomentReport& r);

/// Parse "p/q" or "p" into an exact rational.
series::Rational parse_rational(const std::string& text);

}  // namespace hyperrod::io
