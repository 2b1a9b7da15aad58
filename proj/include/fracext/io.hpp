#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fracext/extension.hpp"
#include "fracext/weighted_calculus.hpp"

namespace fracext {

std::string format_machine(double v);  // 17 significant digits
std::string format_human(double v);    // 6 significant digits

// "1,0,1" or "[1, 0, 1]"
std::vector<double> parse_number_list(const std::string& text);

// Shorthand "dirichlet:L:J", "neumann:L:J", "explicit:1,4,9",
// "tridiagonal:d1,d2,..;e1,.." (L may be "pi") or a JSON object.
nlohmann::json parse_operator_spec(const std::string& text);

// "y_min:y_max:n"
std::vector<double> parse_grid_spec(const std::string& text);

std::string curve_csv(const ExtensionCurve& curve);
std::string curve_json(const ExtensionCurve& curve);
std::string modal_json(const std::vector<double>& coeffs);
std::string report_json_line(const CheckReport& r);

}  // namespace fracext
