#include "fracext/io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fracext {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& raw) {
  const std::string t = trim(raw);
  if (t == "pi") return std::numbers::pi;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: \"" + t + "\"");
  }
  if (pos != t.size()) throw std::invalid_argument("not a number: \"" + t + "\"");
  return v;
}

std::string json_number(double v) { return std::isfinite(v) ? format_machine(v) : "null"; }

}  // namespace

std::string format_machine(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_human(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '[') {
    const auto j = nlohmann::json::parse(t);
    return j.get<std::vector<double>>();
  }
  if (t.empty()) throw std::invalid_argument("empty number list");
  std::vector<double> out;
  for (const auto& part : split(t, ',')) out.push_back(parse_number(part));
  return out;
}

nlohmann::json parse_operator_spec(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') return nlohmann::json::parse(t);
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("operator shorthand needs kind:params, got \"" + t + "\"");
  const std::string kind = t.substr(0, colon);
  const std::string rest = t.substr(colon + 1);
  if (kind == "dirichlet" || kind == "neumann") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw std::invalid_argument(kind + " shorthand is " + kind + ":L:J");
    const double modes = parse_number(parts[1]);
    if (modes != std::floor(modes) || modes < 1) throw std::invalid_argument("mode count must be a positive integer");
    return {{"kind", kind + "_laplacian_1d"}, {"length", parse_number(parts[0])}, {"modes", static_cast<long long>(modes)}};
  }
  if (kind == "explicit") return {{"kind", "explicit_eigenvalues"}, {"values", parse_number_list(rest)}};
  if (kind == "tridiagonal") {
    const auto parts = split(rest, ';');
    nlohmann::json j{{"kind", "tridiagonal"}, {"diag", parse_number_list(parts[0])}};
    j["offdiag"] = parts.size() > 1 && !trim(parts[1]).empty() ? parse_number_list(parts[1]) : std::vector<double>{};
    return j;
  }
  throw std::invalid_argument("unknown operator shorthand \"" + kind + "\" (dirichlet, neumann, explicit, tridiagonal)");
}

std::vector<double> parse_grid_spec(const std::string& text) {
  const auto parts = split(trim(text), ':');
  if (parts.size() != 3) throw std::invalid_argument("grid is y_min:y_max:n");
  const double y_min = parse_number(parts[0]), y_max = parse_number(parts[1]);
  const double n = parse_number(parts[2]);
  if (n != std::floor(n) || n < 1) throw std::invalid_argument("grid point count must be a positive integer");
  if (!(y_min > 0.0) || !(y_max > y_min)) throw std::invalid_argument("grid needs 0 < y_min < y_max");
  if (n == 1) return {y_min};
  return geometric_grid_points(y_min, y_max, static_cast<std::size_t>(n));
}

std::string curve_csv(const ExtensionCurve& c) {
  std::ostringstream os;
  os << "# s=" << format_machine(c.params.s) << ", b=" << format_machine(c.params.b)
     << ", d_s=" << format_machine(c.params.d_s) << '\n';
  os << 'y';
  for (std::size_t j = 0; j < c.modes(); ++j) os << ",mode_" << j + 1;
  os << '\n';
  for (std::size_t i = 0; i < c.points(); ++i) {
    os << format_machine(c.grid[i]);
    for (std::size_t j = 0; j < c.modes(); ++j) os << ',' << format_machine(c(j, i));
    os << '\n';
  }
  return os.str();
}

std::string curve_json(const ExtensionCurve& c) {
  std::ostringstream os;
  os << "{\"s\":" << json_number(c.params.s) << ",\"b\":" << json_number(c.params.b) << ",\"grid\":[";
  for (std::size_t i = 0; i < c.points(); ++i) os << (i ? "," : "") << json_number(c.grid[i]);
  os << "],\"values\":[";
  for (std::size_t j = 0; j < c.modes(); ++j) {
    os << (j ? "," : "") << '[';
    for (std::size_t i = 0; i < c.points(); ++i) os << (i ? "," : "") << json_number(c(j, i));
    os << ']';
  }
  os << "]}";
  return os.str();
}

std::string modal_json(const std::vector<double>& coeffs) {
  std::string out = "[";
  for (std::size_t j = 0; j < coeffs.size(); ++j) out += (j ? "," : "") + json_number(coeffs[j]);
  return out + "]";
}

std::string report_json_line(const CheckReport& r) {
  std::ostringstream os;
  os << "{\"name\":" << nlohmann::json(r.name).dump() << ",\"lhs\":" << json_number(r.lhs)
     << ",\"rhs\":" << json_number(r.rhs) << ",\"rel_err\":" << json_number(r.rel_err)
     << ",\"tol\":" << json_number(r.tol) << ",\"pass\":" << (r.pass ? "true" : "false") << '}';
  return os.str();
}

}  // namespace fracext
