#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fracext/io.hpp"

using namespace fracext;

TEST_CASE("number formatting") {
  CHECK(format_machine(0.1) == "0.10000000000000001");
  CHECK(format_machine(2.0) == "2");
  CHECK(std::stod(format_machine(std::numbers::pi)) == std::numbers::pi);
  CHECK(format_human(std::numbers::pi) == "3.14159");
  CHECK(format_human(1e-7) == "1e-07");
}

TEST_CASE("number lists") {
  CHECK(parse_number_list("1,0,3") == std::vector<double>{1, 0, 3});
  CHECK(parse_number_list(" [1, 0.5, -2e-1] ") == std::vector<double>{1, 0.5, -0.2});
  CHECK(parse_number_list("pi")[0] == std::numbers::pi);
  CHECK(parse_number_list("7") == std::vector<double>{7});
  CHECK_THROWS_AS(parse_number_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_number_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number_list("1,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number_list("1,2,"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number_list("1.5abc"), std::invalid_argument);
}

TEST_CASE("operator shorthand") {
  const auto d = parse_operator_spec("dirichlet:pi:3");
  CHECK(d["kind"] == "dirichlet_laplacian_1d");
  CHECK(d["length"].get<double>() == std::numbers::pi);
  CHECK(d["modes"].get<int>() == 3);
  CHECK(parse_operator_spec("neumann:2:4")["kind"] == "neumann_laplacian_1d");
  const auto e = parse_operator_spec("explicit:1,4,9");
  CHECK(e["kind"] == "explicit_eigenvalues");
  CHECK(e["values"].get<std::vector<double>>() == std::vector<double>{1, 4, 9});
  const auto t = parse_operator_spec("tridiagonal:2,2,2;-1,-1");
  CHECK(t["diag"].get<std::vector<double>>() == std::vector<double>{2, 2, 2});
  CHECK(t["offdiag"].get<std::vector<double>>() == std::vector<double>{-1, -1});
  CHECK(parse_operator_spec("tridiagonal:3")["offdiag"].empty());
  CHECK(parse_operator_spec(R"({"kind": "explicit_eigenvalues", "values": [1]})")["values"][0] == 1);
  CHECK_THROWS_AS(parse_operator_spec("dirichlet:pi"), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator_spec("dirichlet:pi:2.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator_spec("laplace:1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator_spec("explicit"), std::invalid_argument);
}

TEST_CASE("grid shorthand") {
  const auto g = parse_grid_spec("0.01:10:16");
  REQUIRE(g.size() == 16);
  CHECK(g.front() == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(g.back() == doctest::Approx(10.0).epsilon(1e-14));
  for (std::size_t i = 2; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(g[1] / g[0]).epsilon(1e-12));
  CHECK(parse_grid_spec("0.5:1:1") == std::vector<double>{0.5});
  CHECK_THROWS(parse_grid_spec("0:1:20"));
  CHECK_THROWS(parse_grid_spec("2:1:20"));
  CHECK_THROWS(parse_grid_spec("1:2"));
  CHECK_THROWS(parse_grid_spec("1:2:0"));
}

TEST_CASE("curve CSV and JSON") {
  const ModalVector u(std::vector<double>{1.0, 2.0}, make_spectrum({1.0, 4.0}, "test"));
  const ExtensionCurve c = extend(u, 0.5, {0.5, 1.0});
  const std::string csv = curve_csv(c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# s=0.5, b=0, d_s=" + format_machine(c.params.d_s));
  std::getline(in, line);
  CHECK(line == "y,mode_1,mode_2");
  std::getline(in, line);
  CHECK(line == "0.5," + format_machine(c(0, 0)) + "," + format_machine(c(1, 0)));
  CHECK(std::abs(c(1, 1) - 2.0 * std::exp(-2.0)) < 1e-14);
  const auto j = nlohmann::json::parse(curve_json(c));
  CHECK(j["s"] == 0.5);
  CHECK(j["grid"].size() == 2);
  CHECK(j["values"][1][1].get<double>() == c(1, 1));
  CHECK(modal_json({1.0, 0.5}) == "[1,0.5]");
  CHECK(modal_json({NAN}) == "[null]");
}

TEST_CASE("report lines") {
  CheckReport r{"energy(s=0.5)", 2.0, 2.0, 0.0, 1e-6, true};
  CHECK(report_json_line(r) == R"j({"name":"energy(s=0.5)","lhs":2,"rhs":2,"rel_err":0,"tol":9.9999999999999995e-07,"pass":true})j");
  r.lhs = NAN;
  r.pass = false;
  const auto j = nlohmann::json::parse(report_json_line(r));
  CHECK(j["lhs"].is_null());
  CHECK(j["pass"] == false);
}
