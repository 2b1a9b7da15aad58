#include "fracext/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "fracext/extension.hpp"
#include "fracext/io.hpp"
#include "fracext/spectral_model.hpp"
#include "fracext/variational.hpp"
#include "fracext/verify.hpp"

namespace fracext {

namespace {

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raw text settings; numbers stay as text so file and flag values go through
// the same parsers.
struct Settings {
  std::optional<std::string> op, u, s, sigma, lambda, grid, checks, out, tol, elements, format;
  std::optional<unsigned> threads;
  bool negative_order = false;
};

std::string json_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + json_text(v[i]);
    return out;
  }
  if (v.is_number()) return format_machine(v.get<double>());
  return v.dump();
}

Settings load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open config file " + path);
  const auto j = nlohmann::json::parse(in);
  if (!j.is_object()) throw usage_error("config file must hold a JSON object");
  Settings st;
  const std::pair<const char*, std::optional<std::string>*> keys[] = {
      {"op", &st.op},         {"u", &st.u},         {"s", &st.s},       {"sigma", &st.sigma},
      {"lambda", &st.lambda}, {"grid", &st.grid},   {"checks", &st.checks}, {"out", &st.out},
      {"tol", &st.tol},       {"elements", &st.elements}, {"format", &st.format}};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& [k, slot] : keys)
      if (it.key() == k) {
        // operator objects stay JSON so build_operator sees them verbatim
        *slot = (it.key() == "op" && it->is_object()) ? it->dump() : json_text(*it);
        known = true;
      }
    if (it.key() == "negative_order") st.negative_order = it->get<bool>(), known = true;
    if (it.key() == "threads") st.threads = it->get<unsigned>(), known = true;
    if (!known) throw usage_error("unknown config key \"" + it.key() + "\"");
  }
  return st;
}

void overlay(Settings& base, const Settings& flags) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.op, flags.op), take(base.u, flags.u), take(base.s, flags.s), take(base.sigma, flags.sigma);
  take(base.lambda, flags.lambda), take(base.grid, flags.grid), take(base.checks, flags.checks);
  take(base.out, flags.out), take(base.tol, flags.tol), take(base.elements, flags.elements);
  take(base.format, flags.format), take(base.threads, flags.threads);
  base.negative_order = base.negative_order || flags.negative_order;
}

const std::string& require(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw usage_error(std::string("missing required option --") + flag);
  return *v;
}

double single_number(const std::string& text, const char* what) {
  const auto v = parse_number_list(text);
  if (v.size() != 1) throw usage_error(std::string(what) + " takes a single number");
  return v.front();
}

Operator load_operator(const Settings& st) { return build_operator(parse_operator_spec(require(st.op, "op"))); }

ModalVector load_vector(const Settings& st, const Operator& op) {
  auto c = parse_number_list(require(st.u, "u"));
  if (c.size() != op.spectrum->size())
    throw usage_error("--u has " + std::to_string(c.size()) + " entries, operator has " +
                      std::to_string(op.spectrum->size()) + " modes");
  return ModalVector(std::move(c), op.spectrum);
}

std::size_t load_elements(const Settings& st) {
  if (!st.elements) return kDefaultElements;
  const double n = single_number(*st.elements, "--elements");
  if (n != std::floor(n) || n < 2) throw usage_error("--elements must be an integer >= 2");
  return static_cast<std::size_t>(n);
}

std::optional<double> load_tol(const Settings& st) {
  if (!st.tol) return std::nullopt;
  const double t = single_number(*st.tol, "--tol");
  if (!(t >= 0.0)) throw usage_error("--tol must be nonnegative");
  return t;
}

// Either the named file or out.
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : os_(&fallback) {
    if (path && *path != "-") {
      file_.open(*path);
      if (!file_) throw usage_error("cannot write " + *path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int cmd_apply(const Settings& st, std::ostream& out) {
  const Operator op = load_operator(st);
  const ModalVector u = load_vector(st, op);
  const double s = single_number(require(st.s, "s"), "--s");
  const ModalVector r = apply_power(u, s);
  Sink sink(st.out, out);
  *sink << "{\"s\":" << format_machine(s) << ",\"coeffs\":" << modal_json(r.coeffs)
        << ",\"norm_u\":" << format_machine(sobolev_norm(u, s))
        << ",\"norm_result\":" << format_machine(sobolev_norm(r, -s));
  if (st.sigma) {
    const double sigma = single_number(*st.sigma, "--sigma");
    *sink << ",\"sigma\":" << format_machine(sigma) << ",\"norm_u_sigma\":" << format_machine(sobolev_norm(u, sigma));
  }
  *sink << "}\n";
  return kExitOk;
}

int cmd_extend(const Settings& st, std::ostream& out) {
  const Operator op = load_operator(st);
  const ModalVector u = load_vector(st, op);
  const double s = single_number(require(st.s, "s"), "--s");
  std::vector<double> grid;
  if (st.grid) {
    grid = parse_grid_spec(*st.grid);
    if (grid.size() < 16) throw usage_error("--grid needs at least 16 points");
  } else {
    grid = default_curve_grid(*op.spectrum);
  }
  const std::string format = st.format.value_or("csv");
  if (format != "csv" && format != "json") throw usage_error("--format is csv or json");
  const ExtensionCurve c = st.negative_order ? extend_negative(u, s, grid) : extend(u, s, grid);
  Sink sink(st.out, out);
  *sink << (format == "csv" ? curve_csv(c) : curve_json(c) + "\n");
  return kExitOk;
}

std::vector<std::string> split_checks(const std::string& text) {
  std::vector<std::string> names;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ',')) {
    const auto a = part.find_first_not_of(' ');
    if (a == std::string::npos) continue;
    part = part.substr(a, part.find_last_not_of(' ') - a + 1);
    bool known = false;
    for (const auto& n : check_names()) known = known || n == part;
    if (!known) {
      std::string valid;
      for (const auto& n : check_names()) valid += (valid.empty() ? "" : ", ") + n;
      throw usage_error("unknown check \"" + part + "\"; valid checks: " + valid);
    }
    names.push_back(part);
  }
  if (names.empty()) throw usage_error("--checks is empty");
  return names;
}

int cmd_verify(const Settings& st, std::ostream& out) {
  VerifyConfig cfg;
  if (st.s) cfg.s_values = parse_number_list(*st.s);
  if (st.lambda) cfg.lambdas = parse_number_list(*st.lambda);
  if (st.checks) cfg.checks = split_checks(*st.checks);
  for (double s : cfg.s_values)
    if (!(s > 0.0) || is_integer_order(s)) throw usage_error("verify orders must be positive non-integers");
  for (double l : cfg.lambdas)
    if (!(l > 0.0)) throw usage_error("verify eigenvalues must be positive");
  cfg.tol = load_tol(st);
  if (st.threads) cfg.threads = *st.threads;
  const auto reports = run_verify(cfg);
  std::size_t passed = 0;
  double worst = 0.0;
  Sink sink(st.out, out);
  for (const auto& r : reports) {
    *sink << report_json_line(r) << '\n';
    passed += r.pass;
    if (std::isnan(r.rel_err) || r.rel_err > worst) worst = r.rel_err;
  }
  const std::size_t failed = reports.size() - passed;
  *sink << "{\"summary\":{\"total\":" << reports.size() << ",\"passed\":" << passed << ",\"failed\":" << failed
        << ",\"worst_rel_err\":" << (std::isfinite(worst) ? format_human(worst) : std::string("null")) << "}}\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_minimize(const Settings& st, std::ostream& out) {
  const Operator op = load_operator(st);
  const ModalVector u = load_vector(st, op);
  const double s = single_number(require(st.s, "s"), "--s");
  const std::size_t elements = load_elements(st);
  const double tol = load_tol(st).value_or(1e-3);
  CheckReport report;
  if (st.negative_order) {
    const auto m = minimize_negative(u, s, elements, tol);
    report = m.report;
    out << report_json_line(report) << '\n';
    out << "{\"trace\":" << modal_json(m.trace.coeffs) << "}\n";
  } else {
    report = minimize_curve(u, s, elements, tol);
    out << report_json_line(report) << '\n';
  }
  if (st.out) {
    const double lambda =
        st.lambda ? single_number(*st.lambda, "--lambda") : op.spectrum->lambda_min_positive();
    Sink sink(st.out, out);
    *sink << minimizer_csv(minimize_profile(s, lambda, elements), s);
  }
  return report.pass ? kExitOk : kExitCheckFailed;
}

void add_common(CLI::App* sub, Settings& f, std::string& config) {
  sub->add_option("--config", config, "JSON file with default settings");
  sub->add_option("--op", f.op, "operator: dirichlet:L:J, neumann:L:J, explicit:v1,v2,.., tridiagonal:d..;e.. or JSON");
  sub->add_option("--u", f.u, "modal coefficients, comma separated or JSON array");
  sub->add_option("--s", f.s, "order s");
  sub->add_option("--sigma", f.sigma, "Sobolev index for reported norms");
  sub->add_option("--lambda", f.lambda, "eigenvalue(s)");
  sub->add_option("--grid", f.grid, "y_min:y_max:n (geometric)");
  sub->add_option("--checks", f.checks, "comma separated check names");
  sub->add_option("--out", f.out, "output file");
  sub->add_option("--tol", f.tol, "tolerance override");
  sub->add_option("--elements", f.elements, "finite elements per mode");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--threads", f.threads, "worker threads");
  sub->add_flag("--negative-order", f.negative_order, "use the negative-order extension");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fracext: fractional powers and Bessel-kernel extensions"};
  app.name("fracext");
  app.require_subcommand(1);
  Settings flags;
  std::string config;
  const char* names[] = {"apply", "extend", "verify", "minimize"};
  const char* blurbs[] = {"apply L^s to a modal vector", "tabulate the extension curve",
                          "run the verification suite", "variational minimum via finite elements"};
  for (int i = 0; i < 4; ++i) add_common(app.add_subcommand(names[i], blurbs[i]), flags, config);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fracext: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Settings st;
    if (!config.empty()) st = load_config(config);
    overlay(st, flags);
    if (cmd == "apply") return cmd_apply(st, out);
    if (cmd == "extend") return cmd_extend(st, out);
    if (cmd == "verify") return cmd_verify(st, out);
    return cmd_minimize(st, out);
  } catch (const nlohmann::json::exception& e) {
    err << "fracext " << cmd << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "fracext " << cmd << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fracext " << cmd << ": " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace fracext
