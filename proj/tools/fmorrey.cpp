// fmorrey: command-line front end over the fracmorrey C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracmorrey/fracmorrey.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitComputation = 2;

int exit_code(fm_status s) {
  switch (s) {
    case FM_OK:
      return kExitOk;
    case FM_ERR_VALIDATION:
    case FM_ERR_ARGUMENT:
      return kExitValidation;
    default:
      return kExitComputation;
  }
}

struct Output {
  std::string format = "json";
  std::string out;
  bool print = false;
  bool require_finite = false;
};

struct GridFlags {
  int dimension = 1;
  double half_width = 4.0;
  int cells = 1024;
};

void add_output(CLI::App* c, Output& o) {
  c->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  c->add_option("--out", o.out, "Write the report to this file");
  c->add_flag("--print", o.print, "Print the full report to stdout");
  c->add_flag("--require-finite", o.require_finite, "Exit 2 when the headline value is infinite");
}

void add_grid(CLI::App* c, GridFlags& g) {
  c->add_option("--dimension,-n", g.dimension, "Space dimension")->check(CLI::Range(1, 3));
  c->add_option("--half-width", g.half_width, "Box is [-h, h]^n");
  c->add_option("--cells", g.cells, "Cells per axis");
}

void put_grid(Json& j, const GridFlags& g) {
  j["dimension"] = g.dimension;
  j["half_width"] = g.half_width;
  j["cells"] = g.cells;
}

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

bool write_text(const std::string& path, const std::string& text) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

std::string verdict(const fm_result* r) { return fm_result_finite(r) ? "finite" : "infinite"; }

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "none";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Runs one request and handles printing, writing and --require-finite.
int run_request(const std::string& command, const Json& request, const Output& o) {
  fm_result* r = nullptr;
  const fm_status s = fm_run(command.c_str(), request.dump().c_str(), &r);
  if (s != FM_OK) {
    std::cerr << "error: " << fm_last_error() << "\n";
    return exit_code(s);
  }
  std::cout << "value: " << fmt(fm_result_value(r)) << "\n";
  std::cout << "verdict: " << verdict(r) << "\n";
  if (o.print) std::cout << (o.format == "csv" ? fm_result_csv(r) : fm_result_json(r));
  int code = kExitOk;
  if (!o.out.empty()) {
    const fm_status w = fm_result_write(r, o.format.c_str(), o.out.c_str());
    if (w != FM_OK) {
      std::cerr << "error: " << fm_last_error() << "\n";
      code = exit_code(w);
    } else {
      std::cout << "wrote " << o.out << "\n";
    }
  }
  if (code == kExitOk && o.require_finite && !fm_result_finite(r)) {
    std::cerr << "error: value is not finite\n";
    code = kExitComputation;
  }
  fm_result_free(r);
  return code;
}

int run_verify(const std::string& experiment, const std::string& config_path, const std::string& out_dir,
               const Output& o) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file: " << config_path << "\n";
    return kExitValidation;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  Json req;
  req["config"] = ss.str();
  if (!experiment.empty()) req["experiment"] = experiment;

  fm_result* r = nullptr;
  const fm_status s = fm_run("verify", req.dump().c_str(), &r);
  if (s != FM_OK) {
    std::cerr << "error: " << fm_last_error() << "\n";
    return exit_code(s);
  }
  const Json res = Json::parse(fm_result_json(r));
  const bool pass = fm_result_finite(r) != 0;
  fm_result_free(r);

  const std::string dir = out_dir.empty() ? res["output_dir"].get<std::string>() : out_dir;
  const std::string format = o.format.empty() ? res["format"].get<std::string>() : o.format;
  for (const auto& rep : res["reports"]) {
    const std::string id = rep["id"].get<std::string>();
    char* text = nullptr;
    if (fm_render(rep.dump().c_str(), format.c_str(), &text) != FM_OK) {
      std::cerr << "error: " << fm_last_error() << "\n";
      return kExitComputation;
    }
    const std::string path = (std::filesystem::path(dir) / (id + "." + format)).string();
    const bool ok = write_text(path, text);
    fm_string_free(text);
    if (!ok) return kExitComputation;
    const auto& st = rep["stats"];
    std::cout << id << ": " << (rep["pass"].get<bool>() ? "pass" : "FAIL") << "  spread "
              << (st["spread"].is_null() ? std::string("inf") : fmt(st["spread"].get<double>())) << "  drift "
              << (rep["drift"].is_null() ? std::string("inf") : fmt(rep["drift"].get<double>())) << "  -> " << path
              << "\n";
  }
  if (o.require_finite && !pass) return kExitComputation;
  return kExitOk;
}

int run_report(const std::string& input, const Output& o) {
  std::ifstream in(input, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read report: " << input << "\n";
    return kExitValidation;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  char* text = nullptr;
  const fm_status s = fm_render(ss.str().c_str(), o.format.c_str(), &text);
  if (s != FM_OK) {
    std::cerr << "error: " << fm_last_error() << "\n";
    return exit_code(s);
  }
  int code = kExitOk;
  if (o.out.empty()) std::cout << text;
  else if (!write_text(o.out, text)) code = kExitComputation;
  fm_string_free(text);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional maximal and Riesz operators on weighted Morrey spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fm_version()));

  Output out;
  GridFlags grid;

  // maximal / riesz
  std::string function;
  double alpha = 0.5;
  std::optional<std::string> point;
  std::string method = "direct";
  auto* maximal = app.add_subcommand("maximal", "Fractional maximal function M_alpha f");
  auto* riesz = app.add_subcommand("riesz", "Riesz potential I_alpha f");
  for (auto* c : {maximal, riesz}) {
    c->add_option("--function,-f", function, "Function descriptor, e.g. ind(ball(0, 1))")->required();
    c->add_option("--alpha", alpha, "Order alpha in (0, n)")->required();
    c->add_option("--x", point, "Evaluate at one point (comma separated); default is the whole field");
    add_grid(c, grid);
    add_output(c, out);
  }
  riesz->add_option("--method", method, "direct or fft")->check(CLI::IsMember({"direct", "fft"}));

  // norm
  std::string kind = "lp", weight = "1", omega;
  std::optional<std::string> p_text, region;
  std::optional<double> q, lambda, beta;
  auto* norm = app.add_subcommand("norm", "Weighted Lebesgue, weak Lorentz and Morrey norms");
  norm->add_option("--kind", kind, "lp, weak_lorentz, morrey, central_morrey, classical_morrey")
      ->check(CLI::IsMember({"lp", "weak_lorentz", "morrey", "central_morrey", "classical_morrey"}));
  norm->add_option("--function,-f", function, "Function descriptor")->required();
  norm->add_option("--weight,-w", weight, "Weight descriptor");
  norm->add_option("--p", p_text, "Exponent p (or inf)");
  norm->add_option("--q", q, "Weak Lorentz exponent");
  norm->add_option("--lambda", lambda, "Classical Morrey parameter");
  norm->add_option("--omega", omega, "Morrey radial weight");
  norm->add_option("--region", region, "Restrict the Lp norm, e.g. ball(0, 1)");
  add_grid(norm, grid);
  add_output(norm, out);

  // weight-class
  std::string cls;
  std::optional<double> p;
  int levels = 3, seed = 1, depth = 4;
  auto* wclass = app.add_subcommand("weight-class", "Muckenhoupt, doubling and reverse doubling constants");
  wclass->add_option("class", cls, "ap, a1, ainf, doubling or rd")
      ->required()
      ->check(CLI::IsMember({"ap", "a1", "ainf", "doubling", "rd"}));
  wclass->add_option("--weight,-w", weight, "Weight descriptor");
  wclass->add_option("--p", p, "A_p exponent");
  wclass->add_option("--beta", beta, "Reverse doubling order");
  wclass->add_option("--levels", levels, "Refinement levels");
  wclass->add_option("--seed", seed, "Seed for sampled families");
  wclass->add_option("--depth", depth, "Nesting depth for reverse doubling pairs");
  add_grid(wclass, grid);
  add_output(wclass, out);

  // condition
  std::string cond_id, omega_x = "1", u, u0, u1, u2, v1 = "1", v2;
  std::vector<double> centers;
  auto* condition = app.add_subcommand("condition", "Boundedness conditions on radial data");
  condition->add_option("id", cond_id, "gm, cor52, thm61, thm64 or thm51")
      ->required()
      ->check(CLI::IsMember({"gm", "cor52", "thm61", "thm64", "thm51"}));
  condition->add_option("--omega", omega, "Radial weight omega(r)");
  condition->add_option("--omega-x", omega_x, "Center factor of omega(x, r) (thm61)");
  condition->add_option("--weight,-w", weight, "Weight v");
  condition->add_option("--p", p, "Exponent p");
  condition->add_option("--alpha", alpha, "Order alpha");
  condition->add_option("--dimension,-n", grid.dimension, "Space dimension")->check(CLI::Range(1, 3));
  condition->add_option("--u", u, "Radial function u (cor52)");
  condition->add_option("--beta", beta, "Exponent beta (cor52)");
  condition->add_option("--u0", u0, "u0 (thm51)");
  condition->add_option("--u1", u1, "u1 (thm51)");
  condition->add_option("--u2", u2, "u2 (thm51)");
  condition->add_option("--v1", v1, "v1 (thm51)");
  condition->add_option("--v2", v2, "v2 (thm51)");
  condition->add_option("--center", centers, "Centers for thm61 (1D)");
  add_output(condition, out);

  // oracle
  int shells = 4, mesh = 32, max_shells = 6;
  double first_shell = 1.0, shell_ratio = 4.0;
  auto* oracle = app.add_subcommand("oracle", "Best constant lower bound by shell optimisation");
  oracle->add_option("--u0", u0)->required();
  oracle->add_option("--u1", u1)->required();
  oracle->add_option("--u2", u2)->required();
  oracle->add_option("--v1", v1);
  oracle->add_option("--v2", v2)->required();
  oracle->add_option("--shells", shells, "Number of active shells k");
  oracle->add_option("--mesh", mesh, "Mass mesh (masses are multiples of 1/mesh)");
  oracle->add_option("--max-shells", max_shells, "Shell positions available");
  oracle->add_option("--first-shell", first_shell, "Radius of the first shell");
  oracle->add_option("--shell-ratio", shell_ratio, "Ratio between shell radii");
  add_output(oracle, out);

  // verify
  std::string experiment, config_path, out_dir;
  Output vout;
  vout.format.clear();
  auto* verify = app.add_subcommand("verify", "Run equivalence experiments from a config file");
  verify->add_option("experiment", experiment, "Experiment id (default: every experiment in the config)");
  verify->add_option("--config,-c", config_path, "Config file")->required();
  verify->add_option("--out-dir", out_dir, "Report directory (default: config, then $FMORREY_OUT)");
  verify->add_option("--format", vout.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--require-finite", vout.require_finite, "Exit 2 when an experiment fails");

  // report
  std::string input;
  auto* report = app.add_subcommand("report", "Convert a JSON report to another format");
  report->add_option("input", input, "JSON report file")->required();
  report->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--out", out.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\n" << app.help();
    return kExitValidation;
  }

  Json req;
  if (maximal->parsed() || riesz->parsed()) {
    const std::string cmd = maximal->parsed() ? "maximal" : "riesz";
    req["function"] = function;
    req["alpha"] = alpha;
    put_grid(req, grid);
    if (point) req["x"] = *point;
    if (riesz->parsed()) req["method"] = method;
    return run_request(cmd, req, out);
  }
  if (norm->parsed()) {
    req["kind"] = kind;
    req["function"] = function;
    req["weight"] = weight;
    if (p_text) {
      if (*p_text == "inf") req["p"] = "inf";
      else {
        try {
          req["p"] = std::stod(*p_text);
        } catch (const std::exception&) {
          std::cerr << "error: --p must be a number or inf\n";
          return kExitValidation;
        }
      }
    }
    put(req, "q", q);
    put(req, "lambda", lambda);
    if (!omega.empty()) req["omega"] = omega;
    put(req, "region", region);
    put_grid(req, grid);
    return run_request("norm", req, out);
  }
  if (wclass->parsed()) {
    req["class"] = cls;
    req["weight"] = weight;
    put(req, "p", p);
    put(req, "beta", beta);
    req["levels"] = levels;
    req["seed"] = seed;
    req["depth"] = depth;
    req["dimension"] = grid.dimension;
    req["half_width"] = grid.half_width;
    if (grid.cells != 1024) req["cells"] = grid.cells;
    return run_request("weight-class", req, out);
  }
  if (condition->parsed()) {
    req["id"] = cond_id;
    req["dimension"] = grid.dimension;
    if (!omega.empty()) req["omega"] = omega;
    req["omega_x"] = omega_x;
    req["weight"] = weight;
    put(req, "p", p);
    req["alpha"] = alpha;
    if (!u.empty()) req["u"] = u;
    put(req, "beta", beta);
    if (!u0.empty()) req["u0"] = u0;
    if (!u1.empty()) req["u1"] = u1;
    if (!u2.empty()) req["u2"] = u2;
    req["v1"] = v1;
    if (!v2.empty()) req["v2"] = v2;
    if (!centers.empty()) req["centers"] = centers;
    return run_request("condition", req, out);
  }
  if (oracle->parsed()) {
    req["u0"] = u0;
    req["u1"] = u1;
    req["u2"] = u2;
    req["v1"] = v1;
    req["v2"] = v2;
    req["shells"] = shells;
    req["mesh"] = mesh;
    req["max_shells"] = max_shells;
    req["first_shell"] = first_shell;
    req["shell_ratio"] = shell_ratio;
    return run_request("oracle", req, out);
  }
  if (verify->parsed()) return run_verify(experiment, config_path, out_dir, vout);
  if (report->parsed()) return run_report(input, out);
  return kExitValidation;
}
