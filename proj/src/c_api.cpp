#include "fracmorrey/fracmorrey.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "fracmorrey/conditions.hpp"
#include "fracmorrey/config.hpp"
#include "fracmorrey/error.hpp"
#include "fracmorrey/grammar.hpp"
#include "fracmorrey/harness.hpp"
#include "fracmorrey/norms.hpp"
#include "fracmorrey/operators.hpp"
#include "fracmorrey/report.hpp"
#include "fracmorrey/weights.hpp"

struct fm_result {
  fracmorrey::Json report;
  std::string json;
  std::string csv;
  bool finite = true;
  double value = std::numeric_limits<double>::quiet_NaN();
};

namespace {

using namespace fracmorrey;

constexpr double kInf = std::numeric_limits<double>::infinity();

thread_local std::string g_last_error;

fm_status fail(fm_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
fm_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const ValidationError& e) {
    return fail(FM_ERR_VALIDATION, e.what());
  } catch (const Json::exception& e) {
    return fail(FM_ERR_VALIDATION, std::string("request: ") + e.what());
  } catch (const ComputationError& e) {
    return fail(FM_ERR_COMPUTATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FM_ERR_COMPUTATION, "out of memory");
  } catch (const std::exception& e) {
    return fail(FM_ERR_INTERNAL, e.what());
  }
}

class Request {
 public:
  explicit Request(const Json& j) : j_(j) {
    if (!j_.is_object()) throw ValidationError("request must be a JSON object");
  }
  bool has(const char* k) const { return j_.contains(k) && !j_[k].is_null(); }
  double num(const char* k) const {
    if (!has(k)) throw ValidationError(std::string("request is missing '") + k + "'");
    if (!j_[k].is_number()) throw ValidationError(std::string("'") + k + "' must be a number");
    return j_[k].get<double>();
  }
  double num(const char* k, double def) const { return has(k) ? num(k) : def; }
  int integer(const char* k, int def) const {
    if (!has(k)) return def;
    if (!j_[k].is_number_integer()) throw ValidationError(std::string("'") + k + "' must be an integer");
    return j_[k].get<int>();
  }
  std::string str(const char* k) const {
    if (!has(k)) throw ValidationError(std::string("request is missing '") + k + "'");
    if (!j_[k].is_string()) throw ValidationError(std::string("'") + k + "' must be a string");
    return j_[k].get<std::string>();
  }
  std::string str(const char* k, const std::string& def) const { return has(k) ? str(k) : def; }
  Point point(const char* k, int n) const {
    const Json& v = j_[k];
    Point p;
    if (v.is_number()) p.assign(n, v.get<double>());
    else if (v.is_array()) p = v.get<std::vector<double>>();
    else if (v.is_string()) p = parse_point(v.get<std::string>());
    else throw ValidationError(std::string("'") + k + "' must be a point");
    if (p.size() == 1 && n > 1) p.assign(n, p[0]);
    if (static_cast<int>(p.size()) != n) throw ValidationError(std::string("'") + k + "' has the wrong dimension");
    return p;
  }
  const Json& raw(const char* k) const { return j_[k]; }

  Domain domain(double half_width = 4.0, int cells = 1024) const {
    const int n = integer("dimension", 1);
    require(n >= 1 && n <= 3, "dimension must be 1, 2 or 3");
    const double hw = num("half_width", half_width);
    require(hw > 0.0, "half_width must be positive");
    const int c = integer("cells", cells);
    require(c >= 1, "cells must be positive");
    return Domain(std::vector<Interval>(n, Interval{-hw, hw}), c);
  }
  RadialFunction radial(const char* k, const char* def = nullptr) const {
    const std::string text = has(k) ? str(k) : (def ? def : str(k));
    if (text == "0" || text == "zero()") return RadialFunction::constant(0.0);
    return RadialFunction::from_weight(parse_weight(text));
  }
  WeightDescriptor weight(const char* k, const char* def) const { return parse_weight(str(k, def)); }

 private:
  const Json& j_;
};

Json centers_json(const Domain& d) {
  Json c = Json::array();
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    const Point x = d.center(i);
    if (x.size() == 1) c.push_back(number(x[0]));
    else {
      Json a = Json::array();
      for (double v : x) a.push_back(number(v));
      c.push_back(a);
    }
  }
  return c;
}

void set_headline(fm_result& r, double value, bool infinite) {
  r.value = infinite ? kInf : value;
  r.finite = !infinite && std::isfinite(value);
}

void run_operator(const std::string& cmd, const Request& q, fm_result& res) {
  const Domain d = q.domain();
  const double alpha = q.num("alpha");
  const FunctionDescriptor f = parse_function(q.str("function"));
  const GridFunction fs = sample(f, d);
  Json& j = res.report;
  j["operator"] = cmd;
  j["function"] = to_string(f);
  j["alpha"] = number(alpha);
  j["cells"] = d.cells_per_axis();
  if (q.has("x")) {
    const Point x = q.point("x", d.dimension());
    const double v = cmd == "maximal" ? fractional_maximal(fs, alpha, x) : riesz_potential(fs, alpha, x);
    j["x"] = Json::array();
    for (double c : x) j["x"].push_back(number(c));
    j["value"] = number(v);
    set_headline(res, v, !std::isfinite(v));
    return;
  }
  GridFunction out = GridFunction::zeros(d);
  if (cmd == "maximal") {
    out = fractional_maximal_field(fs, alpha);
  } else {
    const std::string method = q.str("method", "direct");
    if (method == "direct") out = riesz_potential_direct(fs, alpha);
    else if (method == "fft") out = riesz_potential_fft(fs, alpha);
    else throw ValidationError("method must be direct or fft");
    j["method"] = method;
  }
  j["centers"] = centers_json(d);
  Json vals = Json::array();
  double mx = 0.0;
  for (double v : out.values) {
    vals.push_back(number(v));
    mx = std::max(mx, v);
  }
  j["values"] = vals;
  j["max"] = number(mx);
  set_headline(res, mx, !std::isfinite(mx));
}

void run_norm(const Request& q, fm_result& res) {
  const Domain d = q.domain();
  const std::string kind = q.str("kind", "lp");
  const FunctionDescriptor f = parse_function(q.str("function"));
  const WeightDescriptor v = q.weight("weight", "1");
  const GridFunction fs = sample(f, d);
  const GridFunction vs = sample_weight(v, d);
  Json& j = res.report;
  j["norm"] = kind;
  j["function"] = to_string(f);
  j["weight"] = to_string(v);
  double value = 0.0;
  if (kind == "lp") {
    const double p = q.has("p") && q.raw("p").is_string() && q.str("p") == "inf" ? kInf : q.num("p");
    j["p"] = number(p);
    if (q.has("region")) {
      const Shape s = parse_shape(q.str("region"));
      const Region reg = region_cells(d, s.kind, s.center_point(d.dimension()), s.radius);
      j["region"] = to_string(s);
      value = weighted_lp_norm(fs, p, reg, vs);
    } else {
      value = weighted_lp_norm(fs, p, vs);
    }
  } else if (kind == "weak_lorentz") {
    const double qq = q.num("q");
    j["q"] = number(qq);
    value = weak_lorentz_norm(fs, qq, vs);
  } else if (kind == "morrey" || kind == "central_morrey") {
    const double p = q.num("p");
    const WeightDescriptor om = q.weight("omega", "1");
    j["p"] = number(p);
    j["omega"] = to_string(om);
    const RadialWeight omega(om);
    const MorreyResult m =
        kind == "morrey" ? generalized_weighted_morrey(fs, p, omega, vs) : central_morrey(fs, p, omega, vs);
    value = m.value;
    Json am;
    am["x"] = Json::array();
    for (double c : m.x) am["x"].push_back(number(c));
    am["r"] = number(m.r);
    j["argmax"] = am;
  } else if (kind == "classical_morrey") {
    const double p = q.num("p"), lambda = q.num("lambda");
    j["p"] = number(p);
    j["lambda"] = number(lambda);
    value = morrey_norm(fs, p, lambda);
  } else {
    throw ValidationError("unknown norm kind: " + kind);
  }
  j["value"] = number(value);
  j["infinite"] = !std::isfinite(value);
  set_headline(res, value, !std::isfinite(value));
}

void run_weight_class(const Request& q, fm_result& res) {
  const std::string cls = q.str("class");
  const WeightDescriptor v = q.weight("weight", "1");
  WeightFamily fam;
  fam.dimension = q.integer("dimension", 1);
  require(fam.dimension >= 1 && fam.dimension <= 3, "dimension must be 1, 2 or 3");
  const int levels = q.integer("levels", 3);
  ClassReport rep;
  if (cls == "ap") rep = ap_constant(v, q.num("p"), fam, levels);
  else if (cls == "a1") rep = a1_check(v, q.domain(4.0, 64), levels);
  else if (cls == "ainf") rep = ainf_estimate(v, fam, static_cast<std::uint64_t>(q.integer("seed", 1)));
  else if (cls == "doubling") rep = doubling_constant(v, fam, levels);
  else if (cls == "rd") rep = rd_constant(v, q.num("beta"), fam, q.integer("depth", 4), levels);
  else throw ValidationError("unknown weight class: " + cls + " (ap, a1, ainf, doubling, rd)");
  res.report = to_json(rep);
  res.report["weight"] = to_string(v);
  set_headline(res, rep.constant, rep.infinite);
}

RadialGrid condition_grid(const Request& q) {
  if (!q.has("grid")) return default_condition_grid();
  const Json& g = q.raw("grid");
  Request gq(g);
  return RadialGrid(gq.num("r_min"), gq.num("r_max"), gq.num("ratio"));
}

void run_condition(const Request& q, fm_result& res) {
  const std::string id = q.str("id");
  const RadialGrid grid = condition_grid(q);
  const int n = q.integer("dimension", 1);
  ConditionReport rep;
  if (id == "gm") {
    rep = gm_condition(q.radial("omega"), n, q.num("p"), q.num("alpha"), grid);
  } else if (id == "cor52") {
    rep = cor52_condition(q.radial("u"), q.num("beta"), grid);
  } else if (id == "thm64") {
    rep = thm64_condition(q.radial("omega"), q.weight("weight", "1"), n, q.num("p"), q.num("alpha"), grid);
  } else if (id == "thm61") {
    std::vector<Point> centers;
    if (q.has("centers")) {
      for (const auto& c : q.raw("centers")) {
        Point p = c.is_array() ? c.get<std::vector<double>>() : Point{c.get<double>()};
        if (p.size() == 1 && n > 1) p.assign(n, p[0]);
        centers.push_back(p);
      }
    } else {
      centers.emplace_back(n, 0.0);
    }
    rep = thm61_condition(q.radial("omega"), q.weight("omega_x", "1"), q.weight("weight", "1"), n, q.num("p"),
                          q.num("alpha"), centers, grid);
  } else if (id == "thm51") {
    rep = theorem51_I(q.radial("u0"), q.radial("u1"), q.radial("u2"), q.radial("v1", "1"), q.radial("v2"), grid);
  } else {
    throw ValidationError("unknown condition: " + id + " (gm, cor52, thm61, thm64, thm51)");
  }
  res.report = to_json(rep);
  set_headline(res, rep.value, rep.infinite);
}

void run_oracle(const Request& q, fm_result& res) {
  OracleOptions o;
  o.shells = q.integer("shells", o.shells);
  o.mesh = q.integer("mesh", o.mesh);
  o.max_shells = q.integer("max_shells", o.max_shells);
  o.first_shell = q.num("first_shell", o.first_shell);
  o.shell_ratio = q.num("shell_ratio", o.shell_ratio);
  const auto u0 = q.radial("u0"), u1 = q.radial("u1"), u2 = q.radial("u2");
  const auto v1 = q.radial("v1", "1"), v2 = q.radial("v2");
  const OracleResult orc = best_constant_oracle(u0, u1, u2, v1, v2, o);
  res.report = to_json(orc);
  res.report["k"] = o.shells;
  res.report["mesh"] = o.mesh;
  const ConditionReport I = theorem51_I(u0, u1, u2, v1, v2, condition_grid(q));
  res.report["I"] = number(I.value);
  res.report["I_infinite"] = I.infinite;
  if (!orc.infinite && !I.infinite && orc.value > 0.0 && I.value > 0.0)
    res.report["c_equiv"] = number(equivalence_constant(I.value, orc.value));
  set_headline(res, orc.value, orc.infinite);
}

void run_verify(const Request& q, fm_result& res) {
  std::vector<ExperimentSpec> specs;
  if (q.has("config")) {
    const Config cfg = parse_config(q.str("config"));
    res.report["output_dir"] = cfg.output_dir;
    res.report["format"] = cfg.format == ReportFormat::Csv ? "csv" : "json";
    const std::string only = q.str("experiment", "");
    for (const auto& s : cfg.experiments)
      if (only.empty() || s.id == only) specs.push_back(s);
    if (!only.empty() && specs.empty()) specs.push_back(default_experiment(only));
  } else {
    specs.push_back(default_experiment(q.str("experiment")));
    res.report["output_dir"] = default_output_dir();
    res.report["format"] = "json";
  }
  require(!specs.empty(), "no experiments to run");
  Json reports = Json::array();
  bool pass = true;
  for (const auto& s : specs) {
    const EquivalenceReport r = verify(s);
    pass = pass && r.pass;
    reports.push_back(to_json(r));
  }
  res.report["reports"] = reports;
  res.report["pass"] = pass;
  res.finite = pass;
  res.value = pass ? 1.0 : 0.0;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* fm_version(void) { return "1.0.0"; }

const char* fm_last_error(void) { return g_last_error.c_str(); }

fm_status fm_run(const char* command, const char* request_json, fm_result** out) {
  if (!command || !request_json || !out) return fail(FM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const Json j = Json::parse(request_json);
    const Request q(j);
    auto res = std::make_unique<fm_result>();
    const std::string cmd = command;
    if (cmd == "maximal" || cmd == "riesz") run_operator(cmd, q, *res);
    else if (cmd == "norm") run_norm(q, *res);
    else if (cmd == "weight-class") run_weight_class(q, *res);
    else if (cmd == "condition") run_condition(q, *res);
    else if (cmd == "oracle") run_oracle(q, *res);
    else if (cmd == "verify") run_verify(q, *res);
    else throw ValidationError("unknown command: " + cmd);
    res->json = render(res->report, ReportFormat::Json);
    res->csv = render(res->report, ReportFormat::Csv);
    *out = res.release();
    return FM_OK;
  });
}

const char* fm_result_json(const fm_result* r) { return r ? r->json.c_str() : ""; }

const char* fm_result_csv(const fm_result* r) { return r ? r->csv.c_str() : ""; }

int fm_result_finite(const fm_result* r) { return r && r->finite ? 1 : 0; }

double fm_result_value(const fm_result* r) { return r ? r->value : std::numeric_limits<double>::quiet_NaN(); }

fm_status fm_result_write(const fm_result* r, const char* format, const char* path) {
  if (!r || !format || !path) return fail(FM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    emit_report(r->report, parse_format(format), path);
    return FM_OK;
  });
}

void fm_result_free(fm_result* r) { delete r; }

fm_status fm_canonical_function(const char* text, char** out) {
  if (!text || !out) return fail(FM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(to_string(parse_function(text)));
    return FM_OK;
  });
}

fm_status fm_canonical_weight(const char* text, char** out) {
  if (!text || !out) return fail(FM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(to_string(parse_weight(text)));
    return FM_OK;
  });
}

fm_status fm_render(const char* report_json, const char* format, char** out) {
  if (!report_json || !format || !out) return fail(FM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(render(Json::parse(report_json), parse_format(format)));
    return FM_OK;
  });
}

void fm_string_free(char* s) { std::free(s); }

}  // extern "C"
