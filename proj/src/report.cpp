#include "fracmorrey/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fracmorrey/error.hpp"

namespace fracmorrey {

namespace {

Json point_json(const Point& x) {
  Json a = Json::array();
  for (double c : x) a.push_back(number(c));
  return a;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + csv_cell(v[i]);
    return s;
  }
  return csv_cell(Json(v.dump()));
}

}  // namespace

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["condition_id"] = r.condition_id;
  j["value"] = number(r.value);
  j["infinite"] = r.infinite;
  j["truncated"] = r.truncated;
  Json am;
  if (r.argmax_x) am["x"] = point_json(*r.argmax_x);
  am["r"] = number(r.argmax_r);
  j["argmax"] = am;
  Json prof = Json::array();
  for (const auto& [x, v] : r.profile) prof.push_back(Json::array({number(x), number(v)}));
  j["profile"] = prof;
  if (r.refined_value) j["refined_value"] = number(*r.refined_value);
  if (r.stable) j["stable"] = *r.stable;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const EquivalenceReport& r) {
  auto stats = [](const RatioStats& s) {
    Json j;
    if (s.cells) j["cells"] = s.cells;
    j["count"] = s.count;
    j["min"] = number(s.min);
    j["max"] = number(s.max);
    j["median"] = number(s.median);
    j["spread"] = number(s.spread);
    return j;
  };
  Json j;
  j["id"] = r.id;
  Json inst = Json::array();
  for (const auto& in : r.instances) {
    Json i;
    i["f"] = in.function;
    if (!in.region.empty()) i["region"] = in.region;
    i["lhs"] = number(in.lhs);
    i["rhs"] = number(in.rhs);
    i["ratio"] = number(in.ratio);
    inst.push_back(i);
  }
  j["instances"] = inst;
  j["stats"] = stats(r.stats);
  Json ref = Json::array();
  for (const auto& s : r.refinement) ref.push_back(stats(s));
  j["refinement"] = ref;
  j["drift"] = number(r.drift);
  j["spread_bound"] = number(r.spread_bound);
  j["drift_bound"] = number(r.drift_bound);
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["constant"] = number(c.constant);
    cj["tolerance"] = number(c.tolerance);
    cj["worst"] = number(c.worst);
    cj["holds"] = c.holds;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  Json box = Json::array();
  for (const auto& iv : r.box) box.push_back(Json::array({number(iv.lo), number(iv.hi)}));
  j["box"] = box;
  if (!r.note.empty()) j["note"] = r.note;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const ClassReport& r) {
  Json j;
  j["class_id"] = r.class_id;
  j["constant"] = number(r.constant);
  j["infinite"] = r.infinite;
  Json ex;
  ex["center"] = point_json(r.extremal_center);
  ex["size"] = number(r.extremal_size);
  if (!r.extremal_inner_center.empty()) {
    ex["inner_center"] = point_json(r.extremal_inner_center);
    ex["inner_size"] = number(r.extremal_inner_size);
  }
  j["extremal"] = ex;
  Json fam;
  fam["count"] = r.family_count;
  fam["size_min"] = number(r.size_min);
  fam["size_max"] = number(r.size_max);
  j["family"] = fam;
  Json trend = Json::array();
  for (double t : r.trend) trend.push_back(number(t));
  j["trend"] = trend;
  if (!r.sweep.empty()) {
    Json sw = Json::array();
    for (const auto& [p, c] : r.sweep) sw.push_back(Json::array({number(p), number(c)}));
    j["sweep"] = sw;
  }
  if (r.witness_p) j["witness_p"] = number(*r.witness_p);
  if (r.subset_exponent) j["subset_exponent"] = number(*r.subset_exponent);
  return j;
}

Json to_json(const OracleResult& r) {
  Json j;
  j["oracle"] = number(r.value);
  j["infinite"] = r.infinite;
  j["shells"] = std::count_if(r.masses.begin(), r.masses.end(), [](double m) { return m > 0.0; });
  Json radii = Json::array(), masses = Json::array();
  for (double x : r.radii) radii.push_back(number(x));
  for (double m : r.masses) masses.push_back(number(m));
  j["radii"] = radii;
  j["masses"] = masses;
  j["evaluated"] = r.evaluated;
  return j;
}

std::string to_csv(const Json& report) {
  std::string out;
  auto row = [&](std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      out += (first ? "" : ",") + c;
      first = false;
    }
    out += "\n";
  };
  if (report.contains("instances")) {
    row({"f", "region", "lhs", "rhs", "ratio"});
    for (const auto& i : report["instances"])
      row({csv_cell(i["f"]), csv_cell(i.value("region", Json())), csv_cell(i["lhs"]), csv_cell(i["rhs"]),
           csv_cell(i["ratio"])});
  } else if (report.contains("profile")) {
    row({"r", "value"});
    for (const auto& p : report["profile"]) row({csv_cell(p[0]), csv_cell(p[1])});
  } else if (report.contains("trend")) {
    row({"level", "constant"});
    for (std::size_t l = 0; l < report["trend"].size(); ++l)
      row({std::to_string(l), csv_cell(report["trend"][l])});
  } else if (report.contains("values") && report.contains("centers")) {
    row({"x", "value"});
    for (std::size_t i = 0; i < report["values"].size(); ++i)
      row({csv_cell(report["centers"][i]), csv_cell(report["values"][i])});
  } else {
    row({"key", "value"});
    for (const auto& [k, v] : report.items())
      if (!v.is_object()) row({k, csv_cell(v)});
  }
  return out;
}

std::string render(const Json& report, ReportFormat format) {
  if (format == ReportFormat::Csv) return to_csv(report);
  return report.dump(2) + "\n";
}

void emit_report(const Json& report, ReportFormat format, const std::string& path) {
  const std::string text = render(report, format);
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ComputationError("cannot open report file for writing: " + path);
  out << text;
  out.close();
  if (!out) throw ComputationError("failed writing report file: " + path);
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw ValidationError("unknown report format: " + name + " (expected json or csv)");
}

}  // namespace fracmorrey
