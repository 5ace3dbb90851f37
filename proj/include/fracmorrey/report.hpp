#ifndef FRACMORREY_REPORT_HPP
#define FRACMORREY_REPORT_HPP

#include <string>

#include <json.hpp>

#include "fracmorrey/conditions.hpp"
#include "fracmorrey/harness.hpp"
#include "fracmorrey/weights.hpp"

namespace fracmorrey {

using Json = nlohmann::ordered_json;

enum class ReportFormat { Json, Csv };

/// Number rounded to 12 significant digits; null when not finite.
Json number(double v);
/// Fixed 12-significant-digit text ("inf", "-inf", "nan" for non-finite).
std::string format_number(double v);

Json to_json(const ConditionReport& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const ClassReport& r);
Json to_json(const OracleResult& r);

/// CSV flattening of a report already in JSON form: instances for
/// equivalence reports, the profile for condition reports, the trend for
/// class reports, values for fields; otherwise a key,value table of the
/// top-level scalars.
std::string to_csv(const Json& report);

/// Serialized text, byte-deterministic for a given report.
std::string render(const Json& report, ReportFormat format);
/// Write the rendered report; I/O failures raise ComputationError naming
/// the path.
void emit_report(const Json& report, ReportFormat format, const std::string& path);

ReportFormat parse_format(const std::string& name);

}  // namespace fracmorrey

#endif
