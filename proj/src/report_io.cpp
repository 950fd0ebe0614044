#include "stirval/report_io.hpp"

#include <sstream>

#include "json.hpp"

namespace stirval {

namespace {

std::string params_text(const Params& params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ';';
    out += name + "=" + std::to_string(value);
  }
  return out;
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json doc;
  doc["suite"] = report.suite;
  doc["total"] = report.total;
  doc["passed"] = report.passed;
  doc["failed"] = report.failed;
  doc["deviations"] = report.deviations;
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.params) params[name] = value;
    records.push_back({{"check_id", r.check_id},
                       {"params", std::move(params)},
                       {"expected", to_string(r.expected)},
                       {"actual", to_string(r.actual)},
                       {"pass", r.pass}});
  }
  doc["records"] = std::move(records);
  return doc.dump(2);
}

std::string report_to_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "check_id,params,expected,actual,pass\n";
  for (const auto& r : report.records) {
    out << r.check_id << ',' << params_text(r.params) << ',' << to_string(r.expected) << ','
        << to_string(r.actual) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string report_to_plain(const VerificationReport& report, bool all_records) {
  std::ostringstream out;
  out << "suite " << report.suite << ": total=" << report.total << " passed=" << report.passed
      << " failed=" << report.failed;
  if (report.exploratory) out << " deviations=" << report.deviations;
  out << '\n';
  for (const auto& r : report.records) {
    if (r.pass && !all_records) continue;
    out << (r.pass ? "  ok   " : report.exploratory ? "  CONJECTURE-DEVIATION " : "  FAIL ")
        << r.check_id << ' ' << params_text(r.params) << " expected=" << to_string(r.expected)
        << " actual=" << to_string(r.actual) << '\n';
  }
  return out.str();
}

}  // namespace stirval
