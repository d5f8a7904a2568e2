#include "zk/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace zk {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Reported: return "REPORTED";
  }
  return "?";
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::ok() const { return n_failed() == 0; }

int Report::n_failed() const {
  int n = 0;
  for (const CheckResult& c : checks)
    if (c.status == CheckStatus::Fail) ++n;
  return n;
}

std::string Report::render_text() const {
  std::string out;
  char buf[512];
  for (const CheckResult& c : checks) {
    std::snprintf(buf, sizeof buf, "%-8s %-42s value=%.6g", status_name(c.status),
                  c.name.c_str(), c.value);
    out += buf;
    if (c.threshold > 0.0) {
      std::snprintf(buf, sizeof buf, " tol=%.3g", c.threshold);
      out += buf;
    }
    if (!c.details.empty()) out += "  [" + c.details + "]";
    out += "\n";
  }
  std::snprintf(buf, sizeof buf, "%zu checks, %d failed\n", checks.size(), n_failed());
  out += buf;
  return out;
}

namespace {

nlohmann::json check_to_json(const CheckResult& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["status"] = status_name(c.status);
  j["value"] = c.value;
  if (c.threshold > 0.0) j["threshold"] = c.threshold;
  j["source"] = c.source;
  if (!c.details.empty()) j["details"] = c.details;
  return j;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << body;
}

}  // namespace

void write_report_json(const Report& r, const std::string& path) {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : r.checks) j["checks"].push_back(check_to_json(c));
  j["failed"] = r.n_failed();
  j["total"] = r.checks.size();
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<DiscrepancyEntry> collect_discrepancies(const Report& r) {
  std::vector<DiscrepancyEntry> out;
  for (const CheckResult& c : r.checks) {
    if (c.status != CheckStatus::Reported) continue;
    out.push_back({c.name, c.details.empty() ? c.name : c.details, c.value, c.source});
  }
  return out;
}

void write_discrepancy_json(const std::vector<DiscrepancyEntry>& entries,
                            const std::string& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const DiscrepancyEntry& e : entries) {
    nlohmann::json je;
    je["id"] = e.id;
    je["summary"] = e.summary;
    je["evidence"] = e.evidence;
    je["source"] = e.source;
    j.push_back(je);
  }
  write_text_file(path, j.dump(2) + "\n");
}

void write_discrepancy_markdown(const std::vector<DiscrepancyEntry>& entries,
                                const std::string& path) {
  std::string body = "# Discrepancy report\n\n";
  body +=
      "Each entry records a place where the printed material and the computed\n"
      "object disagree, together with the measured evidence.\n\n";
  if (entries.empty()) body += "No discrepancies recorded.\n";
  char buf[160];
  for (const DiscrepancyEntry& e : entries) {
    body += "## " + e.id + "\n\n";
    body += e.summary + "\n\n";
    std::snprintf(buf, sizeof buf, "- evidence: %.6g\n", e.evidence);
    body += buf;
    body += "- source: " + e.source + "\n\n";
  }
  write_text_file(path, body);
}

}  // namespace zk
