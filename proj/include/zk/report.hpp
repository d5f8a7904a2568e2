#ifndef ZK_REPORT_HPP
#define ZK_REPORT_HPP

#include <string>
#include <vector>

namespace zk {

// PASS/FAIL gate the exit code; REPORTED entries audit printed material whose
// deviations are recorded rather than asserted.
enum class CheckStatus { Pass, Fail, Reported };

const char* status_name(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double value = 0.0;      // measured residual / deviation / order
  double threshold = 0.0;  // tolerance where applicable (0 = informational)
  std::string source;      // which printed object the check audits
  std::string details;
};

struct Report {
  std::vector<CheckResult> checks;

  void add(CheckResult r) { checks.push_back(std::move(r)); }
  void merge(const Report& other);
  bool ok() const;  // no Fail entries
  int n_failed() const;
  std::string render_text() const;
};

void write_report_json(const Report& r, const std::string& path);

// A structural discrepancy note: a place where the printed material and the
// computed object disagree, with measured evidence.
struct DiscrepancyEntry {
  std::string id;
  std::string summary;
  double evidence = 0.0;   // residual/deviation magnitude backing the note
  std::string source;
};

std::vector<DiscrepancyEntry> collect_discrepancies(const Report& r);
void write_discrepancy_json(const std::vector<DiscrepancyEntry>& entries,
                            const std::string& path);
void write_discrepancy_markdown(const std::vector<DiscrepancyEntry>& entries,
                                const std::string& path);

}  // namespace zk

#endif
