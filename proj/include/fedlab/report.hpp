#ifndef FEDLAB_REPORT_HPP
#define FEDLAB_REPORT_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fedlab
{

inline constexpr const char *kToolVersion = "1.0.0";

struct ReportRow {
    std::string suite;
    std::string id;
    /// "pass", "fail" or "error"
    std::string status;
    std::string defect;
    double runtime_ms = 0;
};

struct Report {
    std::string version = kToolVersion;
    /// Ordered echo of the effective configuration.
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<ReportRow> rows;

    bool all_pass() const;
};

/// "json", "csv" or "md"; runtime fields only when include_runtime is set.
std::string emit_report(const Report &r, const std::string &format, bool include_runtime = true);

} // namespace fedlab

#endif
