#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace curvlab {

inline constexpr const char* kToolVersion = "curvlab 0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// One numerical inequality check: lhs <= rhs expected, slack = rhs - lhs,
// pass <=> slack >= -tolerance. Informational entries are recorded without
// counting toward failure (used when a precondition was overridden).
struct ReportEntry {
    std::string check_id;
    std::string statement;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool informational = false;
    std::string note;

    bool operator==(const ReportEntry&) const = default;
};

ReportEntry make_entry(std::string check_id, std::string statement, double lhs, double rhs,
                       double tolerance, std::string note = "");

struct VerificationReport {
    int schema_version = kReportSchemaVersion;
    std::string tool_version = kToolVersion;
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
    std::vector<ReportEntry> entries;

    void add(ReportEntry e) { entries.push_back(std::move(e)); }
    void add(std::vector<ReportEntry> es) {
        for (auto& e : es) entries.push_back(std::move(e));
    }

    int passed() const;
    int failed() const;  // non-informational failures
    int informational() const;
    bool all_pass() const { return failed() == 0; }
};

nlohmann::ordered_json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::ordered_json& j);
std::string render_table(const VerificationReport& report);

}  // namespace curvlab
