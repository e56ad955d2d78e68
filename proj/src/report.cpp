#include "curvlab/report.hpp"

#include <iomanip>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

ReportEntry make_entry(std::string check_id, std::string statement, double lhs, double rhs,
                       double tolerance, std::string note) {
    ReportEntry e;
    e.check_id = std::move(check_id);
    e.statement = std::move(statement);
    e.lhs = lhs;
    e.rhs = rhs;
    e.slack = rhs - lhs;
    e.tolerance = tolerance;
    e.pass = e.slack >= -tolerance;
    e.note = std::move(note);
    return e;
}

int VerificationReport::passed() const {
    int c = 0;
    for (const auto& e : entries)
        if (e.pass && !e.informational) ++c;
    return c;
}

int VerificationReport::failed() const {
    int c = 0;
    for (const auto& e : entries)
        if (!e.pass && !e.informational) ++c;
    return c;
}

int VerificationReport::informational() const {
    int c = 0;
    for (const auto& e : entries)
        if (e.informational) ++c;
    return c;
}

nlohmann::ordered_json report_to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["schema_version"] = report.schema_version;
    j["tool_version"] = report.tool_version;
    j["provenance"] = report.provenance;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json je;
        je["check_id"] = e.check_id;
        je["statement"] = e.statement;
        je["lhs"] = e.lhs;
        je["rhs"] = e.rhs;
        je["slack"] = e.slack;
        je["tolerance"] = e.tolerance;
        je["pass"] = e.pass;
        je["informational"] = e.informational;
        je["note"] = e.note;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    j["summary"] = {{"passed", report.passed()},
                    {"failed", report.failed()},
                    {"informational", report.informational()}};
    return j;
}

VerificationReport report_from_json(const nlohmann::ordered_json& j) {
    VerificationReport r;
    try {
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kReportSchemaVersion)
            throw ParseError("unsupported report schema version " +
                             std::to_string(r.schema_version));
        r.tool_version = j.at("tool_version").get<std::string>();
        r.provenance = j.at("provenance");
        for (const auto& je : j.at("entries")) {
            ReportEntry e;
            e.check_id = je.at("check_id").get<std::string>();
            e.statement = je.at("statement").get<std::string>();
            e.lhs = je.at("lhs").get<double>();
            e.rhs = je.at("rhs").get<double>();
            e.slack = je.at("slack").get<double>();
            e.tolerance = je.at("tolerance").get<double>();
            e.pass = je.at("pass").get<bool>();
            e.informational = je.at("informational").get<bool>();
            e.note = je.at("note").get<std::string>();
            r.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed report: ") + ex.what());
    }
    return r;
}

std::string render_table(const VerificationReport& report) {
    std::ostringstream os;
    os << std::left << std::setw(28) << "check" << std::setw(16) << "lhs" << std::setw(16)
       << "rhs" << std::setw(14) << "slack" << std::setw(6) << "pass"
       << "note\n";
    os << std::string(92, '-') << '\n';
    os << std::setprecision(6);
    for (const auto& e : report.entries) {
        os << std::left << std::setw(28) << e.check_id << std::setw(16) << e.lhs << std::setw(16)
           << e.rhs << std::setw(14) << e.slack << std::setw(6)
           << (e.pass ? (e.informational ? "info" : "yes") : (e.informational ? "info" : "NO"))
           << e.note << '\n';
    }
    os << std::string(92, '-') << '\n';
    os << report.passed() << " passed, " << report.failed() << " failed, "
       << report.informational() << " informational\n";
    return os.str();
}

}  // namespace curvlab
