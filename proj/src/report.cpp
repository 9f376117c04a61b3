#include <fedlab/report.hpp>

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fedlab
{

namespace
{

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

std::string md_cell(const std::string &s)
{
    std::string out;
    for (char c : s) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

} // namespace

bool Report::all_pass() const
{
    for (const auto &r : rows) {
        if (r.status != "pass") {
            return false;
        }
    }
    return true;
}

std::string emit_report(const Report &r, const std::string &format, bool include_runtime)
{
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["version"] = r.version;
        nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
        for (const auto &[k, v] : r.config) {
            cfg[k] = v;
        }
        doc["config"] = cfg;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        std::size_t pass = 0;
        std::size_t fail = 0;
        std::size_t error = 0;
        for (const auto &row : r.rows) {
            nlohmann::ordered_json j;
            j["suite"] = row.suite;
            j["case"] = row.id;
            j["status"] = row.status;
            j["defect"] = row.defect;
            if (include_runtime) {
                j["runtime_ms"] = row.runtime_ms;
            }
            rows.push_back(std::move(j));
            (row.status == "pass" ? pass : row.status == "fail" ? fail : error) += 1;
        }
        doc["rows"] = rows;
        doc["summary"] = {{"pass", pass}, {"fail", fail}, {"error", error}};
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == "csv") {
        os << "suite,case,status,defect\n";
        for (const auto &row : r.rows) {
            os << csv_field(row.suite) << ',' << csv_field(row.id) << ',' << csv_field(row.status) << ','
               << csv_field(row.defect) << '\n';
        }
        return os.str();
    }
    if (format == "md") {
        os << "# fedosov-lab report\n\nversion " << r.version << "\n\n";
        if (!r.config.empty()) {
            os << "| key | value |\n|---|---|\n";
            for (const auto &[k, v] : r.config) {
                os << "| " << md_cell(k) << " | " << md_cell(v) << " |\n";
            }
            os << '\n';
        }
        os << "| suite | case | status | defect |" << (include_runtime ? " ms |" : "") << '\n';
        os << "|---|---|---|---|" << (include_runtime ? "---|" : "") << '\n';
        for (const auto &row : r.rows) {
            os << "| " << md_cell(row.suite) << " | " << md_cell(row.id) << " | " << row.status << " | "
               << md_cell(row.defect) << " |";
            if (include_runtime) {
                os << ' ' << row.runtime_ms << " |";
            }
            os << '\n';
        }
        return os.str();
    }
    throw std::invalid_argument("unknown report format '" + format + "'");
}

} // namespace fedlab
