#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "g2sp/errors.hpp"
#include "g2sp/verify.hpp"

namespace g2sp {

int Report::pass_count() const {
    int n = 0;
    for (const auto& c : checks)
        if (c.pass) ++n;
    return n;
}

int Report::fail_count() const {
    int n = 0;
    for (const auto& c : checks)
        if (!c.pass) ++n;
    return n;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void json_escape(std::ostringstream& os, const std::string& s) {
    os << '"';
    for (char ch : s) {
        switch (ch) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            case '\r': os << "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    os << buf;
                } else {
                    os << ch;
                }
        }
    }
    os << '"';
}

void emit_params(std::ostringstream& os, const std::map<std::string, std::string>& params) {
    os << '{';
    bool first = true;
    for (const auto& [k, v] : params) { // std::map iterates in sorted key order
        if (!first) os << ',';
        first = false;
        json_escape(os, k);
        os << ':';
        json_escape(os, v);
    }
    os << '}';
}

} // namespace

std::string report_to_json(const Report& report) {
    std::ostringstream os;
    os << "{\"checks\":[";
    for (size_t i = 0; i < report.checks.size(); ++i) {
        const CheckResult& c = report.checks[i];
        if (i) os << ',';
        os << "{\"max_residual\":" << format_double(c.max_residual) << ",\"name\":";
        json_escape(os, c.name);
        if (!c.note.empty()) {
            os << ",\"note\":";
            json_escape(os, c.note);
        }
        os << ",\"params\":";
        emit_params(os, c.params);
        os << ",\"pass\":" << (c.pass ? "true" : "false");
        os << ",\"tolerance\":" << format_double(c.tolerance) << '}';
    }
    os << "],\"params\":";
    emit_params(os, report.params);
    os << ",\"seed\":" << report.seed;
    os << ",\"suite\":";
    json_escape(os, report.suite);
    os << ",\"summary\":{\"fail\":" << report.fail_count() << ",\"pass\":" << report.pass_count() << '}';
    os << ",\"version\":";
    json_escape(os, report.version);
    os << "}\n";
    return os.str();
}

std::string report_to_csv(const Report& report) {
    std::ostringstream os;
    if (!report.row_columns.empty()) {
        for (size_t i = 0; i < report.row_columns.size(); ++i) {
            if (i) os << ',';
            os << report.row_columns[i];
        }
        os << '\n';
        for (const auto& row : report.rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                os << format_double(row[i]);
            }
            os << '\n';
        }
        return os.str();
    }
    os << "name,max_residual,tolerance,pass,note\n";
    for (const CheckResult& c : report.checks) {
        os << c.name << ',' << format_double(c.max_residual) << ',' << format_double(c.tolerance)
           << ',' << (c.pass ? "true" : "false") << ',' << c.note << '\n';
    }
    return os.str();
}

void emit_report(const Report& report, ReportFormat format, const std::string& path) {
    const std::string payload =
        format == ReportFormat::JSON ? report_to_json(report) : report_to_csv(report);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("emit_report: cannot open output file", path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw io_error("emit_report: write failed", path);
}

void parallel_for_index(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace g2sp
