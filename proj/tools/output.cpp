#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "app.hpp"
#include "hrl/io.hpp"

namespace hrl::app {

namespace fs = std::filesystem;

namespace {

void ensure_parent(const std::string& path) {
    const auto parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Round step of 1, 2 or 5 times a power of ten covering the span in about five ticks.
double nice_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

std::string tick_label(double v) {
    if (std::fabs(v) >= 1e5 || (std::fabs(v) < 1e-3 && v != 0.0)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1e", v);
        return buf;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header, bool append)
    : columns_(header.size()) {
    ensure_parent(path);
    const bool fresh = !append || !fs::exists(path) || fs::file_size(path) == 0;
    os_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!os_) throw std::runtime_error("cannot write " + path);
    if (fresh) {
        for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
        os_ << '\n';
    }
}

CsvWriter& CsvWriter::cell(const std::string& v) {
    if (pending_++) os_ << ',';
    if (v.find_first_of(",\"\n") != std::string::npos) {
        os_ << '"';
        for (const char c : v) os_ << (c == '"' ? "\"\"" : std::string(1, c));
        os_ << '"';
    } else {
        os_ << v;
    }
    return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(std::int64_t v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
    if (pending_ != columns_)
        throw std::logic_error("csv row has " + std::to_string(pending_) + " cells, header has " +
                               std::to_string(columns_));
    os_ << '\n';
    pending_ = 0;
}

void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series) {
    constexpr double W = 720, H = 440, left = 80, right = 160, top = 40, bottom = 60;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = 0.0, y1 = -x0;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0, y1 = 1.0;
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) y1 = y0 + 1.0;
    const double xs = nice_step(x1 - x0), ys = nice_step(y1 - y0);
    y1 = std::ceil(y1 / ys) * ys;
    const double pw = W - left - right, ph = H - top - bottom;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

    ensure_parent(path);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(title)
       << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
        os << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed(px(t)) << "\" y2=\""
           << top + ph + 5 << "\" stroke=\"black\"/>";
        os << "<text x=\"" << fixed(px(t)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
           << tick_label(t) << "</text>\n";
    }
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(py(t)) << "\" x2=\"" << left << "\" y2=\""
           << fixed(py(t)) << "\" stroke=\"black\"/>";
        os << "<text x=\"" << left - 8 << "\" y=\"" << fixed(py(t) + 4) << "\" text-anchor=\"end\">"
           << tick_label(t) << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
       << escape_xml(x_label) << "</text>\n";
    os << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
       << top + ph / 2 << ")\">" << escape_xml(y_label) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) os << (i ? " " : "") << fixed(px(s.x[i])) << ',' << fixed(py(s.y[i]));
        os << "\"/>\n";
        const double ly = top + 14 + 18 * static_cast<double>(k);
        os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 32 << "\" y2=\"" << ly
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
        os << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly + 4 << "\">" << escape_xml(s.label) << "</text>\n";
    }
    os << "</svg>\n";
}

const std::vector<std::string>& RunRecord::columns() {
    static const std::vector<std::string> cols{
        "command",           "config_hash",      "seed",          "phase",
        "status",            "failure_cause",    "phase1_steps",  "phase2_steps",
        "phase3_steps",      "learn_exit_steps", "brute_force_steps", "exits_found",
        "exits_true",        "exact_recovery",   "mean_cumulative_regret", "mean_final_regret"};
    return cols;
}

void append_run_record(const std::string& dir, const RunRecord& rec) {
    CsvWriter w((fs::path(dir) / "run_record.csv").string(), RunRecord::columns(), true);
    auto opt_int = [](int v) { return v < 0 ? std::string() : std::to_string(v); };
    auto opt_double = [](double v) { return v < 0 ? std::string() : format_double(v); };
    w.cell(rec.command)
        .cell(hex64(rec.config_hash))
        .cell(std::to_string(rec.seed))
        .cell(rec.phase)
        .cell(rec.status)
        .cell(rec.failure_cause)
        .cell(rec.counters.phase1)
        .cell(rec.counters.phase2)
        .cell(rec.counters.phase3)
        .cell(rec.counters.learn_exit)
        .cell(rec.counters.brute_force)
        .cell(opt_int(rec.exits_found))
        .cell(opt_int(rec.exits_true))
        .cell(opt_int(rec.exact_recovery))
        .cell(opt_double(rec.mean_cumulative_regret))
        .cell(opt_double(rec.mean_final_regret));
    w.end_row();
    std::ofstream log(fs::path(dir) / "timing.log", std::ios::app);
    log << rec.command << " phase=" << rec.phase << " seed=" << rec.seed << " status=" << rec.status
        << " wall_seconds=" << fixed(rec.wall_seconds, 3) << '\n';
}

}  // namespace hrl::app
