#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrl/hierarchy.hpp"
#include "hrl/meta_test.hpp"
#include "hrl/meta_train.hpp"

namespace hrl::app {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sectioned key=value file. Keys are addressed as "section.key"; top-level
/// keys have no prefix. Lists are comma separated.
class Config {
public:
    static Config load(const std::string& path);
    static Config parse(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) const;

    /// Throws on keys inside `sections` that no getter has asked for.
    void reject_unknown(const std::vector<std::string>& sections) const;

    /// FNV-1a over the sorted key=value lines, leaving out `out` and `plot`.
    std::uint64_t hash() const;
    std::string canonical() const;
    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
    std::string origin_;

    const std::string* find(const std::string& key) const;
};

std::string hex64(std::uint64_t x);

// ---- building blocks from config ------------------------------------------

/// [family] kind = four_room | tree | chain | two_arm
TaskFamily family_from_config(const Config& cfg);
MetaTrainConfig meta_train_config(const Config& cfg);
MetaTestConfig meta_test_config(const Config& cfg);
SeparationConfig separation_config(const Config& cfg);

// ---- output ---------------------------------------------------------------

/// Comma separated table; doubles go through format_double.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header, bool append = false);
    CsvWriter& cell(const std::string& v);
    CsvWriter& cell(double v);
    CsvWriter& cell(std::int64_t v);
    CsvWriter& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
    void end_row();

private:
    std::ofstream os_;
    std::size_t columns_ = 0, pending_ = 0;
};

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

/// Static SVG line chart: axes, tick labels, one polyline per series.
void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series);

/// One row of run_record.csv. Wall time goes to timing.log, never into a CSV.
struct RunRecord {
    std::string command;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    int phase = 0;
    std::string status = "ok";
    std::string failure_cause;
    PhaseCounters counters;
    int exits_found = -1;
    int exits_true = -1;
    int exact_recovery = -1;  ///< -1 when not applicable
    double mean_cumulative_regret = -1.0;
    double mean_final_regret = -1.0;
    double wall_seconds = 0.0;

    static const std::vector<std::string>& columns();
};

/// Appends to <dir>/run_record.csv and <dir>/timing.log.
void append_run_record(const std::string& dir, const RunRecord& rec);

// ---- commands -------------------------------------------------------------

struct CommandOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    int phase = 0;  ///< meta-train only; 0 runs every phase
    std::optional<bool> plot;
    bool json = false;
};

int cmd_meta_train(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_meta_test(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_separation(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_validate(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_bench(const CommandOptions& opt, std::ostream& out, std::ostream& err);

/// Column reference shown by --help.
const char* csv_columns_help();

}  // namespace hrl::app
