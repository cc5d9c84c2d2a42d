#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hrl/io.hpp"
#include "hrl/meta_train.hpp"

namespace hrl {

namespace {

constexpr const char* kMagic = "hrl-meta-train-state";

void write_model(std::ostream& os, const char* name, const EmpiricalModel& m) {
    std::int64_t lines = 0;
    for (int s = 0; s < m.num_states(); ++s)
        for (int a = 0; a < m.num_actions(); ++a) lines += static_cast<std::int64_t>(m.counts(s, a).size());
    os << "model " << name << ' ' << m.num_states() << ' ' << m.num_actions() << ' ' << m.threshold() << ' ' << lines
       << '\n';
    for (int s = 0; s < m.num_states(); ++s)
        for (int a = 0; a < m.num_actions(); ++a)
            for (const auto& [n, k] : m.counts(s, a)) os << s << ' ' << a << ' ' << n << ' ' << k << '\n';
}

EmpiricalModel read_model(std::istream& is, const std::string& expected) {
    std::string kw, name;
    int S = 0, A = 0, thr = 1;
    std::int64_t lines = 0;
    if (!(is >> kw >> name >> S >> A >> thr >> lines) || kw != "model" || name != expected)
        throw std::invalid_argument("state file: expected model " + expected);
    EmpiricalModel m(S, A, thr);
    for (std::int64_t i = 0; i < lines; ++i) {
        int s, a, n;
        std::int64_t k;
        if (!(is >> s >> a >> n >> k)) throw std::invalid_argument("state file: truncated model " + expected);
        m.add(s, a, n, k);
    }
    return m;
}

double read_double(std::istream& is) {
    std::string tok;
    if (!(is >> tok)) throw std::invalid_argument("state file: missing number");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (*end != '\0') throw std::invalid_argument("state file: malformed number " + tok);
    return v;
}

void expect(std::istream& is, const char* kw) {
    std::string w;
    if (!(is >> w) || w != kw) throw std::invalid_argument(std::string("state file: expected ") + kw);
}

}  // namespace

void write_state(std::ostream& os, const MetaTrainState& st) {
    os << kMagic << " 1\n";
    os << "dims " << st.num_states << ' ' << st.num_actions << ' ' << st.horizon << ' ' << st.num_tasks << ' '
       << st.start << '\n';
    os << "phase " << st.phase_completed << '\n';
    os << "counters " << st.counters.phase1 << ' ' << st.counters.phase2 << ' ' << st.counters.phase3 << ' '
       << st.counters.learn_exit << ' ' << st.counters.brute_force << '\n';
    os << "values";
    for (double v : st.value_estimates) os << ' ' << format_double(v);
    os << '\n';
    for (int t = 0; t < st.num_tasks; ++t) write_model(os, ("task" + std::to_string(t)).c_str(), st.task_models[t]);
    write_model(os, "reference", st.reference);
    os << "mu " << st.mu.size();
    for (double v : st.mu) os << ' ' << format_double(v);
    os << '\n';
    const auto pairs = st.exits.pairs();
    os << "exits " << pairs.size() << '\n';
    for (const auto& sa : pairs)
        for (int t = 0; t < st.num_tasks; ++t) {
            const auto& row = st.exits.row(t, sa);
            os << sa.state << ' ' << sa.action << ' ' << t << ' ' << row.size();
            for (const auto& tr : row) os << ' ' << tr.next << ' ' << format_double(tr.prob);
            os << '\n';
        }
    os << "diagnostics " << st.diagnostics.size() << '\n';
    for (const auto& d : st.diagnostics) os << d << '\n';
    os << "end\n";
}

MetaTrainState read_state(std::istream& is) {
    MetaTrainState st;
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != kMagic || version != 1)
        throw std::invalid_argument("not a meta-train state file");
    expect(is, "dims");
    is >> st.num_states >> st.num_actions >> st.horizon >> st.num_tasks >> st.start;
    if (!is || st.num_states <= 0 || st.num_actions <= 0 || st.num_tasks <= 0)
        throw std::invalid_argument("state file: bad dims");
    expect(is, "phase");
    is >> st.phase_completed;
    expect(is, "counters");
    is >> st.counters.phase1 >> st.counters.phase2 >> st.counters.phase3 >> st.counters.learn_exit >>
        st.counters.brute_force;
    expect(is, "values");
    for (int t = 0; t < st.num_tasks; ++t) st.value_estimates.push_back(read_double(is));
    for (int t = 0; t < st.num_tasks; ++t) st.task_models.push_back(read_model(is, "task" + std::to_string(t)));
    st.reference = read_model(is, "reference");
    expect(is, "mu");
    std::size_t n = 0;
    is >> n;
    for (std::size_t i = 0; i < n; ++i) st.mu.push_back(read_double(is));
    expect(is, "exits");
    is >> n;
    st.exits = ExitTable(st.num_states, st.num_actions, st.num_tasks);
    for (std::size_t i = 0; i < n * static_cast<std::size_t>(st.num_tasks); ++i) {
        StateAction sa;
        int t = 0;
        std::size_t k = 0;
        if (!(is >> sa.state >> sa.action >> t >> k)) throw std::invalid_argument("state file: truncated exit table");
        SparseRow row;
        for (std::size_t j = 0; j < k; ++j) {
            Transition tr;
            is >> tr.next;
            tr.prob = read_double(is);
            row.push_back(tr);
        }
        st.exits.flag(sa);
        st.exits.set_row(t, sa, std::move(row));
    }
    expect(is, "diagnostics");
    is >> n;
    std::string line;
    std::getline(is, line);
    for (std::size_t i = 0; i < n; ++i) {
        std::getline(is, line);
        st.diagnostics.push_back(line);
    }
    expect(is, "end");
    return st;
}

void save_state(const std::string& path, const MetaTrainState& state) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_state(os, state);
}

MetaTrainState load_state(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("missing meta-train state: " + path);
    return read_state(is);
}

}  // namespace hrl
