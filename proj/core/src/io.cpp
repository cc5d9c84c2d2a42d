#include "hrl/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hrl {

std::string format_double(double x) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

void write_mdp(std::ostream& os, const TabularMdp& mdp) {
    if (mdp.time_varying()) throw std::invalid_argument("write_mdp: time-varying models are not serializable");
    const int S = mdp.num_states(), A = mdp.num_actions();
    os << S << ' ' << A << ' ' << mdp.horizon() << ' ' << mdp.start_state() << '\n';
    std::vector<double> dense(static_cast<std::size_t>(S));
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            std::fill(dense.begin(), dense.end(), 0.0);
            for (const auto& t : mdp.row(s, a)) dense[t.next] = t.prob;
            os << format_double(mdp.reward(s, a));
            for (double p : dense) os << ' ' << format_double(p);
            os << '\n';
        }
    bool any = false;
    for (int s = 0; s < S; ++s)
        if (mdp.is_terminal(s)) {
            os << (any ? " " : "terminal ") << s;
            any = true;
        }
    if (any) os << '\n';
}

namespace {

std::string next_line(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        const auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') continue;
        return line;
    }
    return {};
}

double parse_double(const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') throw std::invalid_argument("malformed number '" + tok + "'");
    return v;
}

}  // namespace

TabularMdp read_mdp(std::istream& is) {
    std::istringstream header(next_line(is));
    int S = 0, A = 0, H = 0, s0 = 0;
    if (!(header >> S >> A >> H >> s0)) throw std::invalid_argument("read_mdp: malformed header");
    if (S <= 0 || A <= 0 || S > 1000000 || A > 1000000) throw std::invalid_argument("read_mdp: bad sizes");
    std::vector<SparseRow> rows(static_cast<std::size_t>(S) * A);
    std::vector<double> rewards(static_cast<std::size_t>(S) * A);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::istringstream ls(next_line(is));
        std::string tok;
        if (!(ls >> tok)) throw std::invalid_argument("read_mdp: missing row " + std::to_string(i));
        rewards[i] = parse_double(tok);
        for (int j = 0; j < S; ++j) {
            if (!(ls >> tok)) throw std::invalid_argument("read_mdp: short row " + std::to_string(i));
            const double p = parse_double(tok);
            if (p != 0.0) rows[i].push_back({j, p});
            if (p < 0.0) throw std::invalid_argument("read_mdp: negative probability");
        }
        if (ls >> tok) throw std::invalid_argument("read_mdp: long row " + std::to_string(i));
    }
    std::vector<char> term;
    const std::string tail = next_line(is);
    if (!tail.empty()) {
        std::istringstream ts(tail);
        std::string kw;
        ts >> kw;
        if (kw != "terminal") throw std::invalid_argument("read_mdp: unexpected trailing content");
        term.assign(static_cast<std::size_t>(S), 0);
        int s;
        while (ts >> s) {
            if (s < 0 || s >= S) throw std::invalid_argument("read_mdp: terminal out of range");
            term[static_cast<std::size_t>(s)] = 1;
        }
    }
    return TabularMdp(S, A, H, s0, std::move(rows), std::move(rewards), std::move(term));
}

void write_hierarchy(std::ostream& os, const LatentHierarchy& h) {
    os << "states " << h.num_states() << " clusters " << h.num_clusters() << '\n';
    os << "cluster_of";
    for (int c : h.cluster_map()) os << ' ' << c;
    os << '\n';
    for (int c = 0; c < h.num_clusters(); ++c) {
        os << "entrances " << c << ' ' << h.entrances(c).size();
        for (int s : h.entrances(c)) os << ' ' << s;
        os << '\n';
        os << "exits " << c << ' ' << h.exits(c).size();
        for (auto e : h.exits(c)) os << ' ' << e.state << ' ' << e.action;
        os << '\n';
    }
}

LatentHierarchy read_hierarchy(std::istream& is) {
    auto expect = [](std::istringstream& ls, const char* kw) {
        std::string w;
        if (!(ls >> w) || w != kw) throw std::invalid_argument(std::string("read_hierarchy: expected ") + kw);
    };
    std::istringstream hs(next_line(is));
    int S = 0, C = 0;
    expect(hs, "states");
    hs >> S;
    expect(hs, "clusters");
    if (!(hs >> C) || S <= 0 || C <= 0) throw std::invalid_argument("read_hierarchy: malformed header");
    std::istringstream cs(next_line(is));
    expect(cs, "cluster_of");
    std::vector<int> cluster_of(static_cast<std::size_t>(S));
    for (auto& c : cluster_of)
        if (!(cs >> c)) throw std::invalid_argument("read_hierarchy: short cluster map");
    std::vector<std::vector<int>> entrances(static_cast<std::size_t>(C));
    std::vector<std::vector<StateAction>> exits(static_cast<std::size_t>(C));
    for (int c = 0; c < C; ++c) {
        std::istringstream es(next_line(is));
        expect(es, "entrances");
        int cc = -1, n = 0;
        es >> cc >> n;
        if (cc != c || n < 0) throw std::invalid_argument("read_hierarchy: bad entrance line");
        entrances[c].resize(static_cast<std::size_t>(n));
        for (auto& s : entrances[c])
            if (!(es >> s)) throw std::invalid_argument("read_hierarchy: short entrance line");
        std::istringstream xs(next_line(is));
        expect(xs, "exits");
        xs >> cc >> n;
        if (cc != c || n < 0) throw std::invalid_argument("read_hierarchy: bad exit line");
        exits[c].resize(static_cast<std::size_t>(n));
        for (auto& e : exits[c])
            if (!(xs >> e.state >> e.action)) throw std::invalid_argument("read_hierarchy: short exit line");
    }
    return LatentHierarchy(std::move(cluster_of), std::move(entrances), std::move(exits));
}

void save_mdp(const std::string& path, const TabularMdp& mdp) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_mdp(os, mdp);
}

TabularMdp load_mdp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    return read_mdp(is);
}

}  // namespace hrl
