#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "hrl/envs.hpp"

namespace hrl::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T v{};
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw ConfigError("bad number for " + key + ": '" + text + "'");
    return v;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    Config c;
    c.origin_ = origin;
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            c.values_[name] = trim(node.data());
            continue;
        }
        for (const auto& [key, leaf] : node) c.values_[name + "." + key] = trim(leaf.data());
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

const std::string* Config::find(const std::string& key) const {
    used_.insert(key);
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto* v = find(key);
    return v ? *v : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto* v = find(key);
    return v ? parse_number<int>(key, *v) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto* v = find(key);
    return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto* v = find(key);
    return v ? parse_number<double>(key, *v) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw ConfigError("bad boolean for " + key + ": '" + *v + "'");
}

std::vector<int> Config::get_int_list(const std::string& key, std::vector<int> fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    std::vector<int> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<int>(key, trim(item)));
    if (out.empty()) throw ConfigError("empty list for " + key);
    return out;
}

void Config::reject_unknown(const std::vector<std::string>& sections) const {
    for (const auto& [key, value] : values_) {
        if (used_.count(key)) continue;
        const auto dot = key.find('.');
        const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
        if (std::find(sections.begin(), sections.end(), section) != sections.end())
            throw ConfigError(origin_ + ": unknown key '" + key + "'");
    }
}

std::string Config::canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) {
        if (k == "out" || k == "plot") continue;
        out += k + "=" + v + "\n";
    }
    return out;
}

std::uint64_t Config::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

TaskFamily family_from_config(const Config& cfg) {
    const std::string kind = cfg.get_string("family.kind", "four_room");
    if (kind == "four_room") {
        const int horizon = cfg.get_int("family.horizon", 20);
        const int tasks = cfg.get_int("family.tasks", 6);
        const double slip = cfg.get_double("family.slip", 0.0);
        const bool dummy = cfg.get_bool("family.dummy_start", false);
        auto specs = six_task_four_room_specs(horizon);
        if (tasks < 1 || tasks > static_cast<int>(specs.size()))
            throw ConfigError("family.tasks must lie in [1," + std::to_string(specs.size()) + "]");
        specs.resize(static_cast<std::size_t>(tasks));
        for (auto& s : specs) {
            s.slip = slip;
            s.dummy_start = dummy;
        }
        return make_four_room_family(specs);
    }
    if (kind == "tree") {
        BinaryTreeSpec base;
        base.depth = cfg.get_int("family.depth", 4);
        base.epsilon = cfg.get_double("family.epsilon", 0.1);
        base.horizon = cfg.get_int("family.horizon", 3 * base.depth + 3);
        base.leaf = static_cast<std::uint32_t>(cfg.get_int("family.leaf", 0));
        base.a_star = cfg.get_int("family.a_star", 0);
        // Tasks differ only in the gate exit.
        TaskFamily fam;
        fam.name = "tree";
        for (int e = 0; e < 2; ++e) {
            auto spec = base;
            spec.e_star = e;
            auto env = make_binary_tree(spec, TreeVariant::full);
            fam.hierarchy = env.hierarchy;
            fam.tasks.push_back(std::move(env.mdp));
        }
        fam.check_shape();
        return fam;
    }
    if (kind == "chain" || kind == "two_arm") {
        const int n = cfg.get_int("family.n", kind == "chain" ? 14 : 8);
        auto env = kind == "chain" ? make_high_variance_chain(n) : make_two_arm_room(n);
        TaskFamily fam;
        fam.name = kind;
        fam.tasks.push_back(std::move(env.mdp));
        fam.hierarchy = std::move(env.hierarchy);
        return fam;
    }
    throw ConfigError("unknown family.kind '" + kind + "'");
}

MetaTrainConfig meta_train_config(const Config& cfg) {
    MetaTrainConfig m;
    auto i = [&](const char* k, int& v) { v = cfg.get_int(std::string("meta_train.") + k, v); };
    auto d = [&](const char* k, double& v) { v = cfg.get_double(std::string("meta_train.") + k, v); };
    i("n_ucbvi", m.n_ucbvi);
    i("n_ts", m.n_ts);
    i("thresh_ts", m.thresh_ts);
    i("n_euler_rf", m.n_euler_rf);
    i("n_rf", m.n_rf);
    i("thresh_rf", m.thresh_rf);
    m.reference_tasks = cfg.get_int_list("meta_train.reference_tasks", m.reference_tasks);
    i("n_ed", m.n_ed);
    i("thresh_ed", m.thresh_ed);
    i("n_euler_el", m.n_euler_el);
    i("n_el", m.n_el);
    i("thresh_el", m.thresh_el);
    i("n_euler_bf", m.n_euler_bf);
    i("n_bf", m.n_bf);
    i("thresh_bf", m.thresh_bf);
    d("beta", m.beta);
    d("zeta", m.zeta);
    d("bonus_scale", m.bonus_scale);
    d("failure_prob", m.failure_prob);
    return m;
}

MetaTestConfig meta_test_config(const Config& cfg) {
    MetaTestConfig m;
    auto i = [&](const char* k, int& v) { v = cfg.get_int(std::string("meta_test.") + k, v); };
    auto d = [&](const char* k, double& v) { v = cfg.get_double(std::string("meta_test.") + k, v); };
    i("h_eff", m.h_eff);
    i("width", m.width);
    d("gamma", m.gamma);
    d("beta", m.beta);
    d("zeta", m.zeta);
    d("oracle_eps", m.oracle_eps);
    i("h_bar", m.h_bar);
    i("episodes", m.episodes);
    d("bonus_scale", m.bonus_scale);
    d("failure_prob", m.failure_prob);
    m.check_width = cfg.get_bool("meta_test.check_width", m.check_width);
    if (m.episodes < 1) throw ConfigError("meta_test.episodes must be positive");
    return m;
}

SeparationConfig separation_config(const Config& cfg) {
    SeparationConfig s;
    s.depths = cfg.get_int_list("separation.depths", s.depths);
    s.horizon_slope = cfg.get_int("separation.horizon_slope", s.horizon_slope);
    s.horizon_offset = cfg.get_int("separation.horizon_offset", s.horizon_offset);
    s.epsilon = cfg.get_double("separation.epsilon", s.epsilon);
    s.episodes = cfg.get_int("separation.episodes", s.episodes);
    s.seeds = cfg.get_int("separation.seeds", s.seeds);
    s.bonus_scale = cfg.get_double("separation.bonus_scale", s.bonus_scale);
    s.failure_prob = cfg.get_double("separation.failure_prob", s.failure_prob);
    s.reduction = cfg.get_bool("separation.reduction", s.reduction);
    if (s.seeds < 1) throw ConfigError("separation.seeds must be positive");
    if (s.episodes < 1) throw ConfigError("separation.episodes must be positive");
    return s;
}

}  // namespace hrl::app
