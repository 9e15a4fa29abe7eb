#include "holosched/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "holosched/error.hpp"

namespace holosched::config {

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& what) {
    fail(errc::parse, name + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_number(const std::string& s, const std::string& name, int line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        parse_fail(name, line, "expected a number, got '" + s + "'");
    return v;
}

long long to_integer(const std::string& s, const std::string& name, int line) {
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        parse_fail(name, line, "expected an integer, got '" + s + "'");
    return v;
}

sim::Range to_range(const std::string& s, const std::string& name, int line) {
    const auto parts = split_ws(s);
    if (parts.size() != 2)
        parse_fail(name, line, "expected a range 'lo hi', got '" + s + "'");
    return {to_number(parts[0], name, line), to_number(parts[1], name, line)};
}

// "a:1 b:2" -> ordered (key, value) pairs
std::vector<std::pair<std::string, double>> to_pairs(const std::string& s,
                                                     const std::string& name, int line) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& tok : split_ws(s)) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
            parse_fail(name, line, "expected 'key:value', got '" + tok + "'");
        out.emplace_back(tok.substr(0, colon), to_number(tok.substr(colon + 1), name, line));
    }
    return out;
}

struct OpRegistry {
    std::map<std::string, int> by_name;

    int intern(const std::string& opname, sim::ScenarioTemplate& tmpl) {
        auto it = by_name.find(opname);
        if (it != by_name.end()) return it->second;
        const int id = static_cast<int>(tmpl.ops.size());
        tmpl.ops.push_back({id, opname});
        by_name.emplace(opname, id);
        return id;
    }
};

} // namespace

sim::ScenarioTemplate parse_text(const std::string& text, const std::string& name) {
    sim::ScenarioTemplate tmpl;
    tmpl.classes.clear();
    tmpl.ops.clear();

    OpRegistry ops;
    std::map<std::string, std::pair<sim::Range, int>> capacity_overrides; // op name -> range, line
    std::string section;
    model::DataClass* cls = nullptr;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto cut = raw.find_first_of("#;");
        std::string s = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') parse_fail(name, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            cls = nullptr;
            if (section.rfind("class", 0) == 0) {
                const std::string label = trim(section.substr(5));
                if (label.empty()) parse_fail(name, line, "class section needs a name");
                model::DataClass c;
                c.id = static_cast<int>(tmpl.classes.size());
                tmpl.classes.push_back(c);
                cls = &tmpl.classes.back();
                section = "class";
            } else if (section != "experiment" && section != "topology" &&
                       section != "compute" && section != "likability") {
                parse_fail(name, line, "unknown section [" + section + "]");
            }
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string::npos) parse_fail(name, line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) parse_fail(name, line, "expected 'key = value'");

        if (section == "experiment") {
            if (key == "n_runs")
                tmpl.n_runs = static_cast<int>(to_integer(value, name, line));
            else if (key == "seed")
                tmpl.rng_seed = static_cast<std::uint64_t>(to_integer(value, name, line));
            else
                parse_fail(name, line, "unknown key '" + key + "' in [experiment]");
        } else if (section == "topology") {
            if (key == "n_servers")
                tmpl.n_servers = static_cast<int>(to_integer(value, name, line));
            else if (key == "n_users")
                tmpl.n_users = static_cast<int>(to_integer(value, name, line));
            else if (key == "uplink_bw")
                tmpl.uplink_bw = to_range(value, name, line);
            else if (key == "inter_bw")
                tmpl.inter_bw = to_range(value, name, line);
            else
                parse_fail(name, line, "unknown key '" + key + "' in [topology]");
        } else if (section == "compute") {
            if (key == "capacity")
                tmpl.capacity = to_range(value, name, line);
            else if (key.rfind("capacity.", 0) == 0)
                capacity_overrides[key.substr(9)] = {to_range(value, name, line), line};
            else if (key == "local_capacity")
                tmpl.local_capacity = to_number(value, name, line);
            else if (key == "split_overhead")
                tmpl.split_overhead = to_number(value, name, line);
            else
                parse_fail(name, line, "unknown key '" + key + "' in [compute]");
        } else if (section == "class") {
            if (key == "size_bits")
                cls->size_bits = to_number(value, name, line);
            else if (key == "workload")
                for (const auto& [opname, units] : to_pairs(value, name, line))
                    cls->base_workload[ops.intern(opname, tmpl)] = units;
            else
                parse_fail(name, line, "unknown key '" + key + "' in class section");
        } else if (section == "likability") {
            if (key == "l_ref")
                tmpl.l_ref_s = to_number(value, name, line);
            else if (key == "knots") {
                tmpl.knots.clear();
                for (const auto& [r, score] : to_pairs(value, name, line))
                    tmpl.knots.push_back({to_number(r, name, line), score});
            } else
                parse_fail(name, line, "unknown key '" + key + "' in [likability]");
        } else {
            parse_fail(name, line, "key '" + key + "' outside any section");
        }
    }

    for (const auto& [opname, entry] : capacity_overrides) {
        auto it = ops.by_name.find(opname);
        if (it == ops.by_name.end())
            parse_fail(name, entry.second,
                       "capacity override for unknown op '" + opname + "'");
        tmpl.capacity_by_op[it->second] = entry.first;
    }
    return tmpl;
}

sim::ScenarioTemplate parse_json_text(const std::string& text, const std::string& name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse, name + ": " + e.what());
    }

    sim::ScenarioTemplate tmpl;
    tmpl.classes.clear();
    tmpl.ops.clear();
    OpRegistry ops;

    try {
        const auto range_of = [](const nlohmann::json& j) {
            return sim::Range{j.at(0).get<double>(), j.at(1).get<double>()};
        };

        if (doc.contains("experiment")) {
            const auto& e = doc["experiment"];
            if (e.contains("n_runs")) tmpl.n_runs = e["n_runs"].get<int>();
            if (e.contains("seed")) tmpl.rng_seed = e["seed"].get<std::uint64_t>();
        }
        if (doc.contains("topology")) {
            const auto& t = doc["topology"];
            if (t.contains("n_servers")) tmpl.n_servers = t["n_servers"].get<int>();
            if (t.contains("n_users")) tmpl.n_users = t["n_users"].get<int>();
            if (t.contains("uplink_bw")) tmpl.uplink_bw = range_of(t["uplink_bw"]);
            if (t.contains("inter_bw")) tmpl.inter_bw = range_of(t["inter_bw"]);
        }
        if (doc.contains("compute")) {
            const auto& c = doc["compute"];
            if (c.contains("capacity")) tmpl.capacity = range_of(c["capacity"]);
            if (c.contains("local_capacity"))
                tmpl.local_capacity = c["local_capacity"].get<double>();
            if (c.contains("split_overhead"))
                tmpl.split_overhead = c["split_overhead"].get<double>();
        }
        for (const auto& jc : doc.value("classes", nlohmann::json::array())) {
            model::DataClass cls;
            cls.id = static_cast<int>(tmpl.classes.size());
            cls.size_bits = jc.at("size_bits").get<double>();
            for (const auto& [opname, units] : jc.at("workload").items())
                cls.base_workload[ops.intern(opname, tmpl)] = units.get<double>();
            tmpl.classes.push_back(std::move(cls));
        }
        if (doc.contains("compute") && doc["compute"].contains("capacity_overrides")) {
            for (const auto& [opname, jr] : doc["compute"]["capacity_overrides"].items()) {
                auto it = ops.by_name.find(opname);
                if (it == ops.by_name.end())
                    fail(errc::parse,
                         name + ": capacity override for unknown op '" + opname + "'");
                tmpl.capacity_by_op[it->second] = range_of(jr);
            }
        }
        if (doc.contains("likability")) {
            const auto& l = doc["likability"];
            if (l.contains("l_ref")) tmpl.l_ref_s = l["l_ref"].get<double>();
            for (const auto& jk : l.value("knots", nlohmann::json::array()))
                tmpl.knots.push_back({jk.at(0).get<double>(), jk.at(1).get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse, name + ": " + e.what());
    }
    return tmpl;
}

sim::ScenarioTemplate load_template(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::io, "cannot open template '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) fail(errc::io, "cannot read template '" + path + "'");

    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return json ? parse_json_text(buf.str(), path) : parse_text(buf.str(), path);
}

} // namespace holosched::config
