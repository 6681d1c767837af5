#include "toroidalg/serialize.hpp"

#include "toroidalg/cliffordtkk.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace toroidalg {

json to_json(const Rational& q) { return rational_str(q); }

json to_json(const CycScalar& c) { return c.str(); }

std::string coset_key(const Coset& c)
{
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

json to_json(const ToroidalElement& x)
{
    static const char* kinds[] = {"alg", "K", "D"};
    json out = json::array();
    for (const auto& [key, c] : x.terms) {
        std::vector<long> deg{key.deg.t0};
        deg.insert(deg.end(), key.deg.r.begin(), key.deg.r.end());
        out.push_back({{"degree", deg}, {"kind", kinds[static_cast<int>(key.kind)]},
                       {"index", key.index}, {"coeff", to_json(c)}});
    }
    return out;
}

std::pair<Rational, Rational> parse_cocycle(const std::string& s)
{
    size_t comma = s.find(',');
    if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
        throw ConfigError("cocycle must be 'mu,nu', got '" + s + "'");
    try {
        return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
    } catch (const std::exception& e) {
        throw ConfigError("cocycle '" + s + "': " + e.what());
    }
}

RunConfig example_config(const std::string& name)
{
    RunConfig c;
    c.example = name;
    if (name == "baby-tkk") {
        c.cosets = {{0, 0}, {0, 1}, {1, 0}};
    } else if (name == "full-tkk") {
        c.cosets = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        c.hw_labels = {1, 0, 0, 0};
    } else {
        throw ConfigError("unknown example '" + name + "' (expected baby-tkk or full-tkk)");
    }
    return c;
}

namespace {

Rational fraction(const json& v, const char* key)
{
    try {
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_string()) return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: bad fraction for '") + key + "': " + e.what());
    }
    throw ConfigError(std::string("config: '") + key + "' must be an integer or a fraction string");
}

} // namespace

RunConfig config_from_json(const json& j)
{
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    RunConfig c;
    c.example = "custom";
    try {
        if (j.contains("example") && j.at("example").get<std::string>() != "custom") {
            c = example_config(j.at("example").get<std::string>());
        }
        if (j.contains("algebra") && j.at("algebra").get<std::string>() != "so")
            throw ConfigError("config: only algebra \"so\" is supported");
        if (j.contains("cosets")) {
            const json& cs = j.at("cosets");
            if (cs.is_string()) c.cosets = parse_cosets(cs.get<std::string>());
            else c.cosets = cs.get<std::vector<std::vector<int>>>();
            if (c.example != "custom" && c.cosets != example_config(c.example).cosets)
                throw ConfigError("config: cosets differ from the packaged example '" + c.example + "'");
        } else if (j.contains("index_set")) {
            throw ConfigError("config: give the Jordan torus by 'cosets'; 'index_set' is not accepted");
        }
        if (c.cosets.empty()) throw ConfigError("config: no cosets given");
        make_jordan_torus(c.cosets);
        if (j.contains("orders")) c.orders = j.at("orders").get<std::vector<int>>();
        if (j.contains("level_c")) c.level = fraction(j.at("level_c"), "level_c");
        if (j.contains("mu") || j.contains("nu")) {
            Rational mu = j.contains("mu") ? fraction(j.at("mu"), "mu") : Rational(0);
            Rational nu = j.contains("nu") ? fraction(j.at("nu"), "nu") : Rational(0);
            c.cocycles = {{mu, nu}};
        } else if (j.contains("cocycles")) {
            c.cocycles.clear();
            for (const json& p : j.at("cocycles"))
                c.cocycles.emplace_back(fraction(p.at("mu"), "mu"), fraction(p.at("nu"), "nu"));
            if (c.cocycles.empty()) throw ConfigError("config: empty cocycle list");
        }
        if (j.contains("depth")) c.depth = j.at("depth").get<long>();
        if (c.depth < 0) throw ConfigError("config: depth must be non-negative");
        if (j.contains("assembly")) {
            std::string a = j.at("assembly").get<std::string>();
            if (a != "toroidal" && a != "eala") throw ConfigError("config: assembly must be toroidal or eala");
            c.assemblies = {a};
        } else if (j.contains("assemblies")) {
            c.assemblies = j.at("assemblies").get<std::vector<std::string>>();
            for (const auto& a : c.assemblies)
                if (a != "toroidal" && a != "eala") throw ConfigError("config: assembly must be toroidal or eala");
            if (c.assemblies.empty()) throw ConfigError("config: empty assembly list");
        }
        if (j.contains("hw_labels")) c.hw_labels = j.at("hw_labels").get<std::vector<long>>();
        if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

json config_to_json(const RunConfig& c)
{
    json j;
    j["example"] = c.example;
    j["cosets"] = c.cosets;
    if (!c.orders.empty()) j["orders"] = c.orders;
    j["level_c"] = to_json(c.level);
    json cc = json::array();
    for (const auto& [mu, nu] : c.cocycles) cc.push_back({{"mu", to_json(mu)}, {"nu", to_json(nu)}});
    j["cocycles"] = cc;
    j["depth"] = c.depth;
    j["assemblies"] = c.assemblies;
    j["hw_labels"] = c.hw_labels;
    j["seed"] = c.seed;
    return j;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json_atomic(const std::string& path, const json& j)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << j.dump(2) << "\n";
        if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

} // namespace toroidalg
