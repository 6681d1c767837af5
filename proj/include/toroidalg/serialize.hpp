#pragma once

#include "toroidalg/cycfield.hpp"
#include "toroidalg/liestruct.hpp"
#include "toroidalg/toroidal.hpp"

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace toroidalg {

using json = nlohmann::json;

constexpr int kReportSchema = 1;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json to_json(const Rational& q);
json to_json(const CycScalar& c);
std::string coset_key(const Coset& c); // "(0,1)"
// list of {degree: [t0_num, r...], kind, index, coeff}
json to_json(const ToroidalElement& x);
// "mu,nu" with exact fractions
std::pair<Rational, Rational> parse_cocycle(const std::string& s);

// what a run is about: a packaged example or a custom so-type configuration
struct RunConfig {
    std::string example = "baby-tkk"; // baby-tkk | full-tkk | custom
    std::vector<std::vector<int>> cosets;
    std::vector<int> orders; // optional; checked against the automorphism orders
    Rational level = 1;
    std::vector<std::pair<Rational, Rational>> cocycles = {{0, 0}, {1, 0}}; // (mu, nu)
    long depth = 3;
    std::vector<std::string> assemblies = {"toroidal", "eala"};
    std::vector<long> hw_labels = {1, 0, 0};
    uint64_t seed = 1;
};

RunConfig example_config(const std::string& name);
// keys: example, algebra, cosets, orders, level_c, mu, nu, depth, assembly, hw_labels, seed;
// also cocycles and assemblies, so a report's config block reads back
RunConfig config_from_json(const json& j);
json config_to_json(const RunConfig& c);

json read_json_file(const std::string& path);
// writes to a sibling temporary and renames it into place
void write_json_atomic(const std::string& path, const json& j);

} // namespace toroidalg
