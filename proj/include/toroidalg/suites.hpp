#pragma once

#include "toroidalg/clifford_examples.hpp"
#include "toroidalg/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toroidalg {

struct SuiteResult {
    bool ok = false;
    bool skipped = false;
    json report;
};

// the Chevalley and affine data exist only for the packaged examples
std::optional<CliffordExample> packaged_example(const RunConfig& cfg);
// so(U) with the sign automorphisms of the configured Jordan torus
CliffordExample config_algebra(const RunConfig& cfg);

SuiteResult run_algebra_suite(const RunConfig& cfg);
SuiteResult run_tkk_suite(const RunConfig& cfg);
SuiteResult run_factorize_suite(const RunConfig& cfg);
SuiteResult run_rep_suite(const RunConfig& cfg);

const std::vector<std::string>& suite_commands(); // verify-algebra, verify-tkk, factorize, verify-rep
// one command or "all"; the envelope carries "schema", the config and one entry per suite
SuiteResult run_command(const std::string& command, const RunConfig& cfg);

} // namespace toroidalg
