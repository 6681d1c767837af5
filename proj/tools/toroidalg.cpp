#include "toroidalg/cliffordtkk.hpp"
#include "toroidalg/pbw.hpp"
#include "toroidalg/suites.hpp"
#include "toroidalg/toroidal.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace toroidalg;

namespace {

int fail(const std::string& kind, const std::string& reason)
{
    json err = {{"schema", kReportSchema}, {"ok", false}, {"error", {{"kind", kind}, {"reason", reason}}}};
    std::cerr << err.dump() << "\n";
    return 2;
}

void summarize(const SuiteResult& r)
{
    for (const auto& [name, s] : r.report.at("suites").items()) {
        const char* state = s.contains("skipped") ? "skipped" : (s.at("ok").get<bool>() ? "ok" : "FAIL");
        std::cout << name << ": " << state << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"toroidal algebra and representation verifier"};
    app.require_subcommand(1);

    std::string example = "baby-tkk", config_path, out_path, cocycle;
    long depth = -1;
    uint64_t seed = 1;
    bool seed_given = false;
    auto common = [&](CLI::App* sub) {
        auto* ex = sub->add_option("--example", example, "packaged example: baby-tkk or full-tkk");
        auto* cf = sub->add_option("--config", config_path, "JSON configuration file");
        ex->excludes(cf);
        sub->add_option("--depth", depth, "truncation depth D");
        sub->add_option("--seed", seed, "seed for sampled elements")->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--cocycle", cocycle, "bracket parameters \"mu,nu\" (replaces the default pair list)");
        sub->add_option("--out", out_path, "report path (stdout when absent)");
    };
    std::vector<CLI::App*> subs;
    for (const std::string& c : suite_commands()) subs.push_back(app.add_subcommand(c));
    subs.push_back(app.add_subcommand("all", "every suite"));
    subs[0]->description("structure, toroidal bracket and appendix checks");
    subs[1]->description("TKK isomorphism onto the multiloop algebra");
    subs[2]->description("affine root action and its Weyl-word factorization");
    subs[3]->description("vertex operator representation checks");
    for (auto* s : subs) common(s);

    auto* affine = app.add_subcommand("affine", "affine root computations");
    affine->require_subcommand(1);
    auto* affine_factorize = affine->add_subcommand("factorize", "same as the top-level factorize");
    common(affine_factorize);

    std::string cosets, action;
    auto* tkk = app.add_subcommand("tkk", "TKK checks for an explicit coset list");
    tkk->add_option("--cosets", cosets, "cosets such as \"(0,0),(0,1),(1,0)\"")->required();
    tkk->add_option("action", action, "verify")->required()->check(CLI::IsMember({"verify"}));
    tkk->add_option("--out", out_path, "report path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string command;
    RunConfig cfg;
    try {
        if (tkk->parsed()) {
            command = "verify-tkk";
            cfg.example = "custom";
            cfg.cosets = parse_cosets(cosets);
            make_jordan_torus(cfg.cosets);
        } else {
            for (auto* s : subs)
                if (s->parsed()) command = s->get_name();
            if (affine_factorize->parsed()) command = "factorize";
            cfg = config_path.empty() ? example_config(example) : config_from_json(read_json_file(config_path));
            if (depth >= 0) cfg.depth = depth;
            if (seed_given) cfg.seed = seed;
            if (!cocycle.empty()) cfg.cocycles = {parse_cocycle(cocycle)};
        }
    } catch (const std::exception& e) {
        return fail("config", e.what());
    }

    SuiteResult r;
    try {
        r = run_command(command, cfg);
    } catch (const ConfigError& e) {
        return fail("config", e.what());
    } catch (const TruncationError& e) {
        return fail("depth", e.what());
    } catch (const MembershipError& e) {
        return fail("membership", e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }

    try {
        if (out_path.empty()) {
            std::cout << r.report.dump(2) << "\n";
        } else {
            write_json_atomic(out_path, r.report);
            summarize(r);
        }
    } catch (const std::exception& e) {
        return fail("io", e.what());
    }
    return r.ok ? 0 : 1;
}
