// arrowlab: experiment runner. Exit codes: 0 ok, 1 usage error, 2 invariant failure.
#include <cstdio>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "arrowlab/error.hpp"
#include "experiments.hpp"

using namespace arrowlab;
using namespace arrowlab::cli;

namespace {

struct Bound {
    const Experiment* exp;
    CLI::App* sub;
    std::map<std::string, std::string> flags;
    std::string config_file;
};

int run_experiment(Bound& b) {
    RunConfig cfg(b.exp->name, b.exp->params);
    if (!b.config_file.empty()) cfg.load_file(b.config_file);
    cfg.apply_env();
    for (const auto& [key, value] : b.flags)
        if (b.sub->count("--" + key) > 0) cfg.set(key, value);
    cfg.seed(); // validate early
    b.exp->run(cfg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arrowlab: transfer operators, entropy and decay experiments"};
    app.require_subcommand(1);

    std::vector<Bound> bound;
    bound.reserve(experiments().size());
    for (const auto& e : experiments()) {
        Bound b{&e, app.add_subcommand(e.name, e.help), {}, {}};
        b.sub->add_option("--config", b.config_file, "key=value config file")->check(CLI::ExistingFile);
        bound.push_back(std::move(b));
    }
    for (auto& b : bound) {
        std::vector<Param> all = common_params();
        all.insert(all.end(), b.exp->params.begin(), b.exp->params.end());
        for (const auto& p : all) {
            b.flags[p.key] = p.value;
            b.sub->add_option("--" + p.key, b.flags[p.key], p.help + " (default " + p.value + ")");
        }
    }

    std::string suite;
    std::string verify_seed = "1";
    int verify_jobs = 1;
    CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("suite", suite, "voigt, superop, mixing, exactness, lyapunov or all")
        ->required()
        ->check(CLI::IsMember(verify_suites()));
    verify->add_option("--seed", verify_seed, "RNG seed");
    verify->add_option("--jobs", verify_jobs, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (verify->parsed()) {
            RunConfig cfg("verify", {});
            cfg.set("seed", verify_seed);
            cfg.apply_env();
            if (verify->count("--seed") > 0) cfg.set("seed", verify_seed);
            bool ok = true;
            for (const auto& r : run_verify(suite, cfg.seed(), verify_jobs)) {
                std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
                ok = ok && r.pass;
            }
            return ok ? 0 : 2;
        }
        for (auto& b : bound)
            if (b.sub->parsed()) return run_experiment(b);
    } catch (const NumericalFailure& e) {
        std::fprintf(stderr, "arrowlab: invariant failed: %s\n", e.what());
        return 2;
    } catch (const InvalidArgument& e) {
        std::fprintf(stderr, "arrowlab: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "arrowlab: %s\n", e.what());
        return 2;
    }
    return 1;
}
