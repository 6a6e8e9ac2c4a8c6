#pragma once

#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace arrowlab::cli {

struct Experiment {
    std::string name;
    std::string help;
    std::vector<Param> params;
    std::function<void(const RunConfig&)> run;
};

const std::vector<Experiment>& experiments();

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

const std::vector<std::string>& verify_suites();
// Runs one suite, or every suite for "all".
std::vector<SuiteResult> run_verify(const std::string& suite, std::uint64_t seed, int jobs);

// Calls f(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f);

} // namespace arrowlab::cli
