#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace arrowlab::cli {

struct Param {
    std::string key; // flag name without the leading dashes
    std::string value;
    std::string help;
};

// Resolved parameters for one experiment run. Precedence, lowest first:
// built-in defaults, config file, ARROWLAB_SEED (seed only), command-line flags.
class RunConfig {
  public:
    RunConfig(std::string experiment, const std::vector<Param>& defaults);

    const std::string& experiment() const { return experiment_; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, const std::string& value);
    void load_file(const std::filesystem::path& path);
    void apply_env();

    std::string str(const std::string& key) const;
    double num(const std::string& key) const;
    long long integer(const std::string& key) const;
    std::vector<double> list(const std::string& key) const;
    std::uint64_t seed() const;
    int jobs() const { return static_cast<int>(integer("jobs")); }
    std::filesystem::path out_dir() const { return str("out"); }

    // "# arrowlab <experiment>" followed by one "# key=value" line per parameter.
    std::string header() const;
    nlohmann::ordered_json json() const;

  private:
    std::string experiment_;
    std::map<std::string, std::string> values_;
};

// Parameters every experiment accepts.
std::vector<Param> common_params();

// Writes into the run's output directory; CSV files get the config header.
class Outputs {
  public:
    explicit Outputs(const RunConfig& cfg);
    void csv(const std::string& name, const std::string& body) const;
    void json(const std::string& name, nlohmann::ordered_json body) const;

  private:
    const RunConfig& cfg_;
    std::filesystem::path dir_;
};

// printf("%.12g")
std::string num(double v);

} // namespace arrowlab::cli
