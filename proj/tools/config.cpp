#include "config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "arrowlab/error.hpp"

namespace arrowlab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw InvalidArgument("parameter '" + key + "' is not a number: '" + text + "'");
    return v;
}

} // namespace

std::vector<Param> common_params() {
    return {{"seed", "1", "64-bit RNG seed"},
            {"out", ".", "output directory"},
            {"jobs", "1", "worker threads for independent sweep points"}};
}

RunConfig::RunConfig(std::string experiment, const std::vector<Param>& defaults) : experiment_(std::move(experiment)) {
    for (const auto& p : common_params()) values_[p.key] = p.value;
    for (const auto& p : defaults) values_[p.key] = p.value;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (!has(key)) throw InvalidArgument("unknown parameter '" + key + "' for experiment '" + experiment_ + "'");
    values_[key] = value;
}

void RunConfig::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file '" + path.string() + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "experiment") {
            if (value != experiment_)
                throw InvalidArgument("config file is for experiment '" + value + "', not '" + experiment_ + "'");
            continue;
        }
        set(key, value);
    }
}

void RunConfig::apply_env() {
    if (const char* s = std::getenv("ARROWLAB_SEED")) values_["seed"] = s;
}

std::string RunConfig::str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw InvalidArgument("missing parameter '" + key + "'");
    return it->second;
}

double RunConfig::num(const std::string& key) const { return parse_double(key, str(key)); }

long long RunConfig::integer(const std::string& key) const {
    const std::string text = str(key);
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw InvalidArgument("parameter '" + key + "' is not an integer: '" + text + "'");
    return v;
}

std::vector<double> RunConfig::list(const std::string& key) const {
    std::vector<double> v;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_double(key, trim(item)));
    if (v.empty()) throw InvalidArgument("parameter '" + key + "' is an empty list");
    return v;
}

std::uint64_t RunConfig::seed() const {
    const std::string text = str("seed");
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0' || errno == ERANGE || text[0] == '-')
        throw InvalidArgument("seed must be an unsigned 64-bit integer: '" + text + "'");
    return v;
}

std::string RunConfig::header() const {
    std::string h = "# arrowlab " + experiment_ + "\n";
    for (const auto& [k, v] : values_) h += "# " + k + "=" + v + "\n";
    return h;
}

nlohmann::ordered_json RunConfig::json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment_;
    for (const auto& [k, v] : values_) j[k] = v;
    j["seed"] = seed();
    return j;
}

Outputs::Outputs(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.out_dir()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw InvalidArgument("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

void Outputs::csv(const std::string& name, const std::string& body) const {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + (dir_ / name).string() + "'");
    f << cfg_.header() << body;
}

void Outputs::json(const std::string& name, nlohmann::ordered_json body) const {
    nlohmann::ordered_json j;
    j["config"] = cfg_.json();
    for (auto& [k, v] : body.items()) j[k] = v;
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + (dir_ / name).string() + "'");
    f << j.dump(2) << "\n";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace arrowlab::cli
