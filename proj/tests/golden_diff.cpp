// golden_diff A B: token-wise comparison with a numeric tolerance.
// Lines carrying the output directory are skipped.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

namespace {

bool skip(const std::string& line) {
    return line.rfind("# out=", 0) == 0 || line.find("\"out\":") != std::string::npos;
}

std::vector<std::string> lines(const char* path) {
    std::ifstream f(path);
    if (!f) {
        std::fprintf(stderr, "cannot open %s\n", path);
        std::exit(2);
    }
    std::vector<std::string> v;
    for (std::string s; std::getline(f, s);)
        if (!skip(s)) v.push_back(s);
    return v;
}

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> v;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == ':' || c == '[' || c == ']' || c == '{' || c == '}' || c == '"') {
            if (!cur.empty()) v.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) v.push_back(cur);
    return v;
}

bool same(const std::string& a, const std::string& b) {
    if (a == b) return true;
    char *ea = nullptr, *eb = nullptr;
    const double x = std::strtod(a.c_str(), &ea), y = std::strtod(b.c_str(), &eb);
    if (*ea != '\0' || *eb != '\0' || ea == a.c_str() || eb == b.c_str()) return false;
    return std::abs(x - y) <= 1e-12 + 1e-9 * std::max(std::abs(x), std::abs(y));
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: golden_diff expected actual\n");
        return 2;
    }
    const auto a = lines(argv[1]), b = lines(argv[2]);
    if (a.size() != b.size()) {
        std::fprintf(stderr, "%s: %zu lines, %s: %zu lines\n", argv[1], a.size(), argv[2], b.size());
        return 1;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ta = tokens(a[i]), tb = tokens(b[i]);
        bool ok = ta.size() == tb.size();
        for (std::size_t k = 0; ok && k < ta.size(); ++k) ok = same(ta[k], tb[k]);
        if (!ok) {
            std::fprintf(stderr, "line %zu differs\n  expected: %s\n  actual:   %s\n", i + 1, a[i].c_str(), b[i].c_str());
            return 1;
        }
    }
    return 0;
}
