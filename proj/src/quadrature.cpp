#include "arrowlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "arrowlab/error.hpp"

namespace arrowlab {

namespace {

// Legendre P_n(x) and its derivative.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace

QuadRule gauss_legendre(int n, double a, double b) {
    require(n >= 1 && n <= 256, "Gauss-Legendre order must be in [1, 256]");
    QuadRule r;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    if (n == 1) {
        r.nodes = {mid};
        r.weights = {2.0 * half};
        return r;
    }
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
        r.nodes[lo] = mid - half * x;
        r.nodes[hi] = mid + half * x;
        r.weights[lo] = r.weights[hi] = w * half;
    }
    return r;
}

QuadRule composite_gauss(const std::vector<double>& edges, int order) {
    require(edges.size() >= 2, "need at least one panel");
    QuadRule base = gauss_legendre(order);
    QuadRule r;
    r.nodes.reserve((edges.size() - 1) * base.size());
    r.weights.reserve((edges.size() - 1) * base.size());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1];
        require(b > a, "panel edges must increase");
        for (std::size_t i = 0; i < base.size(); ++i) {
            r.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * base.nodes[i]);
            r.weights.push_back(0.5 * (b - a) * base.weights[i]);
        }
    }
    return r;
}

std::vector<double> uniform_edges(double a, double b, int panels) {
    require(panels >= 1 && b > a, "invalid panel layout");
    std::vector<double> e(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) e[static_cast<std::size_t>(i)] = a + (b - a) * i / panels;
    e.back() = b;
    return e;
}

std::vector<double> graded_edges(double a, double b, int panels, double min_width) {
    std::vector<double> u = uniform_edges(a, b, panels);
    require(min_width > 0.0, "grading width must be positive");
    std::vector<double> e{a};
    for (double w = u[1] - a; w > min_width; w *= 0.5) e.insert(e.begin() + 1, a + w);
    for (std::size_t i = 1; i < u.size(); ++i) e.push_back(u[i]);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

} // namespace arrowlab
