#pragma once

#include <complex>
#include <vector>

namespace arrowlab {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    template <class F> auto integrate(F&& f) const {
        decltype(f(0.0)) s{};
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// n-point Gauss-Legendre rule on [a, b].
QuadRule gauss_legendre(int n, double a = -1.0, double b = 1.0);
// Composite Gauss-Legendre over the given panel edges.
QuadRule composite_gauss(const std::vector<double>& edges, int order);
// Uniform panels on [a, b].
std::vector<double> uniform_edges(double a, double b, int panels);
// Panels on [a, b] refined geometrically toward a (ratio 1/2 down to a + min_width).
std::vector<double> graded_edges(double a, double b, int panels, double min_width);

} // namespace arrowlab
