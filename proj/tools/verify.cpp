#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "arrowlab/entropy.hpp"
#include "arrowlab/error.hpp"
#include "arrowlab/friedrichs.hpp"
#include "arrowlab/quantum.hpp"
#include "arrowlab/transfer.hpp"
#include "experiments.hpp"

namespace arrowlab::cli {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

SuiteResult voigt(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = std::numeric_limits<double>::infinity(), perm = 0.0;
    for (int k = 0; k < 20; ++k) {
        worst = std::min(worst, voigt_monotonicity_suite(random_positive_kernel(16, rng), 50, rng()).worst);
        perm = std::max(perm, voigt_monotonicity_suite(random_permutation_kernel(16, rng), 20, rng()).largest);
    }
    return {"voigt", worst >= -1e-10 && perm < 1e-12,
            "worst H_C(K rho|K sigma) - H_C(rho|sigma) " + sci(worst) + ", permutation max |diff| " + sci(perm)};
}

SuiteResult superop(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    auto rnd = [&](Eigen::Index n) {
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
        return m;
    };
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        SuperOp a(3, rnd(9));
        Eigen::MatrixXcd al = rnd(3), be = rnd(3);
        SuperOp p = super_product(al, be);
        worst = std::max({worst, max_abs_diff(super_transpose(super_associated(a)), super_adjoint(a)),
                          max_abs_diff(super_adjoint(p), super_product(al.adjoint(), be.adjoint())),
                          max_abs_diff(super_associated(p), super_product(be.adjoint(), al.adjoint()))});
        Eigen::MatrixXcd h = rnd(3);
        h = (h + h.adjoint()).eval();
        SuperOp il = cplx(0.0, 1.0) * liouvillian(h);
        worst = std::max(worst, max_abs_diff(il, super_associated(il)));
    }
    return {"superop", worst < 1e-12, "max identity residual " + sci(worst)};
}

SuiteResult mixing(std::uint64_t) {
    const MapSpec renyi(MapKind::Renyi, 2), baker(MapKind::Baker, 2);
    Grid g = Grid::line(2, 16);
    Density d = Density::sample_1d(g, [](double x) { return std::exp(x); });
    d = Density::normalized(g, std::vector<double>(d.values().begin(), d.values().end()));
    std::vector<Density> probes;
    for (std::size_t i = 0; i < 4; ++i) probes.push_back(indicator(GridSet::interval(2, 2, i, i + 1)));
    ConvergenceReport r = convergence_report(renyi, d, probes, 14);

    std::vector<Density> squares;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) squares.push_back(indicator(GridSet::box(2, 2, 2, i, i + 1, j, j + 1)));
    ConvergenceReport b = convergence_report(baker, 2.0 * indicator(GridSet::box(2, 1, 0, 0, 1, 0, 1)), squares, 10);
    const bool ok = r.strong.converges && std::abs(r.strong.rate - 0.5) < 1e-2 && b.weak.converges && !b.strong.converges;
    return {"mixing", ok,
            "renyi strong rate " + sci(r.strong.rate) + ", baker weak " + (b.weak.converges ? "yes" : "no") +
                ", baker strong " + (b.strong.converges ? "yes" : "no")};
}

SuiteResult exactness(std::uint64_t) {
    const MapSpec renyi(MapKind::Renyi, 2);
    int bad = 0, n = 0;
    for (int k = 0; k <= 8; ++k)
        for (std::size_t i = 0; i < (std::size_t{1} << k); i += std::max<std::size_t>(1, (std::size_t{1} << k) / 8)) {
            GridSet a = GridSet::interval(2, k, i, i + 1);
            for (int t = 0; t <= 10; ++t, ++n)
                if (image_measure(renyi, a, t) != std::min(1.0, std::ldexp(a.measure(), t))) ++bad;
        }
    return {"exactness", bad == 0, std::to_string(bad) + " of " + std::to_string(n) + " image measures differ"};
}

SuiteResult lyapunov(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> nd;
    std::vector<double> ts;
    for (int i = 0; i <= 100; ++i) ts.push_back(0.2 * i);
    double rise = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 4;
        std::vector<cplx> spec;
        for (int i = 0; i < n; ++i) spec.emplace_back(3.0 * u(rng), -u(rng));
        Eigen::MatrixXcd rho(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rho(i, j) = cplx(nd(rng), nd(rng));
        LyapunovSeries y = lambda_lyapunov(spec, rho, ts);
        for (std::size_t k = 1; k < y.y.size(); ++k) rise = std::max(rise, y.y[k] - y.y[k - 1]);
    }
    return {"lyapunov", rise <= 1e-12, "largest increase of Y(t) " + sci(rise)};
}

using SuiteFn = SuiteResult (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& table() {
    static const std::vector<std::pair<std::string, SuiteFn>> t = {
        {"voigt", voigt}, {"superop", superop}, {"mixing", mixing}, {"exactness", exactness}, {"lyapunov", lyapunov}};
    return t;
}

} // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, f] : table()) v.push_back(n);
        v.push_back("all");
        return v;
    }();
    return names;
}

std::vector<SuiteResult> run_verify(const std::string& suite, std::uint64_t seed, int jobs) {
    std::vector<std::pair<std::string, SuiteFn>> chosen;
    for (const auto& e : table())
        if (suite == "all" || suite == e.first) chosen.push_back(e);
    if (chosen.empty()) throw InvalidArgument("unknown verify suite '" + suite + "'");
    std::vector<SuiteResult> out(chosen.size());
    parallel_for(chosen.size(), jobs, [&](std::size_t i) { out[i] = chosen[i].second(seed); });
    return out;
}

} // namespace arrowlab::cli
