#include "arrowlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "arrowlab/error.hpp"
#include "arrowlab/transfer.hpp"

namespace arrowlab {

namespace {

double eta(double v) { return v < kDensityFloor ? 0.0 : -v * std::log(v); }

} // namespace

double gibbs_entropy(const Density& d, double norm_tol) {
    require(d.is_nonnegative(), "density must be non-negative");
    require(std::abs(integral(d) - 1.0) <= norm_tol, "density is not normalized");
    double s = 0.0;
    for (double v : d.values()) s += eta(v);
    return s * d.grid().cell_volume();
}

EntropyValue conditional_entropy(const Density& rho, const Density& sigma) {
    Grid h = common_refinement(rho.grid(), sigma.grid());
    Density r = refine(rho, h);
    Density s = refine(sigma, h);
    EntropyValue out;
    double acc = 0.0;
    for (std::size_t c = 0; c < h.size(); ++c) {
        if (r[c] < kDensityFloor) continue;
        if (s[c] < kDensityFloor) {
            out.minus_infinity = true;
            out.diagnostic = "support of rho not contained in support of sigma (cell " + std::to_string(c) + ")";
            return out;
        }
        acc -= r[c] * std::log(r[c] / s[c]);
    }
    out.value = acc * h.cell_volume();
    return out;
}

Density max_entropy_uniform(int base, int level) { return Density::uniform(Grid::line(base, level)); }

CanonicalResult canonical_density(const Density& alpha, double target_mean, double tol) {
    auto vals = alpha.values();
    require(!vals.empty(), "empty energy function");
    const auto [mn_it, mx_it] = std::minmax_element(vals.begin(), vals.end());
    const double amin = *mn_it, amax = *mx_it;
    const double vol = alpha.grid().cell_volume();

    auto moments = [&](double nu, double& z, double& mean, double& var) {
        double s0 = 0, s1 = 0, s2 = 0;
        for (double a : vals) {
            double w = std::exp(-nu * (a - amin));
            s0 += w;
            s1 += w * a;
            s2 += w * a * a;
        }
        mean = s1 / s0;
        var = std::max(0.0, s2 / s0 - mean * mean);
        z = s0 * vol * std::exp(-nu * amin);
    };

    CanonicalResult res;
    double nu = 0.0;
    if (amax - amin <= 1e-15 * std::max(1.0, std::abs(amax))) {
        if (std::abs(target_mean - amin) > 1e-12 * std::max(1.0, std::abs(amin)))
            throw InvalidArgument("no canonical density: target mean differs from the constant energy");
    } else {
        if (!(target_mean > amin && target_mean < amax))
            throw InvalidArgument("no canonical density: target mean outside (min, max) of the energy");
        double z, m, v;
        auto f = [&](double x) {
            moments(x, z, m, v);
            return m - target_mean;
        };
        double lo = -1.0, hi = 1.0;
        const double scale = 1.0 / (amax - amin);
        lo *= scale;
        hi *= scale;
        while (f(lo) < 0.0) lo *= 2.0;
        while (f(hi) > 0.0) hi *= 2.0;
        const double rel = tol * std::max(1.0, std::abs(target_mean));
        for (int i = 0; i < 200 && hi - lo > 1e-3 * (std::abs(lo) + std::abs(hi) + scale); ++i) {
            double mid = 0.5 * (lo + hi);
            (f(mid) > 0.0 ? lo : hi) = mid;
            ++res.iterations;
        }
        nu = 0.5 * (lo + hi);
        for (int i = 0; i < 100; ++i) {
            double g = f(nu);
            ++res.iterations;
            if (std::abs(g) <= rel) break;
            double step = g / v; // d mean / d nu = -var
            double next = nu + step;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            (g > 0.0 ? lo : hi) = nu;
            nu = next;
        }
        if (std::abs(f(nu)) > rel) throw NumericalFailure("canonical density: nu solver did not converge");
    }
    double z, m, v;
    moments(nu, z, m, v);
    std::vector<double> rv(vals.size());
    for (std::size_t c = 0; c < rv.size(); ++c) rv[c] = std::exp(-nu * vals[c]) / z;
    res.density = Density(alpha.grid(), std::move(rv));
    res.nu = nu;
    res.z = z;
    res.entropy = std::log(z) + nu * m;
    return res;
}

Density random_density(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> v(g.size());
    for (auto& x : v) x = u(rng);
    return Density::normalized(g, std::move(v));
}

StochasticKernel random_positive_kernel(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = u(rng);
        m.col(j) /= m.col(j).sum();
    }
    return StochasticKernel(std::move(m));
}

StochasticKernel random_permutation_kernel(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(p[j]), static_cast<Eigen::Index>(j)) = 1.0;
    return StochasticKernel(std::move(m));
}

VoigtReport voigt_monotonicity_suite(const StochasticKernel& k, std::size_t trials, std::uint64_t seed) {
    const std::size_t n = k.size();
    std::size_t level = 0;
    for (std::size_t s = 1; s < n; s *= 2) ++level;
    require((std::size_t{1} << level) == n, "kernel size must be a power of two");
    const Grid g = Grid::line(2, static_cast<int>(level));
    std::mt19937_64 rng(seed);
    VoigtReport rep;
    rep.trials = trials;
    rep.worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trials; ++i) {
        Density rho = random_density(g, rng);
        Density sigma = random_density(g, rng);
        EntropyValue before = conditional_entropy(rho, sigma);
        EntropyValue after = conditional_entropy(apply_markov(k, rho), apply_markov(k, sigma));
        double diff = after.value - before.value;
        rep.worst = std::min(rep.worst, diff);
        rep.largest = std::max(rep.largest, std::abs(diff));
        if (diff > 1e-14) ++rep.increased;
    }
    if (trials == 0) rep.worst = 0.0;
    return rep;
}

double entropy_gap_quadratic(const Density& rho_star, const Density& rho1, double gamma, double t) {
    Grid h = common_refinement(rho_star.grid(), rho1.grid());
    Density s = refine(rho_star, h);
    Density r = refine(rho1, h);
    double acc = 0.0;
    for (std::size_t c = 0; c < h.size(); ++c) {
        if (s[c] < kDensityFloor) throw InvalidArgument("equilibrium density has an empty cell");
        acc += r[c] * r[c] / s[c];
    }
    return -0.5 * std::exp(-2.0 * gamma * t) * acc * h.cell_volume();
}

EntropyValue entropy_gap_exact(const Density& rho_star, const Density& rho1, double gamma, double t) {
    Density rho = rho_star + std::exp(-gamma * t) * rho1;
    if (!rho.is_nonnegative()) throw InvalidArgument("perturbed density is negative somewhere");
    return conditional_entropy(rho, rho_star);
}

GibbsEnergyRelation gibbs_energy_relation(const Density& rho1, const Density& rho2, const Density& omega,
                                          double temperature) {
    require(temperature > 0.0, "temperature must be positive");
    std::vector<double> w(omega.size());
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = std::exp(-omega[c] / temperature);
    Density star = Density::normalized(omega.grid(), std::move(w));
    GibbsEnergyRelation r;
    EntropyValue h1 = conditional_entropy(rho1, star);
    EntropyValue h2 = conditional_entropy(rho2, star);
    if (h1.minus_infinity || h2.minus_infinity) throw NumericalFailure("conditional entropy is -infinity");
    r.delta_s = h2.value - h1.value;
    r.delta_h = gibbs_entropy(rho2) - gibbs_entropy(rho1);
    r.delta_e = pairing(rho2 - rho1, omega);
    r.residual = r.delta_s - (r.delta_h - r.delta_e / temperature);
    return r;
}

std::vector<EntropyValue> conditional_entropy_series(const MapSpec& map, const Density& rho, const Density& sigma,
                                                     int t_max, const Partition* coarse) {
    require(t_max >= 0, "t_max must be >= 0");
    std::vector<EntropyValue> out;
    Density r = rho, s = sigma;
    for (int t = 0; t <= t_max; ++t) {
        if (coarse)
            out.push_back(conditional_entropy(coarse_grain(r, *coarse), coarse_grain(s, *coarse)));
        else
            out.push_back(conditional_entropy(r, s));
        if (t < t_max) {
            r = fp_step(map, r);
            s = fp_step(map, s);
        }
    }
    return out;
}

} // namespace arrowlab
