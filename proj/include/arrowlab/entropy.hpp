#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arrowlab/maps.hpp"
#include "arrowlab/measure.hpp"

namespace arrowlab {

// Conditional entropy value; minus_infinity marks a support violation and
// `value` is then meaningless.
struct EntropyValue {
    double value = 0.0;
    bool minus_infinity = false;
    std::string diagnostic;
};

// Values below this are treated as exact zeros.
inline constexpr double kDensityFloor = 1e-300;

// -sum rho ln rho vol, with 0 ln 0 = 0.
double gibbs_entropy(const Density& d, double norm_tol = 1e-9);
// -sum rho ln(rho/sigma) vol.
EntropyValue conditional_entropy(const Density& rho, const Density& sigma);

Density max_entropy_uniform(int base, int level);

struct CanonicalResult {
    Density density;
    double nu = 0.0;
    double z = 1.0;
    double entropy = 0.0; // ln Z + nu * mean
    int iterations = 0;
};
// rho* = exp(-nu alpha)/Z with nu fixed by <alpha> = target_mean.
CanonicalResult canonical_density(const Density& alpha, double target_mean, double tol = 1e-10);

struct VoigtReport {
    std::size_t trials = 0;
    double worst = 0.0;        // min over trials of H_C(K rho|K sigma) - H_C(rho|sigma)
    double largest = 0.0;      // max |difference|
    std::size_t increased = 0; // differences > 1e-14
};
VoigtReport voigt_monotonicity_suite(const StochasticKernel& k, std::size_t trials, std::uint64_t seed);

StochasticKernel random_positive_kernel(std::size_t n, std::mt19937_64& rng);
StochasticKernel random_permutation_kernel(std::size_t n, std::mt19937_64& rng);
// Strictly positive normalized density on the grid.
Density random_density(const Grid& g, std::mt19937_64& rng);

// -e^{-2 gamma t} (1/2) int rho1^2 / rho*.
double entropy_gap_quadratic(const Density& rho_star, const Density& rho1, double gamma, double t);
// H_C(rho* + e^{-gamma t} rho1 | rho*).
EntropyValue entropy_gap_exact(const Density& rho_star, const Density& rho1, double gamma, double t);

struct GibbsEnergyRelation {
    double delta_s = 0.0; // H_C(rho2|rho*) - H_C(rho1|rho*)
    double delta_h = 0.0; // H(rho2) - H(rho1)
    double delta_e = 0.0; // int (rho2 - rho1) omega
    double residual = 0.0; // delta_s - (delta_h - delta_e / T)
};
// rho* is the canonical density exp(-omega/T)/Z on the grid of omega.
GibbsEnergyRelation gibbs_energy_relation(const Density& rho1, const Density& rho2, const Density& omega,
                                          double temperature);

// H_C(P_t rho | P_t sigma) for t = 0..t_max, optionally after coarse graining
// both arguments.
std::vector<EntropyValue> conditional_entropy_series(const MapSpec& map, const Density& rho, const Density& sigma,
                                                     int t_max, const Partition* coarse = nullptr);

} // namespace arrowlab
