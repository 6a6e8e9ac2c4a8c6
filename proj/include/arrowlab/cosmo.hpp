#pragma once

#include <string>
#include <vector>

namespace arrowlab {

// Proper-frame thermodynamic state, c = 1.
struct ThermoState {
    double v = 1.0; // volume
    double p = 0.0; // pressure
    double E = 0.0; // energy
    double Q = 0.0; // heat
    double S = 0.0; // entropy
    double T = 1.0; // temperature
};

// State seen from a frame moving with speed u (Planck-Tolman transformation).
// E = (E0 + u^2 p0 v0)/sqrt(1-u^2); v, Q, T contract by sqrt(1-u^2); p, S invariant.
ThermoState boost_thermo(const ThermoState& s, double u);
// dW = sqrt(1-u^2) dW0 - u^2/sqrt(1-u^2) d(E0 + p0 v0)
double boost_work(double dW0, double dE0, double d_pv0, double u);
// dE - (dQ - dW) in the moving frame for a proper-frame process with
// dQ0 = dE0 + dW0.
double first_law_residual(const ThermoState& a, const ThermoState& b, double dW0, double u);

struct CosmoParams {
    double t0 = 1.0;      // present age
    double T0 = 1.0;      // present radiation temperature
    double omega1 = 1.5;  // characteristic energy
    double gamma = 0.1;   // relaxation rate
    double a0 = 1.0;      // present scale factor
    double c_prime = 1.0;

    void validate() const;
};

double radiation_temperature(double a, const CosmoParams& p);
// (4/3) C_S T^3 a^3 dsigma
double blackbody_comoving_entropy(double a, const CosmoParams& p, double c_s = 1.0, double dsigma = 1.0);
// Finite-difference d/dt (phi0 a^3) on a grid (second order, one-sided at the ends).
std::vector<double> comoving_entropy_rate(const std::vector<double>& t, const std::vector<double>& phi0,
                                          const std::vector<double>& a);

// Matter era a(t) = a0 (t/t0)^(2/3).
double scale_factor(double t, const CosmoParams& p);
double log_entropy_gap(double t, const CosmoParams& p);
double entropy_gap(double t, const CosmoParams& p);
// -gamma - 1/t + (2 w1/(3 T0 t0)) (t0/t)^(1/3)
double entropy_gap_rate(double t, const CosmoParams& p);

struct CriticalTimes {
    std::vector<double> times;      // sorted real critical times (0, 1 or 2)
    std::vector<double> u_roots;    // u = (t0/t)^(1/3)
    std::vector<double> residuals;  // |u^3 - A u + B|
    double asymptotic_1 = 0.0;      // t0 (3 T0/(2 w1))^(3/2)
    double asymptotic_2 = 0.0;      // (2 w1/(3 T0 gamma t0))^3 t0
    double discriminant = 0.0;      // 4 A^3 - 27 B^2
    std::string diagnostic;
};
CriticalTimes critical_times(const CosmoParams& p);

enum class Regime { ThermalizingEarly, ComplexityGrowth, FinalApproach };
std::string regime_name(Regime r);
Regime classify_regime(double t, const CosmoParams& p, const CriticalTimes& roots);
std::vector<Regime> regime_report(const CosmoParams& p, const std::vector<double>& t_grid);

} // namespace arrowlab
