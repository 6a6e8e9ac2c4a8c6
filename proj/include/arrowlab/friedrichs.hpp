#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arrowlab/quadrature.hpp"

namespace arrowlab {

using cplx = std::complex<double>;

// Real form factor g(w) on [0, w_max], analytically continued to complex w.
struct FormFactor {
    std::string name;
    std::function<cplx(cplx)> g;

    // g(w) = exp(-a w)
    static FormFactor exponential(double a = 0.5);
    double operator()(double w) const { return g(cplx(w, 0.0)).real(); }
    cplx operator()(cplx z) const { return g(z); }
};

struct FriedrichsModel {
    double omega1 = 1.0;
    double lambda = 0.1;
    FormFactor g = FormFactor::exponential();
    double omega_max = 20.0;

    void validate() const;
};

enum class Sheet { First, Second };

struct AlphaOptions {
    int panels = 400;
    int order = 16;
};

// alpha(z) = z - w1 - lambda^2 int_0^wmax g^2(w)/(z - w) dw on the first sheet;
// alpha_II(z) = alpha(z) + 2 pi i lambda^2 g^2(z) below the cut.
cplx alpha(cplx z, Sheet sheet, const FriedrichsModel& m, const AlphaOptions& opt = {});
// PV int_0^wmax g^2(w)/(x - w) dw for 0 < x < wmax.
double principal_value(const FriedrichsModel& m, double x, const AlphaOptions& opt = {});
// alpha(x + i0) = x - w1 - lambda^2 PV + i pi lambda^2 g^2(x).
cplx alpha_boundary(const FriedrichsModel& m, double x, const AlphaOptions& opt = {});

struct ResonancePole {
    cplx z;               // beta1 - i gamma1/2
    double beta1 = 0.0;
    double gamma1 = 0.0;
    double residual = 0.0; // |alpha_II(z)|
    int iterations = 0;
    double derivative = 0.0; // |alpha_II'(z)|; small values signal a multiple root
};

ResonancePole find_pole(const FriedrichsModel& m, int max_iter = 100, double tol = 1e-12);
double golden_rule_rate(const FriedrichsModel& m);
double pole_approximation(const ResonancePole& pole, double t);

// Level coupled to n modes w_k = (k + 1/2) dw with couplings lambda g(w_k) sqrt(dw).
class DiscretizedFriedrichs {
  public:
    DiscretizedFriedrichs(const FriedrichsModel& m, int n_modes);

    int modes() const { return n_; }
    double spacing() const { return dw_; }
    double recurrence_time() const;
    Eigen::MatrixXd hamiltonian() const;
    const Eigen::VectorXd& energies() const { return energies_; }
    // |<1|E_j>|^2
    const Eigen::VectorXd& overlaps() const { return overlaps_; }
    cplx amplitude(double t) const;
    double survival(double t) const { return std::norm(amplitude(t)); }

  private:
    FriedrichsModel model_;
    int n_;
    double dw_;
    Eigen::VectorXd energies_;
    Eigen::VectorXd overlaps_;
};

// A(t) = int lambda^2 g^2(w) / |alpha(w + i0)|^2 e^{-iwt} dw.
class SpectralDensityPath {
  public:
    explicit SpectralDensityPath(const FriedrichsModel& m, int panels = 2000, int order = 16);

    const QuadRule& rule() const { return rule_; }
    const std::vector<double>& density() const { return density_; }
    double total_weight() const;
    cplx amplitude(double t) const;
    double survival(double t) const { return std::norm(amplitude(t)); }

  private:
    QuadRule rule_;
    std::vector<double> density_;
};

struct SurvivalSeries {
    std::vector<double> t;
    std::vector<double> p_oracle;
    std::vector<double> p_quadrature;
    std::vector<double> p_pole;
    std::vector<bool> flagged; // beyond half the oracle recurrence time
    double recurrence_time = 0.0;
};

struct SurvivalOptions {
    int n_modes = 2000;
    int panels = 2000;
    int order = 16;
};

SurvivalSeries survival_probability(const FriedrichsModel& m, const std::vector<double>& t_grid,
                                    const ResonancePole& pole, const SurvivalOptions& opt = {});

struct DecayFit {
    double rate = 0.0;
    double r2 = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
};
// Log-linear fit of P over [1/gamma, min(6/gamma, t_rec/2)].
DecayFit fit_mid_regime(const std::vector<double>& t, const std::vector<double>& p, double gamma,
                        double recurrence_time);

// Mixed state in the discretized basis {|z1,->, |w_k,->}: index 0 is the
// resonance, indices 1..M the continuum nodes with quadrature weights.
struct MixedState {
    std::vector<double> omega;
    std::vector<double> weights;
    Eigen::MatrixXcd rho; // (M+1) x (M+1) coefficients
};

struct MixedDecay {
    Eigen::MatrixXcd rho_star; // continuum block, phases e^{-i(w-w')t}
    Eigen::MatrixXcd rho1;     // resonance/continuum cross terms, phases only
    Eigen::MatrixXcd rho2;     // resonance diagonal
    double weight1 = 1.0;      // e^{-gamma1 t / 2}
    double weight2 = 1.0;      // e^{-gamma1 t}
    Eigen::MatrixXcd total() const { return rho_star + weight1 * rho1 + weight2 * rho2; }
};

MixedDecay mixed_state_decay(const MixedState& s, const ResonancePole& pole, double t);
// (rho|O) = sum_ab D_a rho_ab D_b O_ba with D = (1, w_1, ..., w_M).
cplx mixed_pairing(const MixedState& s, const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& obs);
// Von Neumann entropy of the continuum block with quadrature weights folded in.
double continuum_entropy(const MixedState& s, const Eigen::MatrixXcd& rho_star);

struct ThermalState {
    std::vector<double> omega;
    std::vector<double> weights;
    std::vector<double> equilibrium; // Z T^{-3/2} e^{-w/T}
    std::vector<double> fluctuation; // f(w) e^{-2 gamma(w) t}
    double z = 0.0;
    double trace = 0.0;              // int (rho* + fluctuation tr rho1^(w))
    double trace_equilibrium = 0.0;
    double trace_fluctuation = 0.0;
};

// Per-mode state: equilibrium |0><0| weight plus fluctuation times the
// traceless operator |1><1| - |0><0|.
ThermalState thermal_many_mode(double temperature, const std::function<double(double)>& gamma,
                               const std::function<double(double)>& f, double t, double omega_max = 0.0,
                               int panels = 400, int order = 16);

struct LyapunovSeries {
    Eigen::MatrixXd gamma; // Gamma_ij = gamma_i + gamma_j, the decay exponent of |rho_ij|^2
    std::vector<double> t;
    std::vector<double> y;       // sum |rho_ij|^2 e^{-Gamma_ij t}
    std::vector<double> y_unitary; // same with the real parts of the spectrum only
};

LyapunovSeries lambda_lyapunov(const std::vector<cplx>& spectrum, const Eigen::MatrixXcd& rho,
                               const std::vector<double>& t_grid);

struct TraceEnergyReport {
    double zero_norm = 0.0;        // max |<z*,left| z,right>| over complex eigenvalues
    double biorthogonality = 0.0;  // max |l_i^T r_j - delta_ij|
    double self_pairing_min = 0.0; // min |l_i^T r_i| after normalization (Hermitian: 1)
    double energy = 0.0;           // max |<z,-|M|z,->| over complex eigenvalues
    double trace_error = 0.0;      // |sum_i l_i^T rho r_i - tr rho|
    double trace_drift = 0.0;      // max_t |tr rho(t) - tr rho(0)|
    bool has_complex = false;
};

TraceEnergyReport trace_energy_checks(const Eigen::MatrixXd& m, const Eigen::MatrixXcd& rho,
                                      const std::vector<double>& t_grid);

} // namespace arrowlab
