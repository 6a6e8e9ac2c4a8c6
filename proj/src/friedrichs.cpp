#include "arrowlab/friedrichs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "arrowlab/error.hpp"

namespace arrowlab {

namespace {

constexpr double kPi = std::numbers::pi;

cplx g2(const FriedrichsModel& m, cplx z) {
    cplx v = m.g(z);
    return v * v;
}

// d/dx g^2(x) by a complex step; g is analytic.
double g2_prime(const FriedrichsModel& m, double x) {
    const double h = 1e-20;
    return g2(m, cplx(x, h)).imag() / h;
}

class PVEvaluator {
  public:
    PVEvaluator(const FriedrichsModel& m, const AlphaOptions& opt)
        : m_(m), rule_(composite_gauss(uniform_edges(0.0, m.omega_max, opt.panels), opt.order)) {
        vals_.reserve(rule_.size());
        for (double w : rule_.nodes) vals_.push_back(m.g(w) * m.g(w));
    }

    // int_0^M (g^2(w) - g^2(z)) / (z - w) dw
    cplx subtracted(cplx z) const {
        const cplx gz = g2(m_, z);
        cplx s = 0.0;
        for (std::size_t i = 0; i < rule_.size(); ++i) s += rule_.weights[i] * (vals_[i] - gz) / (z - rule_.nodes[i]);
        return s;
    }

    double pv(double x) const {
        const double gx = m_.g(x) * m_.g(x);
        const double tiny = 1e-9 * m_.omega_max;
        double s = 0.0;
        for (std::size_t i = 0; i < rule_.size(); ++i) {
            const double d = x - rule_.nodes[i];
            s += rule_.weights[i] * (std::abs(d) < tiny ? -g2_prime(m_, x) : (vals_[i] - gx) / d);
        }
        return s + gx * std::log(x / (m_.omega_max - x));
    }

  private:
    const FriedrichsModel& m_;
    QuadRule rule_;
    std::vector<double> vals_;
};

} // namespace

FormFactor FormFactor::exponential(double a) {
    FormFactor f;
    f.name = "exp(-" + std::to_string(a) + " w)";
    f.g = [a](cplx z) { return std::exp(-a * z); };
    return f;
}

void FriedrichsModel::validate() const {
    require(omega1 > 0.0, "omega1 must be positive");
    require(std::isfinite(lambda), "lambda must be finite");
    require(omega_max > omega1, "omega_max must exceed omega1");
    require(static_cast<bool>(g.g), "form factor is not set");
}

cplx alpha(cplx z, Sheet sheet, const FriedrichsModel& m, const AlphaOptions& opt) {
    m.validate();
    const double lam2 = m.lambda * m.lambda;
    const bool on_cut = z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= m.omega_max;
    if (sheet == Sheet::First) {
        if (on_cut) throw InvalidArgument("alpha: z lies on the cut [0, omega_max] of the first sheet");
    } else {
        if (z.imag() > 0.0) throw InvalidArgument("alpha: the second sheet is reached from below the cut");
        if (on_cut) return alpha_boundary(m, z.real(), opt);
    }
    if (lam2 == 0.0) return z - m.omega1;
    PVEvaluator pv(m, opt);
    const cplx integral = pv.subtracted(z) + g2(m, z) * (std::log(z) - std::log(z - m.omega_max));
    cplx a = z - m.omega1 - lam2 * integral;
    if (sheet == Sheet::Second) a += cplx(0.0, 2.0 * kPi) * lam2 * g2(m, z);
    return a;
}

double principal_value(const FriedrichsModel& m, double x, const AlphaOptions& opt) {
    m.validate();
    require(x > 0.0 && x < m.omega_max, "principal value needs 0 < x < omega_max");
    return PVEvaluator(m, opt).pv(x);
}

cplx alpha_boundary(const FriedrichsModel& m, double x, const AlphaOptions& opt) {
    const double lam2 = m.lambda * m.lambda;
    const double gx = m.g(x);
    return {x - m.omega1 - lam2 * principal_value(m, x, opt), kPi * lam2 * gx * gx};
}

ResonancePole find_pole(const FriedrichsModel& m, int max_iter, double tol) {
    m.validate();
    const double lam2 = m.lambda * m.lambda;
    const double g1 = m.g(m.omega1);
    cplx z(m.omega1, -kPi * lam2 * g1 * g1);
    ResonancePole p;
    auto f = [&](cplx w) {
        if (w.imag() >= 0.0) w = cplx(w.real(), -1e-300);
        return alpha(w, Sheet::Second, m);
    };
    const double h = 1e-6;
    bool converged = false;
    cplx d = 1.0;
    for (int it = 0; it < max_iter; ++it) {
        p.iterations = it + 1;
        const cplx a = f(z);
        if (lam2 == 0.0 || std::abs(a) == 0.0) {
            converged = true;
            break;
        }
        d = (f(z + h) - f(z - h)) / (2.0 * h);
        if (std::abs(d) == 0.0) throw NumericalFailure("find_pole: vanishing derivative");
        const cplx step = a / d;
        z -= step;
        if (std::abs(step) < tol * std::max(1.0, std::abs(z))) {
            converged = true;
            break;
        }
    }
    p.z = z;
    p.beta1 = z.real();
    p.gamma1 = -2.0 * z.imag();
    p.residual = std::abs(f(z));
    p.derivative = std::abs(d);
    if (!converged || p.residual > 1e-10)
        throw NumericalFailure("find_pole: Newton iteration did not converge (residual " +
                               std::to_string(p.residual) + ")");
    return p;
}

double golden_rule_rate(const FriedrichsModel& m) {
    const double g1 = m.g(m.omega1);
    return 2.0 * kPi * m.lambda * m.lambda * g1 * g1;
}

double pole_approximation(const ResonancePole& pole, double t) {
    require(t >= 0.0, "t must be >= 0");
    return std::exp(-pole.gamma1 * t);
}

DiscretizedFriedrichs::DiscretizedFriedrichs(const FriedrichsModel& m, int n_modes) : model_(m), n_(n_modes) {
    m.validate();
    require(n_modes >= 1 && n_modes <= 20000, "mode count must be in [1, 20000]");
    dw_ = m.omega_max / n_modes;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian());
    if (es.info() != Eigen::Success) throw NumericalFailure("diagonalization of the discretized model failed");
    energies_ = es.eigenvalues();
    overlaps_ = es.eigenvectors().row(0).transpose().cwiseAbs2();
}

double DiscretizedFriedrichs::recurrence_time() const { return 2.0 * kPi / dw_; }

Eigen::MatrixXd DiscretizedFriedrichs::hamiltonian() const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_ + 1, n_ + 1);
    h(0, 0) = model_.omega1;
    for (int k = 0; k < n_; ++k) {
        const double w = (k + 0.5) * dw_;
        h(k + 1, k + 1) = w;
        h(0, k + 1) = h(k + 1, 0) = model_.lambda * model_.g(w) * std::sqrt(dw_);
    }
    return h;
}

cplx DiscretizedFriedrichs::amplitude(double t) const {
    cplx s = 0.0;
    for (Eigen::Index j = 0; j < energies_.size(); ++j) s += overlaps_(j) * std::exp(cplx(0.0, -energies_(j) * t));
    return s;
}

SpectralDensityPath::SpectralDensityPath(const FriedrichsModel& m, int panels, int order) {
    m.validate();
    rule_ = composite_gauss(graded_edges(0.0, m.omega_max, panels, 1e-12), order);
    PVEvaluator pv(m, AlphaOptions{});
    const double lam2 = m.lambda * m.lambda;
    density_.reserve(rule_.size());
    for (double w : rule_.nodes) {
        const double gw = m.g(w);
        const cplx a(w - m.omega1 - lam2 * pv.pv(w), kPi * lam2 * gw * gw);
        density_.push_back(lam2 * gw * gw / std::norm(a));
    }
}

double SpectralDensityPath::total_weight() const {
    double s = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) s += rule_.weights[i] * density_[i];
    return s;
}

cplx SpectralDensityPath::amplitude(double t) const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i)
        s += rule_.weights[i] * density_[i] * std::exp(cplx(0.0, -rule_.nodes[i] * t));
    return s;
}

SurvivalSeries survival_probability(const FriedrichsModel& m, const std::vector<double>& t_grid,
                                    const ResonancePole& pole, const SurvivalOptions& opt) {
    for (double t : t_grid) require(t >= 0.0, "survival times must be >= 0");
    SurvivalSeries s;
    s.t = t_grid;
    if (m.lambda == 0.0) {
        s.p_oracle.assign(t_grid.size(), 1.0);
        s.p_quadrature.assign(t_grid.size(), 1.0);
        s.p_pole.assign(t_grid.size(), 1.0);
        s.flagged.assign(t_grid.size(), false);
        s.recurrence_time = std::numeric_limits<double>::infinity();
        return s;
    }
    DiscretizedFriedrichs oracle(m, opt.n_modes);
    SpectralDensityPath quad(m, opt.panels, opt.order);
    s.recurrence_time = oracle.recurrence_time();
    for (double t : t_grid) {
        s.p_oracle.push_back(oracle.survival(t));
        s.p_quadrature.push_back(quad.survival(t));
        s.p_pole.push_back(pole_approximation(pole, t));
        s.flagged.push_back(t > 0.5 * s.recurrence_time);
    }
    return s;
}

DecayFit fit_mid_regime(const std::vector<double>& t, const std::vector<double>& p, double gamma,
                        double recurrence_time) {
    require(gamma > 0.0, "decay rate must be positive");
    DecayFit f;
    f.t_lo = 1.0 / gamma;
    f.t_hi = std::min(6.0 / gamma, 0.5 * recurrence_time);
    double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < f.t_lo || t[i] > f.t_hi || !(p[i] > 0.0)) continue;
        const double y = std::log(p[i]);
        st += t[i];
        sy += y;
        stt += t[i] * t[i];
        sty += t[i] * y;
        syy += y * y;
        ++n;
    }
    if (n < 3) throw NumericalFailure("mid-regime fit window holds fewer than 3 samples");
    const double nn = static_cast<double>(n);
    const double vt = stt - st * st / nn, vy = syy - sy * sy / nn, c = sty - st * sy / nn;
    f.rate = -c / vt;
    f.r2 = vy > 0.0 ? c * c / (vt * vy) : 1.0;
    return f;
}

MixedDecay mixed_state_decay(const MixedState& s, const ResonancePole& pole, double t) {
    const auto n = static_cast<Eigen::Index>(s.omega.size());
    require(s.weights.size() == s.omega.size(), "weights and nodes differ in length");
    require(s.rho.rows() == n + 1 && s.rho.cols() == n + 1, "coefficient matrix must be (M+1) x (M+1)");
    MixedDecay d;
    d.rho_star = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    d.rho1 = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    d.rho2 = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (Eigen::Index k = 1; k <= n; ++k)
        for (Eigen::Index l = 1; l <= n; ++l)
            d.rho_star(k, l) = s.rho(k, l) * std::exp(cplx(0.0, -(s.omega[k - 1] - s.omega[l - 1]) * t));
    for (Eigen::Index k = 1; k <= n; ++k) {
        d.rho1(0, k) = s.rho(0, k) * std::exp(cplx(0.0, -(pole.beta1 - s.omega[k - 1]) * t));
        d.rho1(k, 0) = s.rho(k, 0) * std::exp(cplx(0.0, -(s.omega[k - 1] - pole.beta1) * t));
    }
    d.rho2(0, 0) = s.rho(0, 0);
    d.weight1 = std::exp(-0.5 * pole.gamma1 * t);
    d.weight2 = std::exp(-pole.gamma1 * t);
    return d;
}

cplx mixed_pairing(const MixedState& s, const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& obs) {
    require(rho.rows() == obs.rows() && rho.cols() == obs.cols(), "state and observable sizes differ");
    Eigen::VectorXd dw(rho.rows());
    dw(0) = 1.0;
    for (Eigen::Index k = 1; k < dw.size(); ++k) dw(k) = s.weights[static_cast<std::size_t>(k - 1)];
    cplx acc = 0.0;
    for (Eigen::Index a = 0; a < rho.rows(); ++a)
        for (Eigen::Index b = 0; b < rho.cols(); ++b) acc += dw(a) * rho(a, b) * dw(b) * obs(b, a);
    return acc;
}

double continuum_entropy(const MixedState& s, const Eigen::MatrixXcd& rho_star) {
    const auto n = static_cast<Eigen::Index>(s.omega.size());
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
            a(k, l) = std::sqrt(s.weights[static_cast<std::size_t>(k)] * s.weights[static_cast<std::size_t>(l)]) *
                      rho_star(k + 1, l + 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = es.eigenvalues()(i);
        if (v > 1e-300) h -= v * std::log(v);
    }
    return h;
}

namespace {
// Diagonal of the per-mode fluctuation operator |1><1| - |0><0| in the basis (|0>, |1>).
constexpr double kMode[2] = {-1.0, 1.0};
} // namespace

ThermalState thermal_many_mode(double temperature, const std::function<double(double)>& gamma,
                               const std::function<double(double)>& f, double t, double omega_max, int panels,
                               int order) {
    require(temperature > 0.0 && std::isfinite(temperature), "temperature must be positive");
    require(t >= 0.0, "t must be >= 0");
    if (omega_max <= 0.0) omega_max = 40.0 * temperature;
    QuadRule rule = composite_gauss(uniform_edges(0.0, omega_max, panels), order);
    ThermalState s;
    s.omega = rule.nodes;
    s.weights = rule.weights;
    const double pre = std::pow(temperature, -1.5);
    double norm = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) norm += rule.weights[i] * pre * std::exp(-rule.nodes[i] / temperature);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalFailure("thermal weights are not normalizable");
    s.z = 1.0 / norm;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double w = rule.nodes[i];
        const double g = gamma(w);
        require(g >= 0.0, "mode decay rates must be non-negative");
        s.equilibrium.push_back(s.z * pre * std::exp(-w / temperature));
        s.fluctuation.push_back(f(w) * std::exp(-2.0 * g * t));
        s.trace_equilibrium += rule.weights[i] * s.equilibrium.back();
        s.trace_fluctuation += rule.weights[i] * s.fluctuation.back() * (kMode[0] + kMode[1]);
    }
    s.trace = s.trace_equilibrium + s.trace_fluctuation;
    return s;
}

LyapunovSeries lambda_lyapunov(const std::vector<cplx>& spectrum, const Eigen::MatrixXcd& rho,
                               const std::vector<double>& t_grid) {
    const auto n = static_cast<Eigen::Index>(spectrum.size());
    require(rho.rows() == n && rho.cols() == n, "coefficient matrix does not match the spectrum");
    for (const auto& z : spectrum)
        if (z.imag() > 0.0) throw InvalidArgument("spectrum has a positive imaginary part");
    LyapunovSeries s;
    s.gamma.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            s.gamma(i, j) = -2.0 * (spectrum[static_cast<std::size_t>(i)].imag() + spectrum[static_cast<std::size_t>(j)].imag());
    s.t = t_grid;
    for (double t : t_grid) {
        double y = 0.0, yu = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const cplx zi = spectrum[static_cast<std::size_t>(i)], zj = spectrum[static_cast<std::size_t>(j)];
                y += std::norm(rho(i, j) * std::exp(cplx(0.0, -1.0) * (zi - std::conj(zj)) * t));
                yu += std::norm(rho(i, j) * std::exp(cplx(0.0, -(zi.real() - zj.real()) * t)));
            }
        s.y.push_back(y);
        s.y_unitary.push_back(yu);
    }
    return s;
}

TraceEnergyReport trace_energy_checks(const Eigen::MatrixXd& m, const Eigen::MatrixXcd& rho,
                                      const std::vector<double>& t_grid) {
    require(m.rows() == m.cols() && m.rows() >= 2, "test matrix must be square with n >= 2");
    require(rho.rows() == m.rows() && rho.cols() == m.cols(), "state size does not match the test matrix");
    const Eigen::Index n = m.rows();
    Eigen::EigenSolver<Eigen::MatrixXd> right(m), left(m.transpose());
    if (right.info() != Eigen::Success || left.info() != Eigen::Success)
        throw NumericalFailure("eigendecomposition failed");
    const Eigen::VectorXcd lam = right.eigenvalues();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(lam(i) - lam(j)) < 1e-8 * scale) throw InvalidArgument("degenerate eigenpair");

    Eigen::MatrixXcd r = right.eigenvectors(), l(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < n; ++j)
            if (std::abs(left.eigenvalues()(j) - lam(i)) < std::abs(left.eigenvalues()(best) - lam(i))) best = j;
        l.col(i) = left.eigenvectors().col(best);
        l.col(i) /= (l.col(i).transpose() * r.col(i))(0, 0);
    }
    auto partner = [&](Eigen::Index i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < n; ++j)
            if (std::abs(lam(j) - std::conj(lam(i))) < std::abs(lam(best) - std::conj(lam(i)))) best = j;
        return best;
    };

    TraceEnergyReport rep;
    rep.self_pairing_min = 1.0;
    const Eigen::MatrixXcd pair = l.transpose() * r;
    rep.biorthogonality = (pair - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd mc = m.cast<cplx>();
    bool first_real = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index p = partner(i);
        const cplx norm = (l.col(p).transpose() * r.col(i))(0, 0);
        const cplx energy = (l.col(p).transpose() * mc * r.col(i))(0, 0);
        if (std::abs(lam(i).imag()) > 1e-12 * scale) {
            rep.has_complex = true;
            rep.zero_norm = std::max(rep.zero_norm, std::abs(norm));
            rep.energy = std::max(rep.energy, std::abs(energy));
        } else {
            rep.self_pairing_min = first_real ? std::abs(norm) : std::min(rep.self_pairing_min, std::abs(norm));
            first_real = false;
        }
    }

    auto biorth_trace = [&](const Eigen::MatrixXcd& x) {
        cplx s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += (l.col(i).transpose() * x * r.col(i))(0, 0);
        return s;
    };
    const cplx tr0 = rho.trace();
    rep.trace_error = std::abs(biorth_trace(rho) - tr0);
    const Eigen::MatrixXcd rinv = r.partialPivLu().inverse();
    for (double t : t_grid) {
        Eigen::VectorXcd ph(n), phi(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            ph(i) = std::exp(cplx(0.0, -1.0) * lam(i) * t);
            phi(i) = 1.0 / ph(i);
        }
        const Eigen::MatrixXcd u = r * ph.asDiagonal() * rinv;
        const Eigen::MatrixXcd uinv = r * phi.asDiagonal() * rinv;
        const Eigen::MatrixXcd rt = u * rho * uinv;
        rep.trace_drift = std::max({rep.trace_drift, std::abs(rt.trace() - tr0), std::abs(biorth_trace(rt) - tr0)});
    }
    return rep;
}

} // namespace arrowlab
