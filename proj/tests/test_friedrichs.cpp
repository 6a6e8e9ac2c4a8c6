#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"

#include "arrowlab/error.hpp"
#include "arrowlab/friedrichs.hpp"

using namespace arrowlab;

namespace {

FriedrichsModel base_model(double lambda = 0.1) {
    FriedrichsModel m;
    m.omega1 = 1.0;
    m.lambda = lambda;
    m.omega_max = 20.0;
    return m;
}

double gk(const std::function<double(double)>& f, double a, double b) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14, &err);
}

// PV int_0^M e^{-w}/(x - w) dw by subtraction, adaptive Gauss-Kronrod
double pv_oracle(double x, double mmax) {
    auto f = [x](double w) {
        double d = x - w;
        if (std::abs(d) < 1e-12) return std::exp(-x);
        return (std::exp(-w) - std::exp(-x)) / d;
    };
    return gk(f, 0.0, x) + gk(f, x, mmax) + std::exp(-x) * std::log(x / (mmax - x));
}

} // namespace

TEST_SUITE("friedrichs") {

TEST_CASE("alpha on the first sheet") {
    FriedrichsModel free = base_model(0.0);
    cplx z(1.3, 0.4);
    CHECK(std::abs(alpha(z, Sheet::First, free) - (z - 1.0)) == 0.0);

    FriedrichsModel m = base_model();
    cplx z0(1.0, 1.0);
    double re = gk([&](double w) { return std::exp(-w) * (z0 - w).real() / std::norm(z0 - w); }, 0.0, 20.0);
    double im = gk([&](double w) { return std::exp(-w) * (z0 - w).imag() / std::norm(z0 - w); }, 0.0, 20.0);
    cplx oracle = z0 - 1.0 - 0.01 * cplx(re, -im);
    CHECK(std::abs(alpha(z0, Sheet::First, m) - oracle) < 1e-8);
    CHECK_THROWS_AS(alpha(cplx(2.0, 0.0), Sheet::First, m), InvalidArgument);
    CHECK_THROWS_AS(alpha(cplx(2.0, 0.5), Sheet::Second, m), InvalidArgument);
}

TEST_CASE("second sheet continues across the cut") {
    FriedrichsModel m = base_model();
    for (double x : {0.3, 1.0, 2.5, 7.0, 15.0}) {
        cplx below = alpha(cplx(x, -1e-10), Sheet::Second, m);
        cplx above = alpha(cplx(x, 1e-10), Sheet::First, m);
        CHECK(std::abs(below - above) < 1e-8);
        CHECK(std::abs(alpha_boundary(m, x) - above) < 1e-8);
        // imaginary part of the boundary value is pi lambda^2 g^2
        CHECK(alpha_boundary(m, x).imag() == doctest::Approx(M_PI * 0.01 * std::exp(-x)).epsilon(1e-9));
        CHECK(principal_value(m, x) == doctest::Approx(pv_oracle(x, 20.0)).epsilon(1e-9));
    }
}

TEST_CASE("resonance pole") {
    FriedrichsModel m = base_model();
    ResonancePole p = find_pole(m);
    CHECK(p.residual < 1e-10);
    CHECK(p.gamma1 > 0.0);
    CHECK(std::abs(alpha(p.z, Sheet::Second, m)) < 1e-10);
    CHECK(p.z.imag() == doctest::Approx(-0.5 * p.gamma1));
    double gr = golden_rule_rate(m);
    CHECK(gr == doctest::Approx(2 * M_PI * 0.01 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::abs(p.gamma1 / gr - 1.0) < 0.1);
    double shift = 0.01 * pv_oracle(1.0, 20.0);
    CHECK(std::abs((p.beta1 - 1.0) / shift - 1.0) < 0.1);

    // |z1 - w1| = O(lambda^2)
    std::vector<double> lx, ly;
    for (double lam : {0.05, 0.02, 0.01}) {
        ResonancePole q = find_pole(base_model(lam));
        lx.push_back(std::log(lam));
        ly.push_back(std::log(std::abs(q.z - 1.0)));
    }
    double slope1 = (ly[1] - ly[0]) / (lx[1] - lx[0]);
    double slope2 = (ly[2] - ly[1]) / (lx[2] - lx[1]);
    CHECK(slope1 == doctest::Approx(2.0).epsilon(0.02));
    CHECK(slope2 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("pole approximation") {
    ResonancePole p;
    p.gamma1 = 0.05;
    CHECK(pole_approximation(p, 0.0) == 1.0);
    CHECK(pole_approximation(p, 20.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("survival probability by two paths") {
    FriedrichsModel m = base_model();
    ResonancePole pole = find_pole(m);
    std::vector<double> ts;
    for (int i = 0; i <= 60; ++i) ts.push_back(i * 1.0);
    SurvivalSeries s = survival_probability(m, ts, pole, SurvivalOptions{400, 800, 16});
    CHECK(s.p_oracle[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.p_quadrature[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.recurrence_time == doctest::Approx(2 * M_PI * 400 / 20.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(!s.flagged[i]);
        worst = std::max(worst, std::abs(s.p_oracle[i] - s.p_quadrature[i]));
    }
    CHECK(worst < 1e-3);

    SpectralDensityPath sd(m, 800, 16);
    CHECK(sd.total_weight() == doctest::Approx(1.0).epsilon(1e-10));

    // Zeno: vanishing slope and quadratic onset 1 - <dH^2> t^2
    DiscretizedFriedrichs d(m, 400);
    const double dt = 1e-4;
    CHECK(std::abs(d.survival(dt) - d.survival(-dt)) / (2 * dt) < 1e-6);
    double var = 0.0;
    for (int k = 0; k < 400; ++k) {
        double w = (k + 0.5) * d.spacing();
        var += 0.01 * std::exp(-w) * d.spacing();
    }
    CHECK((1.0 - d.survival(dt)) / (dt * dt) == doctest::Approx(var).epsilon(1e-4));

    FriedrichsModel free = base_model(0.0);
    SurvivalSeries f = survival_probability(free, ts, pole, SurvivalOptions{50, 50, 8});
    for (double v : f.p_oracle) CHECK(v == 1.0);
    for (double v : f.p_quadrature) CHECK(v == 1.0);
}

TEST_CASE("discretized hamiltonian") {
    DiscretizedFriedrichs d(base_model(), 50);
    Eigen::MatrixXd h = d.hamiltonian();
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h(0, 0) == 1.0);
    CHECK(d.overlaps().sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.energies().minCoeff() > -0.5);
}

TEST_CASE("mid regime decay fit") {
    std::vector<double> t, p;
    for (int i = 0; i <= 300; ++i) {
        t.push_back(i);
        p.push_back(std::exp(-0.02 * i));
    }
    DecayFit f = fit_mid_regime(t, p, 0.02, 1000.0);
    CHECK(f.rate == doctest::Approx(0.02).epsilon(1e-10));
    CHECK(f.t_lo == doctest::Approx(50.0));
    CHECK(f.t_hi == doctest::Approx(300.0));
}

TEST_CASE("mixed state decay") {
    const int n = 40;
    MixedState s;
    for (int k = 0; k < n; ++k) {
        s.omega.push_back((k + 0.5) * 0.25);
        s.weights.push_back(0.25);
    }
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd a(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) a(i, j) = cplx(nd(rng), nd(rng));
    s.rho = a * a.adjoint();
    ResonancePole pole;
    pole.beta1 = 1.0;
    pole.gamma1 = 0.05;
    pole.z = cplx(1.0, -0.025);

    MixedState c = s;
    c.rho.row(0).setZero();
    c.rho.col(0).setZero();
    for (double t : {0.0, 3.0, 40.0}) {
        MixedDecay d = mixed_state_decay(c, pole, t);
        CHECK((d.total() - d.rho_star).cwiseAbs().maxCoeff() == 0.0);
    }

    Eigen::MatrixXcd obs = Eigen::MatrixXcd::Ones(n + 1, n + 1);
    std::vector<double> ts, ys;
    for (int i = 0; i <= 50; ++i) {
        double t = i * 0.1 / pole.gamma1;
        MixedDecay d = mixed_state_decay(s, pole, t);
        ts.push_back(t);
        ys.push_back(std::abs(mixed_pairing(s, d.weight2 * d.rho2, obs)));
    }
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double ly = std::log(ys[i]);
        st += ts[i];
        sy += ly;
        stt += ts[i] * ts[i];
        sty += ts[i] * ly;
    }
    double nn = static_cast<double>(ts.size());
    double slope = (sty - st * sy / nn) / (stt - st * st / nn);
    CHECK(-slope == doctest::Approx(pole.gamma1).epsilon(0.01));

    double h0 = continuum_entropy(s, mixed_state_decay(s, pole, 0.0).rho_star);
    for (double t : {1.0, 10.0, 100.0})
        CHECK(continuum_entropy(s, mixed_state_decay(s, pole, t).rho_star) == doctest::Approx(h0).epsilon(1e-10));
}

TEST_CASE("thermal many mode state") {
    auto gam = [](double w) { return 0.1 + 0.01 * w; };
    auto zero = [](double) { return 0.0; };
    auto f = [](double w) { return std::sin(w) * std::exp(-w); };
    ThermalState eq = thermal_many_mode(1.5, gam, zero, 2.0);
    for (double v : eq.fluctuation) CHECK(v == 0.0);
    CHECK(eq.trace_equilibrium == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {0.0, 10.0, 50.0}) {
        ThermalState s = thermal_many_mode(1.5, gam, f, t);
        CHECK(std::abs(s.trace - 1.0) < 1e-10);
        CHECK(s.trace_fluctuation == 0.0);
    }
    // Z solves the normalization of T^{-3/2} e^{-w/T}
    CHECK(eq.z == doctest::Approx(std::pow(1.5, 1.5) / 1.5 / (1.0 - std::exp(-40.0))).epsilon(1e-12));
    CHECK_THROWS_AS(thermal_many_mode(-1.0, gam, f, 0.0), InvalidArgument);
}

TEST_CASE("lambda lyapunov functional") {
    std::vector<double> ts;
    for (int i = 0; i <= 100; ++i) ts.push_back(0.5 * i);
    Eigen::MatrixXcd one = Eigen::MatrixXcd::Ones(1, 1);
    auto c = lambda_lyapunov({cplx(1.0, 0.0)}, one, ts);
    for (double y : c.y) CHECK(y == 1.0);

    std::vector<cplx> spec{cplx(1.0, -0.1), cplx(2.0, -0.05)};
    Eigen::MatrixXcd r(2, 2);
    r << 0.6, cplx(0.2, 0.1), cplx(0.2, -0.1), 0.4;
    auto s = lambda_lyapunov(spec, r, ts);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        CHECK(s.y[i] < s.y[i - 1]);
        // closed form sum |r_ij|^2 e^{-(g_i + g_j) t} with g = 0.2, 0.1
        double g[2] = {0.2, 0.1};
        double ref = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) ref += std::norm(r(a, b)) * std::exp(-(g[a] + g[b]) * ts[i]);
        CHECK(s.y[i] == doctest::Approx(ref).epsilon(1e-12));
        CHECK(s.y_unitary[i] == doctest::Approx(s.y_unitary[0]).epsilon(1e-14));
    }
    CHECK(s.y.back() < 1e-3);
    CHECK((s.gamma - s.gamma.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.gamma.minCoeff() > 0.0);
    CHECK_THROWS_AS(lambda_lyapunov({cplx(1.0, 0.1)}, one, ts), InvalidArgument);
}

TEST_CASE("trace and energy checks") {
    Eigen::MatrixXd m(2, 2);
    m << 0.0, 1.0, -2.0, -1.0; // eigenvalues (-1 +- i sqrt 7)/2
    Eigen::MatrixXcd rho(2, 2);
    rho << 0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3;
    std::vector<double> ts{0.0, 0.5, 1.0, 2.0, 5.0};
    auto rep = trace_energy_checks(m, rho, ts);
    CHECK(rep.has_complex);
    CHECK(rep.zero_norm < 1e-10);
    CHECK(rep.energy < 1e-10);
    CHECK(rep.biorthogonality < 1e-12);
    CHECK(rep.trace_error < 1e-12);
    CHECK(rep.trace_drift < 1e-10);

    Eigen::MatrixXd h(2, 2);
    h << 1.0, 0.3, 0.3, 2.0;
    auto herm = trace_energy_checks(h, rho, ts);
    CHECK(!herm.has_complex);
    CHECK(herm.self_pairing_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(herm.trace_drift < 1e-10);
    Eigen::MatrixXd deg = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(trace_energy_checks(deg, rho, ts), InvalidArgument);
}

}
