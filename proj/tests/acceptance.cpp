// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include "arrowlab/cosmo.hpp"
#include "arrowlab/entropy.hpp"
#include "arrowlab/friedrichs.hpp"
#include "arrowlab/quantum.hpp"
#include "arrowlab/spectral.hpp"
#include "arrowlab/transfer.hpp"

using namespace arrowlab;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("%s [%d] %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0, double e = 0, double g = 0) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a, b, c, d, e, g);
    return buf;
}

void criterion1() {
    int mismatches = 0, checked = 0;
    for (int base : {2, 3, 5}) {
        Rational scale(1);
        for (std::size_t n = 0; n <= 8; ++n) {
            Poly<Rational> b = bernoulli_poly<Rational>(n);
            if (fp_poly(b, base).c != (scale * b).c) ++mismatches;
            ++checked;
            scale /= Rational(base);
        }
    }
    report(1, mismatches == 0,
           fmt("eigen relation U B_n = beta^-n B_n exact in rationals: %g of %g cases mismatch", mismatches, checked));
}

void criterion2() {
    BernoulliBasis basis(16);
    double worst = 0.0;
    for (std::size_t n = 0; n <= 8; ++n)
        for (std::size_t m = 0; m <= 8; ++m)
            worst = std::max(worst, std::abs(left_functional(n, basis[m], basis) - (n == m ? 1.0 : 0.0)));
    report(2, worst < 1e-10, fmt("biorthonormality max error %.3e (< 1e-10)", worst));
}

void criterion3() {
    const MapSpec renyi(MapKind::Renyi, 2), baker(MapKind::Baker, 2);
    const int level = 22;
    Grid g = Grid::line(2, level);
    std::vector<double> v(g.size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = std::exp((static_cast<double>(c) + 0.5) / static_cast<double>(v.size()));
    Density d = Density::normalized(g, std::move(v));
    std::vector<Density> probes;
    for (int k = 1; k <= 3; ++k)
        for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) probes.push_back(indicator(GridSet::interval(2, k, i, i + 1)));
    ConvergenceReport r = convergence_report(renyi, d, probes, 20);

    std::vector<Density> squares;
    for (int k = 0; k <= 3; ++k) {
        const std::size_t n = std::size_t{1} << k;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) squares.push_back(indicator(GridSet::box(2, k, k, i, i + 1, j, j + 1)));
    }
    Density left = 2.0 * indicator(GridSet::box(2, 1, 0, 0, 1, 0, 1));
    ConvergenceReport b = convergence_report(baker, left, squares, 12);
    const double weak12 = b.series.back().weak_error;
    double l2_spread = 0.0;
    for (const auto& row : b.series) l2_spread = std::max(l2_spread, std::abs(row.l2_distance - b.series.front().l2_distance));

    const bool ok = r.strong.converges && std::abs(r.strong.rate - 0.5) <= 1e-3 && b.weak.converges && weak12 <= 1e-12 &&
                    l2_spread <= 1e-12 && !b.strong.converges;
    report(3, ok,
           fmt("renyi strong rate %.6f (0.5 +- 1e-3, r2 %.6f); baker weak error at t=12 %.2e, L2 spread %.2e, strong "
               "verdict %g",
               r.strong.rate, r.strong.r2, weak12, l2_spread, b.strong.converges ? 1.0 : 0.0));
}

void criterion4() {
    const MapSpec renyi(MapKind::Renyi, 2);
    int bad = 0, checked = 0;
    for (int k = 0; k <= 10; ++k) {
        const std::size_t cells = std::size_t{1} << k;
        for (std::size_t i = 0; i < cells; i += std::max<std::size_t>(1, cells / 16)) {
            GridSet a = GridSet::interval(2, k, i, i + 1);
            for (int t = 0; t <= 10; ++t) {
                const double expect = std::min(1.0, std::ldexp(a.measure(), t));
                if (image_measure(renyi, a, t) != expect) ++bad;
                ++checked;
            }
        }
    }
    report(4, bad == 0, fmt("mu(S_t A) = min(1, 2^t mu(A)) exactly: %g of %g cases differ", bad, checked));
}

void criterion5() {
    std::mt19937_64 rng(20240501);
    double worst = std::numeric_limits<double>::infinity();
    std::size_t trials = 0;
    for (int k = 0; k < 100; ++k) {
        VoigtReport rep = voigt_monotonicity_suite(random_positive_kernel(16, rng), 100, rng());
        worst = std::min(worst, rep.worst);
        trials += rep.trials;
    }
    double perm = 0.0;
    for (int k = 0; k < 20; ++k)
        perm = std::max(perm, voigt_monotonicity_suite(random_permutation_kernel(16, rng), 50, rng()).largest);
    report(5, worst >= -1e-10 && perm < 1e-12 && trials == 10000,
           fmt("worst H_C(K rho|K sigma) - H_C(rho|sigma) over %g triples %.3e (>= -1e-10); permutation max |diff| %.3e "
               "(< 1e-12)",
               static_cast<double>(trials), worst, perm));
}

void criterion6() {
    const MapSpec baker(MapKind::Baker, 2);
    std::vector<GridSet> cells;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) cells.push_back(GridSet::box(2, 1, 1, i, i + 1, j, j + 1));
    Partition p(cells);
    std::mt19937_64 rng(606);
    double worst_drop = 0.0, worst_final = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Density rho = random_density(Grid::square(2, 4), rng);
        auto s = conditional_entropy_series(baker, rho, Density::uniform(rho.grid()), 20, &p);
        for (std::size_t t = 2; t < s.size(); ++t) worst_drop = std::max(worst_drop, s[t - 1].value - s[t].value);
        worst_final = std::min(worst_final, s.back().value);
    }
    report(6, worst_drop <= 0.0 && worst_final > -1e-6,
           fmt("coarse-grained H_C largest decrease after t=1: %.3e (<= 0); min at t=20: %.3e (> -1e-6)", worst_drop,
               worst_final));
}

void criterion7() {
    FriedrichsModel m;
    m.omega1 = 1.0;
    m.lambda = 0.1;
    m.omega_max = 20.0;
    ResonancePole pole = find_pole(m);
    std::vector<double> ts;
    for (int i = 0; i <= 200; ++i) ts.push_back(i);
    for (int i = 21; i <= 150; ++i) ts.push_back(10.0 * i);
    SurvivalSeries s = survival_probability(m, ts, pole, SurvivalOptions{2000, 2000, 16});

    double two_path = 0.0, khalfin = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] <= 200.0) two_path = std::max(two_path, std::abs(s.p_oracle[i] - s.p_quadrature[i]));
        if (s.flagged[i]) khalfin = std::max(khalfin, std::abs(s.p_quadrature[i] / s.p_pole[i] - 1.0));
    }
    DecayFit fit = fit_mid_regime(ts, s.p_oracle, pole.gamma1, s.recurrence_time);
    const double golden = golden_rule_rate(m);
    DiscretizedFriedrichs oracle(m, 2000);
    const double dt = 1e-4;
    const double zeno = std::abs(oracle.survival(dt) - oracle.survival(-dt)) / (2 * dt);

    const double fit_rel = std::abs(fit.rate / pole.gamma1 - 1.0);
    const double gr_rel = std::abs(pole.gamma1 / golden - 1.0);
    const bool ok = two_path < 1e-3 && fit_rel < 0.1 && gr_rel < 0.1 && zeno < 1e-6 && khalfin > 0.1;
    report(7, ok,
           fmt("two-path max |dP| %.2e (< 1e-3); fit rate/gamma1 - 1 = %.4f; gamma1/golden - 1 = %.4f; |dP/dt(0)| %.1e; "
               "late relative deviation %.3f (> 0.1)",
               two_path, fit_rel, gr_rel, zeno, khalfin));
}

void criterion8() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> nd;
    std::vector<double> ts;
    for (int i = 0; i <= 200; ++i) ts.push_back(0.25 * i);
    double worst_rise = 0.0;
    int iff_failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 5;
        std::vector<cplx> spec;
        std::vector<bool> undamped;
        for (int i = 0; i < n; ++i) {
            const bool zero = u(rng) < 0.35;
            spec.emplace_back(4.0 * u(rng), zero ? 0.0 : -u(rng));
            undamped.push_back(zero);
        }
        Eigen::MatrixXcd rho(n, n);
        // half the trials restrict the support to undamped modes
        const bool restrict = trial % 2 == 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const bool keep = !restrict || (undamped[static_cast<std::size_t>(i)] && undamped[static_cast<std::size_t>(j)]);
                rho(i, j) = keep ? cplx(nd(rng), nd(rng)) : cplx(0.0);
            }
        LyapunovSeries y = lambda_lyapunov(spec, rho, ts);
        for (std::size_t k = 1; k < y.y.size(); ++k) worst_rise = std::max(worst_rise, y.y[k] - y.y[k - 1]);
        bool only_undamped = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(rho(i, j)) > 0.0 && (!undamped[static_cast<std::size_t>(i)] || !undamped[static_cast<std::size_t>(j)]))
                    only_undamped = false;
        double spread = 0.0;
        for (double v : y.y) spread = std::max(spread, std::abs(v - y.y.front()));
        const bool constant = spread <= 1e-12 * std::max(1.0, y.y.front());
        if (constant != only_undamped) ++iff_failures;
    }
    report(8, worst_rise <= 1e-12 && iff_failures == 0,
           fmt("Y(t) largest increase %.3e (<= 1e-12); constancy/undamped-support mismatches %g of 100", worst_rise,
               iff_failures));
}

void criterion9() {
    std::mt19937_64 rng(909);
    std::normal_distribution<double> nd;
    auto rnd = [&](Eigen::Index n) {
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
        return m;
    };
    double worst = 0.0, herm = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        SuperOp a(4, rnd(16));
        worst = std::max(worst, max_abs_diff(super_transpose(super_associated(a)), super_adjoint(a)));
        Eigen::MatrixXcd al = rnd(4), be = rnd(4), ga = rnd(4), de = rnd(4);
        SuperOp p = super_product(al, be);
        worst = std::max({worst, max_abs_diff(super_transpose(p), super_product(be, al)),
                          max_abs_diff(super_adjoint(p), super_product(al.adjoint(), be.adjoint())),
                          max_abs_diff(super_associated(p), super_product(be.adjoint(), al.adjoint())),
                          max_abs_diff(p * super_product(ga, de), super_product(al * ga, de * be))});
        // self-associated evolution e^{-iLt} = U x U^+
        Eigen::MatrixXcd h = rnd(4);
        h = (h + h.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        Eigen::VectorXcd ph(4);
        for (int i = 0; i < 4; ++i) ph(i) = std::exp(cplx(0.0, -0.7 * es.eigenvalues()(i)));
        Eigen::MatrixXcd uu = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
        SuperOp ev = super_product(uu, uu.adjoint());
        herm = std::max(herm, max_abs_diff(ev, super_associated(ev)));
        Eigen::MatrixXcd r = rnd(4);
        r = (r * r.adjoint()).eval();
        Eigen::MatrixXcd out = ev.apply(r);
        herm = std::max(herm, (out - out.adjoint()).cwiseAbs().maxCoeff());
    }
    report(9, worst < 1e-12 && herm < 1e-12,
           fmt("superoperator identity max residual %.3e (< 1e-12); hermiticity defect %.3e (< 1e-12)", worst, herm));
}

void criterion10() {
    CosmoParams p; // A = 1, B = 0.1
    CriticalTimes r = critical_times(p);
    bool ok = r.times.size() == 2;
    double t1 = 0, t2 = 0, res = 0, a1 = 1, a2 = 1;
    if (ok) {
        t1 = r.times[0];
        t2 = r.times[1];
        for (double e : r.residuals) res = std::max(res, e);
        a1 = std::abs(r.asymptotic_1 / t1 - 1.0);
        a2 = std::abs(r.asymptotic_2 / t2 - 1.0);
        ok = std::abs(t1 / 1.18 - 1.0) < 0.01 && std::abs(t2 / 970.0 - 1.0) < 0.01 && res < 1e-10 && a1 < 0.25 &&
             a2 < 0.25;
        // sign pattern on each interval
        const double probes[3] = {0.5 * t1, std::sqrt(t1 * t2), 2.0 * t2};
        const double want[3] = {-1, 1, -1};
        for (int i = 0; i < 3; ++i) ok = ok && (entropy_gap_rate(probes[i], p) * want[i] > 0.0);
    }
    double drift = 0.0;
    const double s0 = blackbody_comoving_entropy(1e-4, p);
    for (double a = 1e-4; a < 1e4; a *= 1.7) drift = std::max(drift, std::abs(blackbody_comoving_entropy(a, p) / s0 - 1.0));
    ok = ok && drift < 1e-10;
    report(10, ok,
           fmt("t_cr = {%.4f, %.2f} t0 (residual %.1e); asymptotic deviation %.3f, %.3f (< 0.25); blackbody drift %.1e",
               t1, t2, res, a1, a2, drift));
}

void criterion11() {
    Density star = Density::normalized(Grid::line(2, 12), [] {
        std::vector<double> v(4096);
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = 1.0 + 0.5 * std::sin(2 * M_PI * (c + 0.5) / 4096.0);
        return v;
    }());
    // zero-mean fluctuation
    Density rho1 = Density::sample_1d(star.grid(), [](double x) { return std::cos(2 * M_PI * x) + (x - 0.5); });
    double sup = 0.0;
    for (std::size_t c = 0; c < star.size(); ++c) sup = std::max(sup, std::abs(rho1[c] / star[c]));
    const double gamma = 0.5;
    const double t = std::log(sup / 0.01) / gamma;
    const double q = entropy_gap_quadratic(star, rho1, gamma, t);
    const EntropyValue e = entropy_gap_exact(star, rho1, gamma, t);
    const double rel = std::abs(q / e.value - 1.0);
    report(11, !e.minus_infinity && rel < 0.01,
           fmt("quadratic gap %.6e vs exact %.6e at amplitude 0.01: relative error %.2e (< 1e-2)", q, e.value, rel));
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of 11 criteria failed (%.1f s)\n", failures, secs);
    return failures == 0 ? 0 : 1;
}
