#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"

#include "arrowlab/error.hpp"
#include "arrowlab/quantum.hpp"

using namespace arrowlab;
using Eigen::MatrixXcd;

namespace {

MatrixXcd random_matrix(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

MatrixXcd random_density_matrix(Eigen::Index n, std::mt19937_64& rng) {
    MatrixXcd a = random_matrix(n, rng);
    MatrixXcd r = a * a.adjoint();
    return r / r.trace();
}

SuperOp random_superop(Eigen::Index n, std::mt19937_64& rng) { return SuperOp(n, random_matrix(n * n, rng)); }

MatrixXcd random_real_symmetric(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = nd(rng);
    return (a + a.transpose()).cast<cplx>();
}

// row-major vectorisation matching the superoperator index convention
Eigen::VectorXcd vec(const MatrixXcd& m) {
    Eigen::VectorXcd v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

MatrixXcd unvec(const Eigen::VectorXcd& v, Eigen::Index n) {
    MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
    return m;
}

double maxabs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_SUITE("quantum") {

TEST_CASE("density matrix validation") {
    std::mt19937_64 rng(1);
    CHECK_NOTHROW(DensityMatrix(random_density_matrix(3, rng)));
    MatrixXcd bad = MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix{bad}, InvalidArgument);
    MatrixXcd nh(2, 2);
    nh << 0.5, cplx(0, 1), 0.0, 0.5;
    CHECK_THROWS_AS(DensityMatrix{nh}, InvalidArgument);
}

TEST_CASE("superoperator products act as a g b") {
    std::mt19937_64 rng(2);
    const Eigen::Index n = 3;
    MatrixXcd id = MatrixXcd::Identity(n, n);
    MatrixXcd g = random_matrix(n, rng), b = random_matrix(n, rng), a = random_matrix(n, rng);
    CHECK(maxabs(super_product(id, id).apply(g) - g) < 1e-14);
    CHECK(maxabs(super_product(id, b).apply(g) - g * b) < 1e-12);
    CHECK(maxabs(super_product(a, b).apply(g) - a * g * b) < 1e-12);
    // the stored matrix acts on the row-major vectorisation
    CHECK((super_product(a, b).matrix() * vec(g) - vec(a * g * b)).cwiseAbs().maxCoeff() < 1e-12);

    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        MatrixXcd al = random_matrix(n, rng), be = random_matrix(n, rng), ga = random_matrix(n, rng),
                  de = random_matrix(n, rng);
        worst = std::max(worst, max_abs_diff(super_product(al, be) * super_product(ga, de),
                                             super_product(al * ga, de * be)));
    }
    CHECK(worst < 1e-12);
    CHECK_THROWS_AS(super_product(MatrixXcd::Identity(2, 2), MatrixXcd::Identity(3, 3)), InvalidArgument);
}

TEST_CASE("superoperator index identities") {
    std::mt19937_64 rng(3);
    const Eigen::Index n = 4;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        SuperOp a = random_superop(n, rng);
        MatrixXcd al = random_matrix(n, rng), be = random_matrix(n, rng);
        SuperOp p = super_product(al, be);
        worst = std::max({worst, max_abs_diff(super_transpose(super_transpose(a)), a),
                          max_abs_diff(super_adjoint(super_adjoint(a)), a),
                          max_abs_diff(super_associated(super_associated(a)), a),
                          max_abs_diff(super_transpose(super_associated(a)), super_adjoint(a)),
                          max_abs_diff(super_transpose(p), super_product(be, al)),
                          max_abs_diff(super_adjoint(p), super_product(al.adjoint(), be.adjoint())),
                          max_abs_diff(super_associated(p), super_product(be.adjoint(), al.adjoint()))});
        // adjoint with respect to the Hilbert-Schmidt product tr(x^+ A y)
        MatrixXcd x = random_matrix(n, rng), y = random_matrix(n, rng);
        cplx lhs = (x.adjoint() * a.apply(y)).trace();
        cplx rhs = (super_adjoint(a).apply(x).adjoint() * y).trace();
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        // associated: (A g)^+ = A^a g^+
        MatrixXcd g = random_matrix(n, rng);
        worst = std::max(worst, maxabs(a.apply(g).adjoint() - super_associated(a).apply(g.adjoint())));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("self associated evolution keeps hermiticity") {
    std::mt19937_64 rng(4);
    SuperOp il = cplx(0, 1) * liouvillian(random_real_symmetric(4, rng));
    CHECK(max_abs_diff(il, super_associated(il)) < 1e-12);
    for (int i = 0; i < 20; ++i) {
        MatrixXcd r = random_density_matrix(4, rng);
        MatrixXcd out = il.apply(r);
        CHECK(maxabs(out - out.adjoint()) < 1e-12);
    }
}

TEST_CASE("time reversal") {
    std::mt19937_64 rng(5);
    MatrixXcd real = random_real_symmetric(3, rng);
    CHECK(maxabs(time_reversal_K(real) - real) == 0.0);
    MatrixXcd r = random_density_matrix(3, rng);
    CHECK(maxabs(time_reversal_K(time_reversal_K(r)) - r) == 0.0);
    MatrixXcd kr = time_reversal_K(r);
    CHECK(maxabs(kr - kr.adjoint()) < 1e-15);
    CHECK(std::abs(kr.trace() - r.trace()) < 1e-15);
    SuperOp il = cplx(0, 1) * liouvillian(real);
    CHECK(max_abs_diff(super_time_reversal(il), cplx(-1.0) * il) < 1e-14);
    CHECK_THROWS_AS(time_reversal_K(r, false), InvalidArgument);
}

TEST_CASE("liouvillian") {
    std::mt19937_64 rng(6);
    CHECK(max_abs_diff(liouvillian(MatrixXcd::Identity(3, 3)), SuperOp::zero(3)) == 0.0);
    std::vector<double> w{0.3, -1.0, 2.5};
    MatrixXcd h = MatrixXcd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) h(i, i) = w[static_cast<std::size_t>(i)];
    MatrixXcd r = random_matrix(3, rng);
    MatrixXcd lr = liouvillian(h).apply(r);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(lr(i, j) - (w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)]) * r(i, j)) < 1e-14);
    MatrixXcd hs = random_real_symmetric(4, rng);
    SuperOp l = liouvillian(hs);
    CHECK(max_abs_diff(l, super_adjoint(l)) < 1e-12);
    CHECK(max_abs_diff(l, cplx(-1.0) * super_transpose(l)) < 1e-12);
    MatrixXcd r4 = random_matrix(4, rng);
    CHECK(maxabs(l.apply(r4) - (hs * r4 - r4 * hs)) < 1e-12);
    CHECK_THROWS_AS(liouvillian(random_matrix(3, rng)), InvalidArgument);
}

TEST_CASE("dephasing") {
    std::vector<double> w{0.0, 1.0};
    MatrixXcd r0(2, 2);
    r0 << 0.5, 0.5, 0.5, 0.5;
    CHECK(maxabs(dephase_evolution(r0, w, 0.0) - r0) == 0.0);
    MatrixXcd rp = dephase_evolution(r0, w, M_PI);
    CHECK(std::abs(rp(0, 1) - cplx(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(rp(0, 0) - 0.5) == 0.0);

    // agrees with exp(-iLt) from a dense matrix exponential
    std::mt19937_64 rng(7);
    for (Eigen::Index n : {2, 4, 6}) {
        std::vector<double> spec;
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        MatrixXcd h = MatrixXcd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            spec.push_back(u(rng));
            h(i, i) = spec.back();
        }
        MatrixXcd r = random_density_matrix(n, rng);
        const double t = 1.7;
        MatrixXcd lm = liouvillian(h).matrix();
        MatrixXcd prop = (cplx(0, -t) * lm).exp();
        MatrixXcd ref = unvec(prop * vec(r), n);
        MatrixXcd got = dephase_evolution(r, spec, t);
        CHECK(maxabs(got - ref) < 1e-12);
        CHECK(std::abs(got.trace() - 1.0) < 1e-13);
        CHECK(maxabs(got - got.adjoint()) < 1e-13);
        // same for a non-diagonal Hamiltonian through unitary_evolution
        MatrixXcd hs = random_real_symmetric(n, rng);
        MatrixXcd refu = unvec((cplx(0, -t) * liouvillian(hs).matrix()).exp() * vec(r), n);
        MatrixXcd gotu = unitary_evolution(hs, r, t);
        CHECK(maxabs(gotu - refu) < 1e-11);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> e0(r), e1(gotu);
        CHECK((e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("time reversed evolution") {
    // evolving K rho K forward equals K rho(-t) K for real H
    std::mt19937_64 rng(8);
    MatrixXcd h = random_real_symmetric(4, rng);
    MatrixXcd r = random_density_matrix(4, rng);
    const double t = 0.9;
    MatrixXcd lhs = unitary_evolution(h, time_reversal_K(r), t);
    MatrixXcd rhs = time_reversal_K(unitary_evolution(h, r, -t));
    CHECK(maxabs(lhs - rhs) < 1e-12);
}

TEST_CASE("cesaro average approaches the diagonal part") {
    std::mt19937_64 rng(9);
    const Eigen::Index n = 4;
    std::vector<double> w{0.0, 0.7, 1.9, 3.1};
    MatrixXcd r = random_density_matrix(n, rng);
    MatrixXcd obs = random_matrix(n, rng);
    obs = obs + obs.adjoint();
    MatrixXcd diag = r.diagonal().asDiagonal();
    cplx limit = expectation(diag, obs);
    // numeric time average against the closed form
    const double T = 50.0;
    const int steps = 20000;
    cplx s = 0.0;
    for (int k = 0; k < steps; ++k) s += expectation(dephase_evolution(r, w, (k + 0.5) * T / steps), obs);
    s /= steps;
    CHECK(std::abs(s - cesaro_expectation(r, w, obs, T)) < 1e-5);
    double e1 = std::abs(cesaro_expectation(r, w, obs, 100.0) - limit);
    double e2 = std::abs(cesaro_expectation(r, w, obs, 1000.0) - limit);
    double e3 = std::abs(cesaro_expectation(r, w, obs, 10000.0) - limit);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
    CHECK(e3 * 10000.0 < 10.0);
}

TEST_CASE("wigner transform of the gaussian ground state") {
    const std::size_t n = 256;
    auto q = linspace(-6.0, 6.0, n);
    auto p = linspace(-6.0, 6.0, n);
    MatrixXcd k(n, n);
    auto psi = [](double x) { return std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x); };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = psi(q[a]) * psi(q[b]);
    WignerResult w = wigner_transform(k, q, p);
    double err = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            err = std::max(err, std::abs(w.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) -
                                         std::exp(-q[a] * q[a] - p[b] * p[b]) / M_PI));
    CHECK(err < 1e-3);
    CHECK(w.max_imag < 1e-10);
    CHECK(!w.truncated);
    CHECK(std::abs(wigner_integral(w) - 1.0) < 1e-6);
    double x2 = wigner_expectation(w, [](double x, double) { return x * x; });
    CHECK(std::abs(x2 / 0.5 - 1.0) < 1e-4);
    // a wide state on a small grid is flagged
    MatrixXcd wide(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            wide(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 0.1 * std::exp(-0.01 * (q[a] * q[a] + q[b] * q[b]));
    CHECK(wigner_transform(wide, q, p).truncated);
}

}
