#include "arrowlab/quantum.hpp"

#include <cmath>
#include <numbers>

#include "arrowlab/error.hpp"

namespace arrowlab {

namespace {

void check_square(const Eigen::MatrixXcd& m, const char* what) {
    require(m.rows() == m.cols() && m.rows() > 0, std::string(what) + " must be a non-empty square matrix");
}

void check_same(const SuperOp& a, const SuperOp& b) {
    require(a.n() == b.n(), "superoperator dimensions differ");
}

} // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
    check_square(m_, "density matrix");
    require((m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol, "density matrix is not Hermitian");
    require(std::abs(m_.trace() - cplx(1.0)) <= tol, "density matrix trace differs from 1");
    for (Eigen::Index i = 0; i < m_.rows(); ++i)
        require(m_(i, i).real() >= -tol, "density matrix has a negative diagonal entry");
}

SuperOp::SuperOp(Eigen::Index n, Eigen::MatrixXcd m) : n_(n), m_(std::move(m)) {
    require(n >= 1 && n <= kMaxSuperDim, "superoperator dimension must be in [1, 16]");
    require(m_.rows() == n * n && m_.cols() == n * n, "superoperator storage must be n^2 x n^2");
}

SuperOp SuperOp::identity(Eigen::Index n) { return SuperOp(n, Eigen::MatrixXcd::Identity(n * n, n * n)); }

SuperOp SuperOp::zero(Eigen::Index n) { return SuperOp(n, Eigen::MatrixXcd::Zero(n * n, n * n)); }

Eigen::MatrixXcd SuperOp::apply(const Eigen::MatrixXcd& g) const {
    require(g.rows() == n_ && g.cols() == n_, "matrix size does not match the superoperator");
    Eigen::VectorXcd v(n_ * n_);
    for (Eigen::Index i = 0; i < n_; ++i)
        for (Eigen::Index j = 0; j < n_; ++j) v(i * n_ + j) = g(i, j);
    Eigen::VectorXcd w = m_ * v;
    Eigen::MatrixXcd out(n_, n_);
    for (Eigen::Index i = 0; i < n_; ++i)
        for (Eigen::Index j = 0; j < n_; ++j) out(i, j) = w(i * n_ + j);
    return out;
}

SuperOp operator*(const SuperOp& a, const SuperOp& b) {
    check_same(a, b);
    return SuperOp(a.n_, a.m_ * b.m_);
}

SuperOp operator+(const SuperOp& a, const SuperOp& b) {
    check_same(a, b);
    return SuperOp(a.n_, a.m_ + b.m_);
}

SuperOp operator-(const SuperOp& a, const SuperOp& b) {
    check_same(a, b);
    return SuperOp(a.n_, a.m_ - b.m_);
}

SuperOp operator*(cplx s, const SuperOp& a) { return SuperOp(a.n_, s * a.m_); }

SuperOp super_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    check_square(a, "left factor");
    check_square(b, "right factor");
    require(a.rows() == b.rows(), "factor dimensions differ");
    const Eigen::Index n = a.rows();
    SuperOp s = SuperOp::zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                for (Eigen::Index l = 0; l < n; ++l) s(i, j, k, l) = a(i, k) * b(l, j);
    return s;
}

template <class F> static SuperOp permute(const SuperOp& a, F&& f) {
    const Eigen::Index n = a.n();
    SuperOp s = SuperOp::zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                for (Eigen::Index l = 0; l < n; ++l) s(i, j, k, l) = f(i, j, k, l);
    return s;
}

SuperOp super_transpose(const SuperOp& a) {
    return permute(a, [&](auto i, auto j, auto k, auto l) { return a(l, k, j, i); });
}

SuperOp super_adjoint(const SuperOp& a) {
    return permute(a, [&](auto i, auto j, auto k, auto l) { return std::conj(a(k, l, i, j)); });
}

SuperOp super_associated(const SuperOp& a) {
    return permute(a, [&](auto i, auto j, auto k, auto l) { return std::conj(a(j, i, l, k)); });
}

SuperOp super_time_reversal(const SuperOp& a) { return SuperOp(a.n(), a.matrix().conjugate()); }

double max_abs_diff(const SuperOp& a, const SuperOp& b) {
    check_same(a, b);
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd time_reversal_K(const Eigen::MatrixXcd& rho, bool real_basis) {
    require(real_basis, "time reversal is only implemented for a real basis");
    return rho.conjugate();
}

SuperOp liouvillian(const Eigen::MatrixXcd& h, double tol) {
    check_square(h, "Hamiltonian");
    require((h - h.adjoint()).cwiseAbs().maxCoeff() <= tol, "Hamiltonian is not Hermitian");
    const auto one = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
    return super_product(h, one) - super_product(one, h);
}

Eigen::MatrixXcd dephase_evolution(const Eigen::MatrixXcd& rho0, const std::vector<double>& spectrum, double t) {
    check_square(rho0, "density matrix");
    require(static_cast<Eigen::Index>(spectrum.size()) == rho0.rows(), "spectrum size does not match the matrix");
    Eigen::MatrixXcd out = rho0;
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j)
            out(i, j) *= std::exp(cplx(0.0, -(spectrum[i] - spectrum[j]) * t));
    return out;
}

cplx expectation(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& obs) { return (rho * obs).trace(); }

cplx cesaro_expectation(const Eigen::MatrixXcd& rho0, const std::vector<double>& spectrum,
                        const Eigen::MatrixXcd& obs, double T) {
    require(T > 0.0, "averaging time must be positive");
    require(static_cast<Eigen::Index>(spectrum.size()) == rho0.rows(), "spectrum size does not match the matrix");
    cplx s = 0.0;
    for (Eigen::Index i = 0; i < rho0.rows(); ++i)
        for (Eigen::Index j = 0; j < rho0.cols(); ++j) {
            const double w = spectrum[i] - spectrum[j];
            cplx avg = std::abs(w * T) < 1e-12 ? cplx(1.0) : (1.0 - std::exp(cplx(0.0, -w * T))) / cplx(0.0, w * T);
            s += rho0(i, j) * obs(j, i) * avg;
        }
    return s;
}

Eigen::MatrixXcd unitary_evolution(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& rho, double t) {
    check_square(h, "Hamiltonian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw NumericalFailure("Hamiltonian diagonalization failed");
    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::VectorXcd ph(h.rows());
    for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::exp(cplx(0.0, -es.eigenvalues()(i) * t));
    Eigen::MatrixXcd u = v * ph.asDiagonal() * v.adjoint();
    return u * rho * u.adjoint();
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    require(n >= 2, "grid needs at least two points");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

WignerResult wigner_transform(const Eigen::MatrixXcd& kernel, const std::vector<double>& q,
                              const std::vector<double>& p) {
    const auto nq = static_cast<Eigen::Index>(q.size());
    require(nq >= 2 && p.size() >= 2, "Wigner grid needs at least two points per axis");
    require(kernel.rows() == nq && kernel.cols() == nq, "kernel size does not match the q grid");
    const double dq = q[1] - q[0];
    for (std::size_t i = 1; i < q.size(); ++i)
        require(std::abs(q[i] - q[i - 1] - dq) <= 1e-9 * std::abs(dq), "q grid must be uniform");

    WignerResult w;
    w.q = q;
    w.p = p;
    w.values.resize(nq, static_cast<Eigen::Index>(p.size()));
    const double peak = kernel.cwiseAbs().maxCoeff();
    double edge = 0.0;
    for (Eigen::Index i = 0; i < nq; ++i)
        edge = std::max({edge, std::abs(kernel(0, i)), std::abs(kernel(nq - 1, i)), std::abs(kernel(i, 0)),
                         std::abs(kernel(i, nq - 1))});
    w.truncated = edge > 1e-6 * peak;

    for (Eigen::Index a = 0; a < nq; ++a) {
        const Eigen::Index mmax = std::min(a, nq - 1 - a);
        for (std::size_t b = 0; b < p.size(); ++b) {
            cplx s = 0.0;
            for (Eigen::Index m = -mmax; m <= mmax; ++m)
                s += kernel(a + m, a - m) * std::exp(cplx(0.0, 2.0 * static_cast<double>(m) * dq * p[b]));
            s *= dq / std::numbers::pi;
            w.values(a, static_cast<Eigen::Index>(b)) = s.real();
            w.max_imag = std::max(w.max_imag, std::abs(s.imag()));
        }
    }
    return w;
}

double wigner_integral(const WignerResult& w) {
    return w.values.sum() * (w.q[1] - w.q[0]) * (w.p[1] - w.p[0]);
}

} // namespace arrowlab
