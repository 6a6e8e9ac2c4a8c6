#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace arrowlab {

using cplx = std::complex<double>;

// Hermitian, unit-trace matrix with non-negative diagonal.
class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd m, double tol = 1e-12);

    const Eigen::MatrixXcd& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Eigen::MatrixXcd m_;
};

// Linear map on n x n matrices, stored as an n^2 x n^2 matrix with row
// (i,j) -> i*n + j and column (k,l) -> k*n + l, so that
// (A g)_{ij} = sum_{kl} A_{ij,kl} g_{kl}.
class SuperOp {
  public:
    SuperOp() = default;
    SuperOp(Eigen::Index n, Eigen::MatrixXcd m);
    static SuperOp identity(Eigen::Index n);
    static SuperOp zero(Eigen::Index n);

    Eigen::Index n() const { return n_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    cplx operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) const {
        return m_(i * n_ + j, k * n_ + l);
    }
    cplx& operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) {
        return m_(i * n_ + j, k * n_ + l);
    }

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& g) const;

    friend SuperOp operator*(const SuperOp& a, const SuperOp& b);
    friend SuperOp operator+(const SuperOp& a, const SuperOp& b);
    friend SuperOp operator-(const SuperOp& a, const SuperOp& b);
    friend SuperOp operator*(cplx s, const SuperOp& a);

  private:
    Eigen::Index n_ = 0;
    Eigen::MatrixXcd m_;
};

inline constexpr Eigen::Index kMaxSuperDim = 16;

// (a x b) g = a g b.
SuperOp super_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
// (A^T)_{ij,kl} = A_{lk,ji}
SuperOp super_transpose(const SuperOp& a);
// (A^+)_{ij,kl} = conj(A_{kl,ij})
SuperOp super_adjoint(const SuperOp& a);
// (A^a)_{ij,kl} = conj(A_{ji,lk})
SuperOp super_associated(const SuperOp& a);
// Entrywise conjugation: K A K^+ in a real basis.
SuperOp super_time_reversal(const SuperOp& a);
double max_abs_diff(const SuperOp& a, const SuperOp& b);

Eigen::MatrixXcd time_reversal_K(const Eigen::MatrixXcd& rho, bool real_basis = true);

// L = H x 1 - 1 x H.
SuperOp liouvillian(const Eigen::MatrixXcd& h, double tol = 1e-12);

// rho_ij(t) = rho_ij(0) exp(-i (w_i - w_j) t) in the energy basis.
Eigen::MatrixXcd dephase_evolution(const Eigen::MatrixXcd& rho0, const std::vector<double>& spectrum, double t);
cplx expectation(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& obs);
// Time average of <O>_{rho(t)} over [0, T], in closed form.
cplx cesaro_expectation(const Eigen::MatrixXcd& rho0, const std::vector<double>& spectrum,
                        const Eigen::MatrixXcd& obs, double T);
// exp(-iHt) rho exp(iHt) for Hermitian H.
Eigen::MatrixXcd unitary_evolution(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& rho, double t);

struct WignerResult {
    std::vector<double> q;
    std::vector<double> p;
    Eigen::MatrixXd values; // values(a, b) = rho_W(q_a, p_b)
    double max_imag = 0.0;
    bool truncated = false; // kernel not negligible at the grid boundary
};

// rho_W(q,p) = pi^-1 int <q+l|rho|q-l> e^{2ilp} dl by a direct sum over the
// grid diagonal. `kernel(a,b)` holds rho(q_a, q_b) on a uniform q grid.
WignerResult wigner_transform(const Eigen::MatrixXcd& kernel, const std::vector<double>& q,
                              const std::vector<double>& p);
double wigner_integral(const WignerResult& w);
template <class F> double wigner_expectation(const WignerResult& w, F&& symbol) {
    const double dq = w.q[1] - w.q[0], dp = w.p[1] - w.p[0];
    double s = 0.0;
    for (std::size_t a = 0; a < w.q.size(); ++a)
        for (std::size_t b = 0; b < w.p.size(); ++b)
            s += w.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * symbol(w.q[a], w.p[b]);
    return s * dq * dp;
}
std::vector<double> linspace(double a, double b, std::size_t n);

} // namespace arrowlab
