#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "arrowlab/poly.hpp"

namespace arrowlab {

// Right Bernoulli vectors B_0..B_Nmax in double precision, built once.
class BernoulliBasis {
  public:
    explicit BernoulliBasis(std::size_t n_max = 16);

    std::size_t n_max() const { return polys_->size() - 1; }
    const Poly<double>& operator[](std::size_t n) const;

  private:
    std::shared_ptr<const std::vector<Poly<double>>> polys_;
};

Poly<double> bernoulli_poly(std::size_t n, const BernoulliBasis& basis);
double left_functional(std::size_t n, const Poly<double>& p, const BernoulliBasis& basis);

// a_n = (B~_n | rho), n = 0..deg rho.
std::vector<double> expand(const Poly<double>& rho, const BernoulliBasis& basis);
Poly<double> reconstruct(const std::vector<double>& a, const BernoulliBasis& basis);

// U^t rho = sum_n beta^(-n t) a_n B_n.
Poly<double> evolve_spectral(const Poly<double>& rho, int t, int base, const BernoulliBasis& basis);
Poly<double> evolve_direct(const Poly<double>& rho, int t, int base);

struct EquilibriumSplit {
    double equilibrium = 0.0;     // rho* = a_0
    Poly<double> fluctuation;     // U^t rho - rho*
    double gamma = 0.0;           // ln beta
    double fluctuation_norm = 0.0; // sum_{n>=1} |a_n| beta^(-n t)
};
EquilibriumSplit decompose_equilibrium(const Poly<double>& rho, int t, int base, const BernoulliBasis& basis);

// CSV `n,coeff_index,value`.
void write_basis_csv(std::ostream& os, const BernoulliBasis& basis);
// CSV `t,a_0..a_N` for t = 0..t_max.
void write_evolution_csv(std::ostream& os, const Poly<double>& rho, int t_max, int base,
                         const BernoulliBasis& basis);

} // namespace arrowlab
