#include "arrowlab/spectral.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace arrowlab {

BernoulliBasis::BernoulliBasis(std::size_t n_max) {
    require(n_max <= 40, "N_max must be <= 40");
    auto v = std::make_shared<std::vector<Poly<double>>>();
    for (std::size_t n = 0; n <= n_max; ++n) {
        Poly<Rational> r = arrowlab::bernoulli_poly<Rational>(n);
        std::vector<double> c;
        for (const auto& x : r.c) c.push_back(static_cast<double>(x));
        v->emplace_back(std::move(c));
    }
    polys_ = std::move(v);
}

const Poly<double>& BernoulliBasis::operator[](std::size_t n) const {
    require(n <= n_max(), "Bernoulli index " + std::to_string(n) + " exceeds N_max");
    return (*polys_)[n];
}

Poly<double> bernoulli_poly(std::size_t n, const BernoulliBasis& basis) { return basis[n]; }

double left_functional(std::size_t n, const Poly<double>& p, const BernoulliBasis& basis) {
    require(n <= basis.n_max(), "functional index exceeds N_max");
    return arrowlab::left_functional<double>(n, p);
}

std::vector<double> expand(const Poly<double>& rho, const BernoulliBasis& basis) {
    const std::size_t deg = rho.degree();
    require(deg <= basis.n_max(), "polynomial degree exceeds N_max");
    std::vector<double> a(deg + 1);
    for (std::size_t n = 0; n <= deg; ++n) a[n] = arrowlab::left_functional<double>(n, rho);
    return a;
}

Poly<double> reconstruct(const std::vector<double>& a, const BernoulliBasis& basis) {
    Poly<double> p;
    for (std::size_t n = 0; n < a.size(); ++n) p = p + a[n] * basis[n];
    return p;
}

Poly<double> evolve_spectral(const Poly<double>& rho, int t, int base, const BernoulliBasis& basis) {
    require(t >= 0, "t must be >= 0");
    require(base >= 2, "map base must be >= 2");
    auto a = expand(rho, basis);
    for (std::size_t n = 0; n < a.size(); ++n) a[n] *= std::pow(static_cast<double>(base), -static_cast<double>(n) * t);
    return reconstruct(a, basis);
}

Poly<double> evolve_direct(const Poly<double>& rho, int t, int base) {
    require(t >= 0, "t must be >= 0");
    Poly<double> p = rho;
    for (int s = 0; s < t; ++s) p = fp_poly(p, base);
    return p;
}

EquilibriumSplit decompose_equilibrium(const Poly<double>& rho, int t, int base, const BernoulliBasis& basis) {
    require(t >= 0, "t must be >= 0");
    auto a = expand(rho, basis);
    EquilibriumSplit s;
    s.equilibrium = a[0];
    s.gamma = std::log(static_cast<double>(base));
    std::vector<double> f(a.size(), 0.0);
    for (std::size_t n = 1; n < a.size(); ++n) {
        f[n] = a[n] * std::exp(-s.gamma * static_cast<double>(n) * t);
        s.fluctuation_norm += std::abs(f[n]);
    }
    s.fluctuation = reconstruct(f, basis);
    return s;
}

void write_basis_csv(std::ostream& os, const BernoulliBasis& basis) {
    std::ostringstream buf;
    buf.precision(17);
    buf << "n,coeff_index,value\n";
    for (std::size_t n = 0; n <= basis.n_max(); ++n)
        for (std::size_t j = 0; j < basis[n].c.size(); ++j) buf << n << ',' << j << ',' << basis[n].c[j] << '\n';
    os << buf.str();
}

void write_evolution_csv(std::ostream& os, const Poly<double>& rho, int t_max, int base,
                         const BernoulliBasis& basis) {
    auto a = expand(rho, basis);
    std::ostringstream buf;
    buf.precision(17);
    buf << 't';
    for (std::size_t n = 0; n < a.size(); ++n) buf << ",a_" << n;
    buf << '\n';
    for (int t = 0; t <= t_max; ++t) {
        buf << t;
        for (std::size_t n = 0; n < a.size(); ++n)
            buf << ',' << a[n] * std::pow(static_cast<double>(base), -static_cast<double>(n) * t);
        buf << '\n';
    }
    os << buf.str();
}

} // namespace arrowlab
