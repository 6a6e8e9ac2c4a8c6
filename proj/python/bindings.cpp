#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "arrowlab/cosmo.hpp"
#include "arrowlab/entropy.hpp"
#include "arrowlab/error.hpp"
#include "arrowlab/friedrichs.hpp"
#include "arrowlab/quantum.hpp"
#include "arrowlab/spectral.hpp"
#include "arrowlab/transfer.hpp"

namespace py = pybind11;
using namespace arrowlab;

namespace {

// line grid whose size is base^level
Grid line_grid(std::size_t size, int base) {
    int level = 0;
    std::size_t n = 1;
    while (n < size) {
        n *= static_cast<std::size_t>(base);
        ++level;
    }
    require(n == size, "number of values must be a power of the base");
    return Grid::line(base, level);
}

std::vector<double> to_vector(const Density& d) { return {d.values().begin(), d.values().end()}; }

FriedrichsModel model(double omega1, double lambda, double omega_max, double a) {
    FriedrichsModel m;
    m.omega1 = omega1;
    m.lambda = lambda;
    m.omega_max = omega_max;
    m.g = FormFactor::exponential(a);
    m.validate();
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "transfer operators, entropy functionals and decay models";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

    m.def("renyi_step", py::overload_cast<double, int>(&renyi_step), py::arg("x"), py::arg("base") = 2);
    m.def(
        "baker_step",
        [](double x, double y, int base) {
            Point2 p = baker_step({x, y}, base);
            return std::make_pair(p.x, p.y);
        },
        py::arg("x"), py::arg("y"), py::arg("base") = 2);
    m.def(
        "baker_inverse_step",
        [](double x, double y, int base) {
            Point2 p = baker_inverse_step({x, y}, base);
            return std::make_pair(p.x, p.y);
        },
        py::arg("x"), py::arg("y"), py::arg("base") = 2);

    m.def(
        "renyi_transfer",
        [](const std::vector<double>& values, int base, int t) {
            Density d(line_grid(values.size(), base), values);
            return to_vector(fp_power(MapSpec(MapKind::Renyi, base), d, t));
        },
        py::arg("values"), py::arg("base") = 2, py::arg("t") = 1,
        "Frobenius-Perron iterate of cell values on a line grid of base^level cells");
    m.def(
        "conditional_entropy",
        [](const std::vector<double>& rho, const std::vector<double>& sigma, int base) {
            const Grid g = line_grid(rho.size(), base);
            EntropyValue v = conditional_entropy(Density(g, rho), Density(g, sigma));
            return v.minus_infinity ? -INFINITY : v.value;
        },
        py::arg("rho"), py::arg("sigma"), py::arg("base") = 2);
    m.def(
        "image_measure",
        [](int level, std::size_t first, std::size_t last, int t) {
            return image_measure(MapSpec(MapKind::Renyi, 2), GridSet::interval(2, level, first, last), t);
        },
        py::arg("level"), py::arg("first"), py::arg("last"), py::arg("t"),
        "measure of the dyadic Renyi image of the interval [first, last) at the given level");

    m.def(
        "bernoulli_poly", [](std::size_t n) { return bernoulli_poly(n, BernoulliBasis(std::max<std::size_t>(n, 1))).c; },
        py::arg("n"), "monomial coefficients of B_n");
    m.def(
        "left_functional",
        [](std::size_t n, const std::vector<double>& coeffs, std::size_t nmax) {
            return left_functional(n, Poly<double>(coeffs), BernoulliBasis(nmax));
        },
        py::arg("n"), py::arg("coeffs"), py::arg("nmax") = 16);
    m.def(
        "evolve_spectral",
        [](const std::vector<double>& coeffs, int t, int base, std::size_t nmax) {
            return evolve_spectral(Poly<double>(coeffs), t, base, BernoulliBasis(nmax)).c;
        },
        py::arg("coeffs"), py::arg("t"), py::arg("base") = 2, py::arg("nmax") = 16);
    m.def(
        "evolve_direct",
        [](const std::vector<double>& coeffs, int t, int base) { return evolve_direct(Poly<double>(coeffs), t, base).c; },
        py::arg("coeffs"), py::arg("t"), py::arg("base") = 2);

    m.def(
        "voigt_worst",
        [](std::size_t n, std::size_t trials, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            VoigtReport r = voigt_monotonicity_suite(random_positive_kernel(n, rng), trials, rng());
            return r.worst;
        },
        py::arg("n") = 8, py::arg("trials") = 100, py::arg("seed") = 1,
        "min of H_C(K rho|K sigma) - H_C(rho|sigma) over random pairs for one random kernel");

    m.def("dephase_evolution", &dephase_evolution, py::arg("rho"), py::arg("spectrum"), py::arg("t"));
    m.def(
        "associated_residual",
        [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
            SuperOp p = super_product(a, b);
            return max_abs_diff(super_associated(p), super_product(b.adjoint(), a.adjoint()));
        },
        py::arg("a"), py::arg("b"), "residual of (a x b)^ = b^+ x a^+");

    m.def(
        "find_pole",
        [](double omega1, double lambda, double omega_max, double a) {
            FriedrichsModel fm = model(omega1, lambda, omega_max, a);
            ResonancePole p = find_pole(fm);
            py::dict d;
            d["beta1"] = p.beta1;
            d["gamma1"] = p.gamma1;
            d["residual"] = p.residual;
            d["golden_rule"] = golden_rule_rate(fm);
            return d;
        },
        py::arg("omega1") = 1.0, py::arg("lam") = 0.1, py::arg("omega_max") = 20.0, py::arg("a") = 0.5);
    m.def(
        "survival_oracle",
        [](const std::vector<double>& ts, double omega1, double lambda, int n_modes) {
            DiscretizedFriedrichs d(model(omega1, lambda, 20.0, 0.5), n_modes);
            std::vector<double> out;
            for (double t : ts) out.push_back(d.survival(t));
            return out;
        },
        py::arg("t"), py::arg("omega1") = 1.0, py::arg("lam") = 0.1, py::arg("n_modes") = 400);

    m.def(
        "critical_times",
        [](double omega1, double t0_temp, double gamma_t0, double t0) {
            CosmoParams p;
            p.omega1 = omega1;
            p.T0 = t0_temp;
            p.t0 = t0;
            p.gamma = gamma_t0 / t0;
            p.validate();
            return critical_times(p).times;
        },
        py::arg("omega1") = 1.5, py::arg("t0_temp") = 1.0, py::arg("gamma_t0") = 0.1, py::arg("t0") = 1.0);
    m.def(
        "boost_thermo",
        [](double u, double v, double p, double energy, double heat, double entropy, double temperature) {
            ThermoState b = boost_thermo({v, p, energy, heat, entropy, temperature}, u);
            py::dict d;
            d["v"] = b.v;
            d["p"] = b.p;
            d["E"] = b.E;
            d["Q"] = b.Q;
            d["S"] = b.S;
            d["T"] = b.T;
            return d;
        },
        py::arg("u"), py::arg("v") = 1.0, py::arg("p") = 0.0, py::arg("energy") = 1.0, py::arg("heat") = 0.0,
        py::arg("entropy") = 0.0, py::arg("temperature") = 1.0);
}
