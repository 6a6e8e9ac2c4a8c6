#pragma once

#include <vector>

#include "arrowlab/maps.hpp"
#include "arrowlab/measure.hpp"

namespace arrowlab {

// (U rho)(x) = (1/beta) sum_r rho((x+r)/beta). On a grid anchored at digit 1
// the result is constant on level k-1 cells and is replicated back to level k.
Density fp_renyi(const Density& d, int base);
// (U rho)(z) = rho(B^-1 z): relabels the digit window, values unchanged.
Density fp_baker(const Density& d, int base);
Density fp_step(const MapSpec& map, const Density& d);
Density fp_power(const MapSpec& map, const Density& d, int t);

// Lebesgue measure of S^t(A).
double image_measure(const MapSpec& map, const GridSet& a, int t);
// mu(A n S^-t(B)) - mu(A) mu(B).
double correlation(const GridSet& a, const GridSet& b, const MapSpec& map, int t);
double weak_pairing(const Density& d, const Density& g);
// (1/T) sum_{k<T} (P^k rho, g).
double cesaro_average(const MapSpec& map, const Density& d, const Density& g, int T);

struct GeometricFit {
    double rate = 1.0; // y_t ~ C rate^t
    double r2 = 0.0;
    std::size_t points = 0;
};
// Least squares fit of log y against t; points with y <= floor are dropped.
GeometricFit fit_geometric(const std::vector<double>& t, const std::vector<double>& y, double floor = 1e-300);

struct ModeVerdict {
    bool converges = false;
    double rate = 1.0;
    double r2 = 0.0;
};

struct ConvergenceRow {
    int t = 0;
    std::vector<double> weak;   // (P_t rho, g) per probe
    std::vector<double> cesaro; // running Cesaro average per probe
    double weak_error = 0.0;    // max_g |(P_t rho, g) - (1, g)|
    double cesaro_error = 0.0;
    double strong_norm = 0.0;   // ||P_t rho - 1||_1
    double l2_distance = 0.0;   // ||P_t rho - 1||_2
};

struct ConvergenceReport {
    ModeVerdict cesaro;
    ModeVerdict weak;
    ModeVerdict strong;
    std::vector<ConvergenceRow> series;
};

ConvergenceReport convergence_report(const MapSpec& map, const Density& d, const std::vector<Density>& probes,
                                     int t_max, const Partition* coarse = nullptr);

} // namespace arrowlab
