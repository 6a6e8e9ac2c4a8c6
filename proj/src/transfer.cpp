#include "arrowlab/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "arrowlab/error.hpp"

namespace arrowlab {

namespace {

void check_map_grid(const MapSpec& map, const Grid& g) {
    if (g.dims != map.dims() || g.base != map.base)
        throw GridMismatch("density grid " + describe(g) + " does not match the map");
}

constexpr double kFitR2 = 0.99;
constexpr double kConstantSpread = 1e-12;
constexpr double kZero = 1e-13;

ModeVerdict classify(const std::vector<double>& err) {
    ModeVerdict v;
    const std::size_t n = err.size();
    const std::size_t start = n / 2;
    std::vector<double> t, y;
    for (std::size_t i = start; i < n; ++i) {
        t.push_back(static_cast<double>(i));
        y.push_back(err[i]);
    }
    auto [mn, mx] = std::minmax_element(y.begin(), y.end());
    if (err.back() < kZero) {
        GeometricFit f = fit_geometric(t, y, kZero);
        v.converges = true;
        v.rate = f.points >= 2 ? f.rate : 0.0;
        v.r2 = f.points >= 2 ? f.r2 : 1.0;
        return v;
    }
    GeometricFit f = fit_geometric(t, y);
    v.rate = f.rate;
    v.r2 = f.r2;
    if (*mx - *mn < kConstantSpread) return v;
    v.converges = f.r2 > kFitR2 && f.rate < 1.0;
    return v;
}

} // namespace

Density fp_renyi(const Density& d, int base) {
    const Grid& g = d.grid();
    require(g.dims == 1, "fp_renyi needs a one-dimensional density");
    if (g.base != base) throw GridMismatch("density base differs from the map base");
    require(g.digits() >= 1, "fp_renyi needs a grid of level >= 1");
    if (g.lo >= 2) {
        std::vector<double> v(d.values().begin(), d.values().end());
        return Density(Grid::window(1, base, g.lo - 1, g.hi - 1), std::move(v));
    }
    const std::size_t tail = g.size() / static_cast<std::size_t>(base);
    std::vector<double> avg(tail, 0.0);
    for (std::size_t c = 0; c < g.size(); ++c) avg[c % tail] += d[c];
    std::vector<double> out(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) out[c] = avg[c / static_cast<std::size_t>(base)] / base;
    return Density(g, std::move(out));
}

Density fp_baker(const Density& d, int base) {
    const Grid& g = d.grid();
    require(g.dims == 2, "fp_baker needs a two-dimensional density");
    if (g.base != base) throw GridMismatch("density base differs from the map base");
    if (g.digits() == 0) return d;
    std::vector<double> v(d.values().begin(), d.values().end());
    return Density(Grid::window(2, base, g.lo - 1, g.hi - 1), std::move(v));
}

Density fp_step(const MapSpec& map, const Density& d) {
    check_map_grid(map, d.grid());
    return map.kind == MapKind::Renyi ? fp_renyi(d, map.base) : fp_baker(d, map.base);
}

Density fp_power(const MapSpec& map, const Density& d, int t) {
    require(t >= 0, "t must be >= 0");
    Density cur = d;
    for (int s = 0; s < t; ++s) cur = fp_step(map, cur);
    return cur;
}

double image_measure(const MapSpec& map, const GridSet& a, int t) {
    require(t >= 0, "t must be >= 0");
    require(a.count() > 0, "set must be non-empty");
    return forward_image(map, a, t).measure();
}

double correlation(const GridSet& a, const GridSet& b, const MapSpec& map, int t) {
    return intersection_measure(a, counterimage(map, b, t)) - a.measure() * b.measure();
}

double weak_pairing(const Density& d, const Density& g) { return pairing(d, g); }

double cesaro_average(const MapSpec& map, const Density& d, const Density& g, int T) {
    require(T >= 1, "T must be >= 1");
    double s = 0.0;
    Density cur = d;
    for (int k = 0; k < T; ++k) {
        s += pairing(cur, g);
        if (k + 1 < T) cur = fp_step(map, cur);
    }
    return s / T;
}

GeometricFit fit_geometric(const std::vector<double>& t, const std::vector<double>& y, double floor) {
    GeometricFit f;
    double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] > floor)) continue;
        double ly = std::log(y[i]);
        st += t[i];
        sy += ly;
        stt += t[i] * t[i];
        sty += t[i] * ly;
        syy += ly * ly;
        ++f.points;
    }
    if (f.points < 2) return f;
    const double n = static_cast<double>(f.points);
    const double vt = stt - st * st / n;
    const double vy = syy - sy * sy / n;
    const double cty = sty - st * sy / n;
    const double slope = cty / vt;
    f.rate = std::exp(slope);
    f.r2 = vy > 0.0 ? cty * cty / (vt * vy) : 1.0;
    return f;
}

ConvergenceReport convergence_report(const MapSpec& map, const Density& d, const std::vector<Density>& probes,
                                     int t_max, const Partition* coarse) {
    require(t_max >= 4, "T_max must be >= 4");
    check_map_grid(map, d.grid());
    const Grid one_cell = Grid::window(map.dims(), map.base, 1, 0);
    const Density uniform = Density::uniform(one_cell);
    std::vector<double> targets;
    for (const auto& g : probes) targets.push_back(integral(g));

    ConvergenceReport rep;
    std::vector<double> sums(probes.size(), 0.0);
    std::vector<double> weak_err, ces_err, strong;
    Density cur = d;
    for (int t = 0; t <= t_max; ++t) {
        Density view = coarse ? coarse_grain(cur, *coarse) : cur;
        ConvergenceRow row;
        row.t = t;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            double w = pairing(view, probes[i]);
            sums[i] += w;
            row.weak.push_back(w);
            row.cesaro.push_back(sums[i] / (t + 1));
            row.weak_error = std::max(row.weak_error, std::abs(w - targets[i]));
            row.cesaro_error = std::max(row.cesaro_error, std::abs(row.cesaro.back() - targets[i]));
        }
        Density diff = view - uniform;
        row.strong_norm = l1_norm(diff);
        row.l2_distance = l2_norm(diff);
        weak_err.push_back(row.weak_error);
        ces_err.push_back(row.cesaro_error);
        strong.push_back(row.strong_norm);
        rep.series.push_back(std::move(row));
        if (t < t_max) cur = fp_step(map, cur);
    }
    rep.weak = classify(weak_err);
    rep.strong = classify(strong);
    rep.cesaro = classify(ces_err);
    if (!rep.cesaro.converges) {
        const double half = ces_err[ces_err.size() / 2];
        rep.cesaro.converges = ces_err.back() < kZero || ces_err.back() < 0.75 * half;
    }
    return rep;
}

} // namespace arrowlab
