#include "arrowlab/cosmo.hpp"

#include <algorithm>
#include <cmath>

#include "arrowlab/error.hpp"

namespace arrowlab {

namespace {

double contraction(double u) {
    require(u >= 0.0 && u < 1.0, "boost speed must satisfy 0 <= u < 1");
    return std::sqrt(1.0 - u * u);
}

void check_time(double t) { require(t > 0.0, "t must be positive"); }

} // namespace

ThermoState boost_thermo(const ThermoState& s, double u) {
    require(s.v > 0.0 && s.T > 0.0, "volume and temperature must be positive");
    const double k = contraction(u);
    ThermoState b = s;
    b.v = s.v * k;
    b.p = s.p;
    b.E = (s.E + u * u * s.p * s.v) / k;
    b.Q = s.Q * k;
    b.S = s.S;
    b.T = s.T * k;
    return b;
}

double boost_work(double dW0, double dE0, double d_pv0, double u) {
    const double k = contraction(u);
    return k * dW0 - u * u / k * (dE0 + d_pv0);
}

double first_law_residual(const ThermoState& a, const ThermoState& b, double dW0, double u) {
    const double dE0 = b.E - a.E;
    const double d_pv0 = b.p * b.v - a.p * a.v;
    const double dQ0 = dE0 + dW0;
    const ThermoState ba = boost_thermo(a, u), bb = boost_thermo(b, u);
    const double dE = bb.E - ba.E;
    const double dQ = dQ0 * contraction(u);
    const double dW = boost_work(dW0, dE0, d_pv0, u);
    return dE - (dQ - dW);
}

void CosmoParams::validate() const {
    require(t0 > 0.0 && T0 > 0.0 && omega1 > 0.0 && gamma > 0.0 && a0 > 0.0 && c_prime > 0.0,
            "cosmological parameters must be positive");
}

double radiation_temperature(double a, const CosmoParams& p) {
    require(a > 0.0, "scale factor must be positive");
    return p.T0 * p.a0 / a;
}

double blackbody_comoving_entropy(double a, const CosmoParams& p, double c_s, double dsigma) {
    const double T = radiation_temperature(a, p);
    return 4.0 / 3.0 * c_s * T * T * T * a * a * a * dsigma;
}

std::vector<double> comoving_entropy_rate(const std::vector<double>& t, const std::vector<double>& phi0,
                                          const std::vector<double>& a) {
    const std::size_t n = t.size();
    require(n >= 3 && phi0.size() == n && a.size() == n, "need at least three aligned samples");
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = phi0[i] * a[i] * a[i] * a[i];
    std::vector<double> r(n);
    // Three-point Lagrange derivative on a possibly non-uniform grid.
    auto deriv = [&](std::size_t i0, std::size_t at) {
        const double x0 = t[i0], x1 = t[i0 + 1], x2 = t[i0 + 2], x = t[at];
        const double l0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
        const double l1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
        const double l2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
        return l0 * f[i0] + l1 * f[i0 + 1] + l2 * f[i0 + 2];
    };
    for (std::size_t i = 0; i < n; ++i) r[i] = deriv(std::min(i == 0 ? 0 : i - 1, n - 3), i);
    return r;
}

double scale_factor(double t, const CosmoParams& p) {
    check_time(t);
    return p.a0 * std::pow(t / p.t0, 2.0 / 3.0);
}

double log_entropy_gap(double t, const CosmoParams& p) {
    p.validate();
    const double a = scale_factor(t, p);
    return std::log(p.c_prime) - p.gamma * t - 1.5 * std::log(a) + p.omega1 * a / (p.T0 * p.a0);
}

double entropy_gap(double t, const CosmoParams& p) { return std::exp(log_entropy_gap(t, p)); }

double entropy_gap_rate(double t, const CosmoParams& p) {
    p.validate();
    check_time(t);
    return -p.gamma - 1.0 / t + 2.0 * p.omega1 / (3.0 * p.T0 * p.t0) * std::cbrt(p.t0 / t);
}

CriticalTimes critical_times(const CosmoParams& p) {
    p.validate();
    const double A = 2.0 * p.omega1 / (3.0 * p.T0);
    const double B = p.gamma * p.t0;
    auto f = [&](double u) { return u * u * u - A * u + B; };
    CriticalTimes r;
    r.discriminant = 4.0 * A * A * A - 27.0 * B * B;
    r.asymptotic_1 = p.t0 * std::pow(A, -1.5);
    r.asymptotic_2 = std::pow(A / B, 3.0) * p.t0;

    auto bisect = [&](double lo, double hi) {
        // f(lo) and f(hi) have opposite signs
        const bool rising = f(hi) > f(lo);
        for (int i = 0; i < 400 && hi - lo > 0.0; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            ((f(mid) < 0.0) == rising ? lo : hi) = mid;
        }
        return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
    };

    const double umin = std::sqrt(A / 3.0);
    if (f(umin) > 0.0) {
        r.diagnostic = "no positive critical times: discriminant " + std::to_string(r.discriminant) +
                       " < 0, the entropy gap declines monotonically";
        return r;
    }
    if (f(umin) == 0.0) {
        r.u_roots = {umin};
    } else {
        double hi = 2.0 * umin + 1.0;
        while (f(hi) <= 0.0) hi *= 2.0;
        r.u_roots = {bisect(0.0, umin), bisect(umin, hi)};
        r.diagnostic = "two critical times";
    }
    for (double u : r.u_roots) {
        r.residuals.push_back(std::abs(f(u)));
        r.times.push_back(p.t0 / (u * u * u));
    }
    std::sort(r.times.begin(), r.times.end());
    if (r.u_roots.size() == 1) r.diagnostic = "double root: the gap has an inflection instead of extrema";
    return r;
}

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::ThermalizingEarly: return "thermalizing-early";
    case Regime::ComplexityGrowth: return "complexity-growth";
    case Regime::FinalApproach: return "final-approach";
    }
    return "unknown";
}

Regime classify_regime(double t, const CosmoParams& p, const CriticalTimes& roots) {
    if (entropy_gap_rate(t, p) > 0.0) return Regime::ComplexityGrowth;
    if (roots.times.size() == 2) return t < roots.times[0] ? Regime::ThermalizingEarly : Regime::FinalApproach;
    return Regime::FinalApproach;
}

std::vector<Regime> regime_report(const CosmoParams& p, const std::vector<double>& t_grid) {
    const CriticalTimes roots = critical_times(p);
    std::vector<Regime> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(classify_regime(t, p, roots));
    return out;
}

} // namespace arrowlab
