#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "arrowlab/cosmo.hpp"
#include "arrowlab/entropy.hpp"
#include "arrowlab/error.hpp"
#include "arrowlab/friedrichs.hpp"
#include "arrowlab/quantum.hpp"
#include "arrowlab/spectral.hpp"
#include "arrowlab/transfer.hpp"

namespace arrowlab::cli {

using nlohmann::ordered_json;

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
    require(jobs >= 1, "jobs must be >= 1");
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

namespace {

int as_int(const RunConfig& c, const std::string& key, long long lo, long long hi) {
    const long long v = c.integer(key);
    if (v < lo || v > hi)
        throw InvalidArgument("parameter '" + key + "' must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "]");
    return static_cast<int>(v);
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

ordered_json verdict_json(const ModeVerdict& v) { return {{"converges", v.converges}, {"rate", v.rate}, {"r2", v.r2}}; }

Density line_density(const std::string& kind, int base, int level, std::mt19937_64& rng) {
    const Grid g = Grid::line(base, level);
    auto sampled = [&](auto f) {
        Density s = Density::sample_1d(g, f);
        return Density::normalized(g, std::vector<double>(s.values().begin(), s.values().end()));
    };
    if (kind == "exp") return sampled([](double x) { return std::exp(x); });
    if (kind == "linear") return sampled([](double x) { return 2.0 * x; });
    if (kind == "step") return sampled([](double x) { return x < 0.5 ? 1.0 : 0.0; });
    if (kind == "random") return random_density(g, rng);
    throw InvalidArgument("unknown density '" + kind + "' (expected exp, linear, step or random)");
}

Density square_density(const std::string& kind, int base, int level, std::mt19937_64& rng) {
    if (kind == "left") {
        GridSet strip = GridSet::box(base, 1, 0, 0, 1, 0, 1);
        return (1.0 / strip.measure()) * indicator(strip);
    }
    if (kind == "random") return random_density(Grid::square(base, level), rng);
    throw InvalidArgument("unknown density '" + kind + "' (expected left or random)");
}

std::vector<Density> interval_probes(int base, int level) {
    std::vector<Density> v;
    for (int k = 1; k <= level; ++k) {
        const std::size_t n = static_cast<std::size_t>(std::pow(base, k));
        for (std::size_t i = 0; i < n; ++i) v.push_back(indicator(GridSet::interval(base, k, i, i + 1)));
    }
    return v;
}

std::vector<GridSet> square_cells(int base, int level) {
    std::vector<GridSet> v;
    const std::size_t n = static_cast<std::size_t>(std::pow(base, level));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v.push_back(GridSet::box(base, level, level, i, i + 1, j, j + 1));
    return v;
}

std::vector<Density> square_probes(int base, int level) {
    std::vector<Density> v;
    for (int k = 1; k <= level; ++k)
        for (auto& s : square_cells(base, k)) v.push_back(indicator(s));
    return v;
}

std::string convergence_csv(const ConvergenceReport& r) {
    std::string s = "t,weak_error,cesaro_error,strong_norm,l2_distance\n";
    for (const auto& row : r.series)
        s += std::to_string(row.t) + "," + num(row.weak_error) + "," + num(row.cesaro_error) + "," +
             num(row.strong_norm) + "," + num(row.l2_distance) + "\n";
    return s;
}

ordered_json verdicts_json(const ConvergenceReport& r) {
    return {{"cesaro", verdict_json(r.cesaro)}, {"weak", verdict_json(r.weak)}, {"strong", verdict_json(r.strong)}};
}

void renyi_evolve(const RunConfig& c) {
    const int beta = as_int(c, "beta", 2, 16), level = as_int(c, "level", 1, 20), T = as_int(c, "t", 0, 1000);
    auto rng = rng_for(c.seed(), 0);
    const MapSpec map(MapKind::Renyi, beta);
    const Density d = line_density(c.str("density"), beta, level, rng);

    std::string rows = "t,cell,x,value\n";
    Density cur = d;
    const double h = 1.0 / static_cast<double>(d.size());
    for (int t = 0; t <= T; ++t) {
        for (std::size_t k = 0; k < cur.size(); ++k)
            rows += std::to_string(t) + "," + std::to_string(k) + "," + num((static_cast<double>(k) + 0.5) * h) + "," +
                    num(cur[k]) + "\n";
        if (t < T) cur = fp_step(map, cur);
    }
    ConvergenceReport r = convergence_report(map, d, interval_probes(beta, as_int(c, "probe-level", 1, 8)), T);

    Outputs out(c);
    out.csv("renyi_density.csv", rows);
    out.csv("renyi_convergence.csv", convergence_csv(r));
    out.json("renyi_report.json", {{"verdicts", verdicts_json(r)}, {"smooth_rate", 1.0 / beta}});
}

void baker_evolve(const RunConfig& c) {
    const int beta = as_int(c, "beta", 2, 8), level = as_int(c, "level", 1, 5), T = as_int(c, "t", 0, 200);
    auto rng = rng_for(c.seed(), 0);
    const MapSpec map(MapKind::Baker, beta);
    const Density d = square_density(c.str("density"), beta, level, rng);
    const auto cells = square_cells(beta, level);
    const std::size_t n = static_cast<std::size_t>(std::pow(beta, level));

    std::string rows = "t,i,j,value\n";
    Density cur = d;
    for (int t = 0; t <= T; ++t) {
        for (std::size_t k = 0; k < cells.size(); ++k)
            rows += std::to_string(t) + "," + std::to_string(k / n) + "," + std::to_string(k % n) + "," +
                    num(measure_of_set(cur, cells[k]) / cells[k].measure()) + "\n";
        if (t < T) cur = fp_step(map, cur);
    }
    ConvergenceReport r = convergence_report(map, d, square_probes(beta, as_int(c, "probe-level", 1, 4)), T);

    Outputs out(c);
    out.csv("baker_density.csv", rows);
    out.csv("baker_convergence.csv", convergence_csv(r));
    out.json("baker_report.json", {{"verdicts", verdicts_json(r)}});
}

Poly<double> poly_from(const std::vector<double>& coeffs) { return Poly<double>(coeffs); }

void renyi_spectral(const RunConfig& c) {
    const int beta = as_int(c, "beta", 2, 16), nmax = as_int(c, "nmax", 0, 16), T = as_int(c, "t", 0, 200);
    const Poly<double> rho = poly_from(c.list("coeffs"));
    require(rho.degree() <= static_cast<std::size_t>(nmax), "density degree exceeds nmax");
    const BernoulliBasis basis(static_cast<std::size_t>(nmax));

    std::ostringstream b, e;
    write_basis_csv(b, basis);
    write_evolution_csv(e, rho, T, beta, basis);

    const auto a = expand(rho, basis);
    std::size_t first = 0;
    for (std::size_t n = 1; n < a.size() && first == 0; ++n)
        if (std::abs(a[n]) > 1e-14) first = n;
    std::vector<double> ts, norms;
    double worst = 0.0;
    ordered_json rows = ordered_json::array();
    for (int t = 0; t <= T; ++t) {
        EquilibriumSplit s = decompose_equilibrium(rho, t, beta, basis);
        Poly<double> sp = evolve_spectral(rho, t, beta, basis), dp = evolve_direct(rho, t, beta);
        double diff = 0.0;
        for (std::size_t j = 0; j < std::max(sp.c.size(), dp.c.size()); ++j)
            diff = std::max(diff, std::abs(sp.coeff(j) - dp.coeff(j)));
        worst = std::max(worst, diff);
        ts.push_back(t);
        norms.push_back(s.fluctuation_norm);
        rows.push_back({{"t", t}, {"fluctuation_norm", s.fluctuation_norm}, {"spectral_direct_diff", diff}});
    }
    GeometricFit fit = fit_geometric(ts, norms, 1e-300);
    ordered_json report = {{"equilibrium", a[0]},
                           {"gamma", std::log(static_cast<double>(beta))},
                           {"slowest_mode", first},
                           {"expected_rate", first ? std::pow(beta, -static_cast<double>(first)) : 0.0},
                           {"fitted_rate", fit.points >= 2 ? fit.rate : 0.0},
                           {"fit_r2", fit.r2},
                           {"max_spectral_direct_diff", worst},
                           {"series", rows}};
    if (worst > 1e-8) throw NumericalFailure("spectral and direct evolution disagree by " + num(worst));

    Outputs out(c);
    out.csv("spectral_basis.csv", b.str());
    out.csv("spectral_evolution.csv", e.str());
    out.json("spectral_convergence.json", report);
}

void mixing_report(const RunConfig& c) {
    const std::string kind = c.str("map");
    const bool baker = kind == "baker";
    require(baker || kind == "renyi", "map must be renyi or baker");
    const int beta = as_int(c, "beta", 2, 8), T = as_int(c, "t", 0, 500), coarse = as_int(c, "coarse", 0, 4);
    const int level = as_int(c, "level", 1, baker ? 6 : 22), probe = as_int(c, "probe-level", 1, baker ? 4 : 8);
    auto rng = rng_for(c.seed(), 0);
    const MapSpec map(baker ? MapKind::Baker : MapKind::Renyi, beta);
    std::string dens = c.str("density");
    if (dens == "default") dens = baker ? "left" : "exp";
    const Density d = baker ? square_density(dens, beta, level, rng) : line_density(dens, beta, level, rng);

    std::unique_ptr<Partition> part;
    if (coarse > 0) {
        std::vector<GridSet> cells;
        if (baker) {
            cells = square_cells(beta, coarse);
        } else {
            const std::size_t n = static_cast<std::size_t>(std::pow(beta, coarse));
            for (std::size_t i = 0; i < n; ++i) cells.push_back(GridSet::interval(beta, coarse, i, i + 1));
        }
        part = std::make_unique<Partition>(cells);
    }
    ConvergenceReport r = convergence_report(map, d, baker ? square_probes(beta, probe) : interval_probes(beta, probe),
                                             T, part.get());
    Outputs out(c);
    out.csv("mixing.csv", convergence_csv(r));
    out.json("mixing.json", {{"map", kind}, {"coarse_grained", coarse > 0}, {"verdicts", verdicts_json(r)}});
}

void entropy_suite(const RunConfig& c) {
    const int beta = as_int(c, "beta", 2, 8), level = as_int(c, "level", 2, 20),
              blevel = as_int(c, "baker-level", 1, 5), T = as_int(c, "t", 0, 200);
    const int kernels = as_int(c, "kernels", 1, 100000), triples = as_int(c, "triples", 1, 100000),
              ksize = as_int(c, "kernel-size", 2, 256);
    const double amp = c.num("amplitude");
    require(amp > 0.0 && amp < 1.0, "amplitude must be in (0, 1)");

    auto rng = rng_for(c.seed(), 0);
    const MapSpec renyi(MapKind::Renyi, beta), baker(MapKind::Baker, beta);
    const Density smooth = line_density("exp", beta, level, rng);
    auto rs = conditional_entropy_series(renyi, smooth, Density::uniform(smooth.grid()), T);
    const Density rb = random_density(Grid::square(beta, blevel), rng);
    auto bs = conditional_entropy_series(baker, rb, Density::uniform(rb.grid()), T);
    Partition quarters(square_cells(beta, 1));
    auto cs = conditional_entropy_series(baker, rb, Density::uniform(rb.grid()), T, &quarters);

    std::string rows = "t,renyi,baker,baker_coarse\n";
    double renyi_rise_min = std::numeric_limits<double>::infinity(), baker_spread = 0.0;
    for (int t = 0; t <= T; ++t) {
        const auto k = static_cast<std::size_t>(t);
        rows += std::to_string(t) + "," + num(rs[k].value) + "," + num(bs[k].value) + "," + num(cs[k].value) + "\n";
        if (t > 0) renyi_rise_min = std::min(renyi_rise_min, rs[k].value - rs[k - 1].value);
        baker_spread = std::max(baker_spread, std::abs(bs[k].value - bs[0].value));
    }

    std::vector<VoigtReport> reps(static_cast<std::size_t>(kernels)), perms(static_cast<std::size_t>(kernels));
    parallel_for(reps.size(), c.jobs(), [&](std::size_t k) {
        auto r = rng_for(c.seed(), 1000 + k);
        reps[k] = voigt_monotonicity_suite(random_positive_kernel(static_cast<std::size_t>(ksize), r),
                                           static_cast<std::size_t>(triples), r());
        perms[k] = voigt_monotonicity_suite(random_permutation_kernel(static_cast<std::size_t>(ksize), r),
                                            static_cast<std::size_t>(triples), r());
    });
    double worst = std::numeric_limits<double>::infinity(), perm = 0.0;
    std::size_t total = 0;
    for (std::size_t k = 0; k < reps.size(); ++k) {
        worst = std::min(worst, reps[k].worst);
        perm = std::max(perm, perms[k].largest);
        total += reps[k].trials;
    }

    const Grid g = Grid::line(beta, 12);
    const Density rho_star =
        Density::sample_1d(g, [](double x) { return 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * x); });
    const Density rho1 = Density::sample_1d(g, [](double x) { return std::cos(2.0 * std::numbers::pi * x); });
    double sup = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) sup = std::max(sup, std::abs(rho1[k] / rho_star[k]));
    const double t_amp = std::log(sup / amp);
    const double quad = entropy_gap_quadratic(rho_star, rho1, 1.0, t_amp);
    const EntropyValue exact = entropy_gap_exact(rho_star, rho1, 1.0, t_amp);

    Outputs out(c);
    out.csv("entropy_series.csv", rows);
    out.json("entropy_suite.json",
             {{"renyi_min_increment", renyi_rise_min},
              {"baker_spread", baker_spread},
              {"baker_coarse_final", cs.back().value},
              {"voigt", {{"triples", total}, {"worst", worst}, {"permutation_max_abs", perm}}},
              {"gap", {{"amplitude", amp},
                       {"t", t_amp},
                       {"quadratic", quad},
                       {"exact", exact.value},
                       {"relative_error", std::abs(quad / exact.value - 1.0)}}}});
}

Eigen::MatrixXcd random_complex(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

void dephase(const RunConfig& c) {
    const int n = as_int(c, "dim", 1, 64), steps = as_int(c, "steps", 1, 1000000);
    const double t_max = c.num("t-max"), T = c.num("cesaro-t");
    require(t_max > 0.0 && T > 0.0, "t-max and cesaro-t must be positive");
    auto rng = rng_for(c.seed(), 0);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    std::vector<double> spec(static_cast<std::size_t>(n));
    for (auto& w : spec) w = u(rng);
    Eigen::MatrixXcd a = random_complex(n, rng);
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace();
    Eigen::MatrixXcd obs = random_complex(n, rng);
    obs = (0.5 * (obs + obs.adjoint())).eval();

    std::string rows = "t,expectation,coherent_part\n";
    cplx diag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) diag += rho(i, i) * obs(i, i);
    for (int k = 0; k <= steps; ++k) {
        const double t = t_max * k / steps;
        const cplx e = expectation(dephase_evolution(rho, spec, t), obs);
        rows += num(t) + "," + num(e.real()) + "," + num(e.real() - diag.real()) + "\n";
    }
    const int fine = 200000;
    cplx avg = 0.0;
    for (int k = 0; k <= fine; ++k) {
        const double w = (k == 0 || k == fine) ? 0.5 : 1.0;
        avg += w * expectation(dephase_evolution(rho, spec, T * k / fine), obs);
    }
    avg /= static_cast<double>(fine);
    const cplx closed = cesaro_expectation(rho, spec, obs, T);

    Outputs out(c);
    out.csv("dephase.csv", rows);
    out.json("dephase.json", {{"spectrum", spec},
                              {"limit", diag.real()},
                              {"cesaro_closed_form", closed.real()},
                              {"cesaro_numeric", avg.real()},
                              {"closed_vs_numeric", std::abs(closed - avg)},
                              {"distance_to_limit", std::abs(closed - diag)}});
}

void friedrichs(const RunConfig& c) {
    FriedrichsModel m;
    m.omega1 = c.num("omega1");
    m.lambda = c.num("lambda");
    m.omega_max = c.num("omega-max");
    m.g = FormFactor::exponential(c.num("form-a"));
    m.validate();
    const int modes = as_int(c, "n-modes", 2, 20000), panels = as_int(c, "panels", 1, 100000);
    const double t_max = c.num("t-max"), dt = c.num("dt");
    require(t_max >= 0.0 && dt > 0.0, "t-max must be >= 0 and dt > 0");

    ResonancePole pole = find_pole(m);
    if (!(pole.residual < 1e-8)) throw NumericalFailure("pole search did not converge: residual " + num(pole.residual));
    const DiscretizedFriedrichs oracle(m, modes);
    const SpectralDensityPath path(m, panels, 16);
    std::vector<double> ts;
    for (long k = 0; k * dt <= t_max + 1e-9; ++k) ts.push_back(static_cast<double>(k) * dt);
    std::vector<double> po(ts.size()), pq(ts.size());
    parallel_for(ts.size(), c.jobs(), [&](std::size_t i) {
        po[i] = oracle.survival(ts[i]);
        pq[i] = path.survival(ts[i]);
    });
    const double t_rec = oracle.recurrence_time();
    std::string rows = "t,p_oracle,p_quadrature,p_pole,flagged\n";
    double two_path = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const bool flagged = ts[i] > 0.5 * t_rec;
        if (!flagged) two_path = std::max(two_path, std::abs(po[i] - pq[i]));
        rows += num(ts[i]) + "," + num(po[i]) + "," + num(pq[i]) + "," + num(pole_approximation(pole, ts[i])) + "," +
                (flagged ? "1" : "0") + "\n";
    }
    ordered_json fit_json;
    try {
        DecayFit fit = fit_mid_regime(ts, po, pole.gamma1, t_rec);
        fit_json = {{"rate", fit.rate}, {"r2", fit.r2}, {"t_lo", fit.t_lo}, {"t_hi", fit.t_hi}};
    } catch (const NumericalFailure& e) {
        // short runs or coarse mode grids leave no exponential window
        fit_json = {{"unavailable", e.what()}};
    }

    Outputs out(c);
    out.csv("survival.csv", rows);
    out.json("pole.json", {{"beta1", pole.beta1},
                           {"gamma1", pole.gamma1},
                           {"residual", pole.residual},
                           {"iterations", pole.iterations},
                           {"golden_rule", golden_rule_rate(m)},
                           {"recurrence_time", t_rec},
                           {"two_path_max", two_path},
                           {"fit", fit_json}});
}

void lambda_lyapunov_run(const RunConfig& c) {
    const int n = as_int(c, "dim", 1, 64), steps = as_int(c, "steps", 1, 1000000);
    const double t_max = c.num("t-max"), p0 = c.num("undamped");
    require(t_max > 0.0 && p0 >= 0.0 && p0 <= 1.0, "t-max must be positive and undamped in [0, 1]");
    const bool restrict = c.integer("restrict") != 0;
    auto rng = rng_for(c.seed(), 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> nd;
    std::vector<cplx> spec;
    std::vector<bool> free;
    for (int i = 0; i < n; ++i) {
        const bool zero = u(rng) < p0;
        spec.emplace_back(4.0 * u(rng), zero ? 0.0 : -u(rng));
        free.push_back(zero);
    }
    Eigen::MatrixXcd rho(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const bool keep = !restrict || (free[static_cast<std::size_t>(i)] && free[static_cast<std::size_t>(j)]);
            rho(i, j) = keep ? cplx(nd(rng), nd(rng)) : cplx(0.0);
        }
    std::vector<double> ts;
    for (int k = 0; k <= steps; ++k) ts.push_back(t_max * k / steps);
    LyapunovSeries y = lambda_lyapunov(spec, rho, ts);

    std::string rows = "t,y,y_unitary\n";
    double rise = 0.0, spread = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        rows += num(ts[k]) + "," + num(y.y[k]) + "," + num(y.y_unitary[k]) + "\n";
        if (k) rise = std::max(rise, y.y[k] - y.y[k - 1]);
        spread = std::max(spread, std::abs(y.y[k] - y.y[0]));
    }
    ordered_json sp = ordered_json::array();
    for (const auto& z : spec) sp.push_back({z.real(), z.imag()});
    if (rise > 1e-12) throw NumericalFailure("Lyapunov variable increased by " + num(rise));

    Outputs out(c);
    out.csv("lyapunov.csv", rows);
    out.json("lyapunov.json", {{"spectrum", sp},
                               {"max_increase", rise},
                               {"spread", spread},
                               {"constant", spread <= 1e-12 * std::max(1.0, y.y[0])}});
}

void cosmo_gap(const RunConfig& c) {
    CosmoParams p;
    p.t0 = c.num("t0");
    p.T0 = c.num("t0-temp");
    p.omega1 = c.num("omega1");
    p.gamma = c.num("gamma-t0") / p.t0;
    p.validate();
    const double lo = c.num("t-min"), hi = c.num("t-max");
    const int points = as_int(c, "points", 2, 1000000);
    require(lo > 0.0 && hi > lo, "need 0 < t-min < t-max");
    CriticalTimes r = critical_times(p);
    for (double e : r.residuals)
        if (e > 1e-10) throw NumericalFailure("critical-time cubic residual " + num(e));

    std::string rows = "t,log_gap,rate,regime\n";
    for (int k = 0; k < points; ++k) {
        const double t = lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1));
        rows += num(t) + "," + num(log_entropy_gap(t, p)) + "," + num(entropy_gap_rate(t, p)) + "," +
                regime_name(classify_regime(t, p, r)) + "\n";
    }
    Outputs out(c);
    out.csv("gap.csv", rows);
    out.json("roots.json", {{"A", 2.0 * p.omega1 / (3.0 * p.T0)},
                            {"B", p.gamma * p.t0},
                            {"critical_times", r.times},
                            {"u_roots", r.u_roots},
                            {"residuals", r.residuals},
                            {"asymptotic_1", r.asymptotic_1},
                            {"asymptotic_2", r.asymptotic_2},
                            {"discriminant", r.discriminant},
                            {"diagnostic", r.diagnostic}});
}

void boost(const RunConfig& c) {
    ThermoState s;
    s.v = c.num("v");
    s.p = c.num("p");
    s.E = c.num("energy");
    s.Q = c.num("heat");
    s.S = c.num("entropy");
    s.T = c.num("temperature");
    const double u = c.num("u"), dv = c.num("dv"), de = c.num("de");
    const int steps = as_int(c, "steps", 1, 100000);
    require(u >= 0.0 && u < 1.0, "u must be in [0, 1)");

    auto row = [](const ThermoState& b) {
        return num(b.E) + "," + num(b.v) + "," + num(b.p) + "," + num(b.T) + "," + num(b.Q) + "," + num(b.S);
    };
    std::string rows = "u,E,v,p,T,Q,S\n";
    for (int k = 0; k <= steps; ++k) {
        const double uk = u * k / steps;
        rows += num(uk) + "," + row(boost_thermo(s, uk)) + "\n";
    }
    ThermoState after = s;
    after.v += dv;
    after.E += de;
    const double res = first_law_residual(s, after, s.p * dv, u);
    if (std::abs(res) > 1e-10) throw NumericalFailure("first law residual " + num(res) + " in the moving frame");
    const ThermoState b = boost_thermo(s, u);

    Outputs out(c);
    out.csv("boost.csv", rows);
    out.json("boost.json", {{"u", u},
                            {"boosted", {{"E", b.E}, {"v", b.v}, {"p", b.p}, {"T", b.T}, {"Q", b.Q}, {"S", b.S}}},
                            {"first_law_residual", res}});
}

} // namespace

const std::vector<Experiment>& experiments() {
    static const std::vector<Experiment> list = {
        {"renyi-evolve",
         "evolve a density under the Renyi map",
         {{"beta", "2", "map base"},
          {"level", "8", "grid level"},
          {"t", "20", "steps"},
          {"density", "exp", "exp, linear, step or random"},
          {"probe-level", "3", "dyadic interval probes up to this level"}},
         renyi_evolve},
        {"baker-evolve",
         "evolve a density under the baker map",
         {{"beta", "2", "map base"},
          {"level", "3", "grid level per axis"},
          {"t", "12", "steps"},
          {"density", "left", "left or random"},
          {"probe-level", "3", "square probes up to this level"}},
         baker_evolve},
        {"renyi-spectral",
         "Bernoulli-polynomial decomposition of a polynomial density",
         {{"beta", "2", "map base"},
          {"nmax", "8", "largest basis index"},
          {"t", "10", "steps"},
          {"coeffs", "0,2", "monomial coefficients c0,c1,..."}},
         renyi_spectral},
        {"mixing-report",
         "Cesaro, weak and strong convergence verdicts",
         {{"map", "renyi", "renyi or baker"},
          {"beta", "2", "map base"},
          {"level", "16", "grid level"},
          {"t", "16", "steps"},
          {"density", "default", "density kind (exp for renyi, left for baker)"},
          {"coarse", "0", "coarse-graining partition level, 0 for none"},
          {"probe-level", "3", "probe level"}},
         mixing_report},
        {"entropy-suite",
         "conditional entropy series, Voigt suite and quadratic gap",
         {{"beta", "2", "map base"},
          {"level", "12", "Renyi grid level"},
          {"baker-level", "3", "baker grid level"},
          {"t", "12", "steps"},
          {"kernels", "20", "random kernels"},
          {"triples", "50", "(rho, sigma) pairs per kernel"},
          {"kernel-size", "8", "kernel dimension"},
          {"amplitude", "0.01", "fluctuation amplitude for the gap check"}},
         entropy_suite},
        {"dephase",
         "discrete-spectrum dephasing and Cesaro limit",
         {{"dim", "4", "Hilbert space dimension"},
          {"t-max", "20", "final time"},
          {"steps", "200", "time steps"},
          {"cesaro-t", "200", "averaging window"}},
         dephase},
        {"friedrichs",
         "Friedrichs model pole and survival probability",
         {{"omega1", "1", "level energy"},
          {"lambda", "0.1", "coupling"},
          {"omega-max", "20", "band edge"},
          {"form-a", "0.5", "form factor g = exp(-a w)"},
          {"n-modes", "2000", "modes in the diagonalization oracle"},
          {"panels", "2000", "quadrature panels"},
          {"t-max", "400", "final time"},
          {"dt", "1", "time step"}},
         friedrichs},
        {"lambda-lyapunov",
         "Lyapunov variable for a complex spectrum",
         {{"dim", "4", "dimension"},
          {"t-max", "20", "final time"},
          {"steps", "200", "time steps"},
          {"undamped", "0.35", "probability a mode is undamped"},
          {"restrict", "0", "1 restricts the support to undamped modes"}},
         lambda_lyapunov_run},
        {"cosmo-gap",
         "entropy gap, critical times and regimes",
         {{"omega1", "1.5", "characteristic energy"},
          {"t0-temp", "1", "present temperature"},
          {"gamma-t0", "0.1", "relaxation rate times present age"},
          {"t0", "1", "present age"},
          {"t-min", "0.01", "first time"},
          {"t-max", "100000", "last time"},
          {"points", "60", "log-spaced times"}},
         cosmo_gap},
        {"boost",
         "thermodynamic quantities in a moving frame",
         {{"u", "0.6", "frame speed"},
          {"v", "1", "proper volume"},
          {"p", "1", "pressure"},
          {"energy", "1", "proper energy"},
          {"heat", "0.5", "proper heat"},
          {"entropy", "1", "entropy"},
          {"temperature", "1", "proper temperature"},
          {"dv", "0.1", "volume change of the test process"},
          {"de", "0.2", "energy change of the test process"},
          {"steps", "10", "points in the speed sweep"}},
         boost},
    };
    return list;
}

} // namespace arrowlab::cli
