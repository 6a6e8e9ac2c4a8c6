#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "arrowlab/measure.hpp"

namespace arrowlab {

enum class MapKind { Renyi, Baker };

struct MapSpec {
    MapKind kind = MapKind::Renyi;
    int base = 2;

    MapSpec(MapKind k, int b);
    int dims() const { return kind == MapKind::Renyi ? 1 : 2; }
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point2&) const = default;
};

// Hamiltonian phase point (q, p).
struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
    bool operator==(const PhasePoint&) const = default;
};

double renyi_step(double x, int base);
Point2 baker_step(Point2 pt, int base);
Point2 baker_inverse_step(Point2 pt, int base);
// Projection of the baker square onto its x-coordinate; semiconjugates the
// baker map to the Renyi map with the same base.
double factor_project(Point2 pt);

PhasePoint time_reverse(PhasePoint pt);

// H = p^2/2 + omega^2 q^2/2 integrated with velocity Verlet.
struct HarmonicOscillator {
    double omega = 1.0;

    PhasePoint flow(PhasePoint start, double t, double dt) const;
};

// Integrate forward t, reverse momenta, integrate forward t, reverse again;
// returns the Euclidean distance to the starting point.
double reversibility_check(const HarmonicOscillator& h, PhasePoint x0, double t, double dt);

// Exact rational point p/q of [0,1) with a fixed prime denominator; the Renyi
// step keeps the denominator so long orbits never collapse to 0.
struct RationalPoint {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    // floor(base^k * x), exact.
    std::uint64_t leading_digits(int base, int k) const;
};

RationalPoint renyi_step(RationalPoint x, int base);
std::vector<RationalPoint> renyi_orbit(RationalPoint x0, int base, int steps);

struct OrbitRow {
    int t;
    double x;
    double y;
};
std::vector<OrbitRow> orbit(const MapSpec& map, Point2 start, int steps);
void write_orbit_csv(std::ostream& os, const MapSpec& map, const std::vector<OrbitRow>& rows);

struct RecurrenceStats {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::size_t returned = 0;
    double return_fraction = 0.0;
    // histogram[t-1] = number of samples whose first return happened at step t.
    std::vector<std::size_t> first_return_histogram;
    double mean_return_time = 0.0;
};

// Samples points uniformly in A and records the first time their orbit
// re-enters A within max_t steps. Orbits are followed in exact arithmetic.
RecurrenceStats recurrence_stats(const MapSpec& map, const GridSet& a, std::size_t n_samples, int max_t,
                                 std::uint64_t seed);

// Exact counterimage S^{-t}(A) and forward image S^t(A) as grid sets.
GridSet counterimage(const MapSpec& map, const GridSet& a, int t);
GridSet forward_image(const MapSpec& map, const GridSet& a, int t);

} // namespace arrowlab
