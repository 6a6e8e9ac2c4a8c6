#include "arrowlab/maps.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "arrowlab/error.hpp"

namespace arrowlab {

namespace {

using u128 = unsigned __int128;

// Mersenne prime 2^61 - 1.
constexpr std::uint64_t kOrbitDenominator = (std::uint64_t{1} << 61) - 1;

void check_unit(double v, const char* what) {
    if (!(v >= 0.0 && v < 1.0)) throw InvalidArgument(std::string(what) + " must lie in [0,1)");
}

void check_base(int base) { require(base >= 2, "map base must be >= 2"); }

Grid shifted(const Grid& g, int by) { return Grid::window(g.dims, g.base, g.lo + by, g.hi + by); }

} // namespace

MapSpec::MapSpec(MapKind k, int b) : kind(k), base(b) { check_base(b); }

double renyi_step(double x, int base) {
    check_base(base);
    check_unit(x, "x");
    double v = base * x;
    return v - std::floor(v);
}

Point2 baker_step(Point2 pt, int base) {
    check_base(base);
    check_unit(pt.x, "x");
    check_unit(pt.y, "y");
    double r = std::floor(base * pt.x);
    return {base * pt.x - r, (pt.y + r) / base};
}

Point2 baker_inverse_step(Point2 pt, int base) {
    check_base(base);
    check_unit(pt.x, "x");
    check_unit(pt.y, "y");
    double s = std::floor(base * pt.y);
    return {(pt.x + s) / base, base * pt.y - s};
}

double factor_project(Point2 pt) { return pt.x; }

PhasePoint time_reverse(PhasePoint pt) { return {pt.q, -pt.p}; }

PhasePoint HarmonicOscillator::flow(PhasePoint s, double t, double dt) const {
    require(dt > 0.0, "time step must be positive");
    const auto n = static_cast<long long>(std::llround(std::abs(t) / dt));
    const double h = t < 0.0 ? -dt : dt;
    const double w2 = omega * omega;
    for (long long i = 0; i < n; ++i) {
        double p_half = s.p - 0.5 * h * w2 * s.q;
        s.q += h * p_half;
        s.p = p_half - 0.5 * h * w2 * s.q;
    }
    return s;
}

double reversibility_check(const HarmonicOscillator& h, PhasePoint x0, double t, double dt) {
    PhasePoint x = h.flow(x0, t, dt);
    x = time_reverse(x);
    x = h.flow(x, t, dt);
    x = time_reverse(x);
    return std::hypot(x.q - x0.q, x.p - x0.p);
}

std::uint64_t RationalPoint::leading_digits(int base, int k) const {
    u128 scale = 1;
    for (int i = 0; i < k; ++i) scale *= static_cast<u128>(base);
    return static_cast<std::uint64_t>(scale * num / den);
}

RationalPoint renyi_step(RationalPoint x, int base) {
    check_base(base);
    require(x.den > 0 && x.num < x.den, "rational point must lie in [0,1)");
    return {static_cast<std::uint64_t>((static_cast<u128>(base) * x.num) % x.den), x.den};
}

std::vector<RationalPoint> renyi_orbit(RationalPoint x0, int base, int steps) {
    std::vector<RationalPoint> out{x0};
    for (int t = 0; t < steps; ++t) out.push_back(renyi_step(out.back(), base));
    return out;
}

std::vector<OrbitRow> orbit(const MapSpec& map, Point2 start, int steps) {
    std::vector<OrbitRow> rows;
    Point2 p = start;
    for (int t = 0; t <= steps; ++t) {
        rows.push_back({t, p.x, p.y});
        if (map.kind == MapKind::Renyi)
            p.x = renyi_step(p.x, map.base);
        else
            p = baker_step(p, map.base);
    }
    return rows;
}

void write_orbit_csv(std::ostream& os, const MapSpec& map, const std::vector<OrbitRow>& rows) {
    std::ostringstream buf;
    buf.precision(17);
    buf << (map.kind == MapKind::Renyi ? "t,x\n" : "t,x,y\n");
    for (const auto& r : rows) {
        buf << r.t << ',' << r.x;
        if (map.kind == MapKind::Baker) buf << ',' << r.y;
        buf << '\n';
    }
    os << buf.str();
}

namespace {

// Exact phase point for recurrence sampling: x as a rational, y by the finite
// list of leading digits the membership test can ever look at.
struct ExactPoint {
    RationalPoint x;
    std::vector<int> ydigits; // e1, e2, ...
};

std::size_t cell_of(const Grid& g, const ExactPoint& p) {
    std::size_t idx = 0;
    const std::uint64_t xd = g.hi >= 1 ? p.x.leading_digits(g.base, g.hi) : 0;
    for (int pos = g.lo; pos <= g.hi; ++pos) {
        int d;
        if (pos >= 1) {
            std::uint64_t div = 1;
            for (int i = pos; i < g.hi; ++i) div *= static_cast<std::uint64_t>(g.base);
            d = static_cast<int>((xd / div) % static_cast<std::uint64_t>(g.base));
        } else {
            d = p.ydigits[static_cast<std::size_t>(-pos)];
        }
        idx = idx * static_cast<std::size_t>(g.base) + static_cast<std::size_t>(d);
    }
    return idx;
}

void step(const MapSpec& map, ExactPoint& p) {
    if (map.kind == MapKind::Baker && !p.ydigits.empty()) {
        int d1 = static_cast<int>(p.x.leading_digits(map.base, 1));
        for (std::size_t i = p.ydigits.size() - 1; i > 0; --i) p.ydigits[i] = p.ydigits[i - 1];
        p.ydigits[0] = d1;
    }
    p.x = renyi_step(p.x, map.base);
}

} // namespace

RecurrenceStats recurrence_stats(const MapSpec& map, const GridSet& a, std::size_t n_samples, int max_t,
                                 std::uint64_t seed) {
    require(a.grid().dims == map.dims() && a.grid().base == map.base, "set grid does not match the map");
    require(a.count() > 0, "recurrence set is empty");
    require(max_t >= 0, "max_t must be >= 0");
    const Grid& g = a.grid();
    const std::size_t ylen = g.lo <= 0 ? static_cast<std::size_t>(1 - g.lo) : 0;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> xdist(0, kOrbitDenominator - 1);
    std::uniform_int_distribution<int> ddist(0, map.base - 1);

    RecurrenceStats st;
    st.seed = seed;
    st.samples = n_samples;
    st.first_return_histogram.assign(static_cast<std::size_t>(max_t), 0);
    double time_sum = 0.0;
    const std::size_t max_tries = 1000 * n_samples + 1000;
    std::size_t tries = 0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        ExactPoint p;
        do {
            if (++tries > max_tries) throw NumericalFailure("recurrence sampling: set measure too small");
            p.x = {xdist(rng), kOrbitDenominator};
            p.ydigits.resize(ylen);
            for (auto& d : p.ydigits) d = ddist(rng);
        } while (!a.contains(cell_of(g, p)));
        for (int t = 1; t <= max_t; ++t) {
            step(map, p);
            if (a.contains(cell_of(g, p))) {
                ++st.returned;
                ++st.first_return_histogram[static_cast<std::size_t>(t - 1)];
                time_sum += t;
                break;
            }
        }
    }
    st.return_fraction = n_samples ? static_cast<double>(st.returned) / static_cast<double>(n_samples) : 0.0;
    st.mean_return_time = st.returned ? time_sum / static_cast<double>(st.returned) : 0.0;
    return st;
}

GridSet counterimage(const MapSpec& map, const GridSet& a, int t) {
    require(t >= 0, "t must be >= 0");
    require(a.grid().dims == map.dims() && a.grid().base == map.base, "set grid does not match the map");
    if (a.grid().digits() == 0) return a;
    // Both maps shift digit positions by one per step: (S z)_p = z_{p+1}.
    std::vector<std::uint8_t> m(a.members().begin(), a.members().end());
    return GridSet(shifted(a.grid(), t), std::move(m));
}

GridSet forward_image(const MapSpec& map, const GridSet& a, int t) {
    require(t >= 0, "t must be >= 0");
    require(a.grid().dims == map.dims() && a.grid().base == map.base, "set grid does not match the map");
    GridSet cur = a;
    for (int s = 0; s < t; ++s) {
        const Grid& g = cur.grid();
        if (g.digits() == 0) break;
        if (map.kind == MapKind::Baker || g.lo >= 2) {
            std::vector<std::uint8_t> m(cur.members().begin(), cur.members().end());
            cur = GridSet(shifted(g, -1), std::move(m));
            continue;
        }
        // Renyi map on a window starting at digit 1: the leading digit is
        // forgotten, so a cell of the image is hit if any preimage is in A.
        Grid ng = Grid::window(1, g.base, 1, g.hi - 1);
        std::vector<std::uint8_t> m(ng.size(), 0);
        for (std::size_t c = 0; c < g.size(); ++c)
            if (cur.contains(c)) m[c % ng.size()] = 1;
        cur = GridSet(ng, std::move(m));
    }
    return cur;
}

} // namespace arrowlab
