#include "arrowlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "arrowlab/error.hpp"

namespace arrowlab {

namespace {

std::size_t ipow(int base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

constexpr int kMaxDigits = 40;

void check_grid(const Grid& g) {
    require(g.dims == 1 || g.dims == 2, "grid dims must be 1 or 2");
    require(g.base >= 2, "grid base must be >= 2");
    require(g.dims == 2 || g.lo >= 1 || g.hi < g.lo, "1-D grid window must start at position >= 1");
    require(std::log2(static_cast<double>(g.base)) * g.digits() <= kMaxDigits,
            "grid too fine: " + describe(g));
}

// Map a cell of `fine` to the cell of `coarse` containing it; requires the
// window of `coarse` to lie inside the window of `fine`.
std::size_t project_cell(const Grid& fine, const Grid& coarse, std::size_t cell) {
    if (coarse.digits() == 0) return 0;
    const std::size_t drop = ipow(fine.base, fine.hi - coarse.hi);
    return (cell / drop) % coarse.size();
}

bool window_contains(const Grid& outer, const Grid& inner) {
    if (inner.digits() == 0) return true;
    return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

bool windows_disjoint(const Grid& a, const Grid& b) {
    if (a.digits() == 0 || b.digits() == 0) return true;
    return a.hi < b.lo || b.hi < a.lo;
}

void check_compatible(const Grid& a, const Grid& b) {
    if (a.dims != b.dims || a.base != b.base)
        throw GridMismatch("grid mismatch: " + describe(a) + " vs " + describe(b));
}

Grid overlap(const Grid& a, const Grid& b) {
    if (windows_disjoint(a, b)) return Grid::window(a.dims, a.base, 1, 0);
    return Grid::window(a.dims, a.base, std::max(a.lo, b.lo), std::min(a.hi, b.hi));
}

// Average of d over the digits outside the sub-window o.
std::vector<double> marginal(const Density& d, const Grid& o) {
    std::vector<double> m(o.size(), 0.0);
    for (std::size_t c = 0; c < d.size(); ++c) m[project_cell(d.grid(), o, c)] += d[c];
    const double scale = static_cast<double>(o.size()) / static_cast<double>(d.size());
    for (auto& v : m) v *= scale;
    return m;
}

} // namespace

Grid Grid::line(int base, int level) {
    require(level >= 0, "grid level must be >= 0");
    return window(1, base, 1, level);
}

Grid Grid::square(int base, int level) { return rect(base, level, level); }

Grid Grid::rect(int base, int level_x, int level_y) {
    require(level_x >= 0 && level_y >= 0, "grid levels must be >= 0");
    return window(2, base, 1 - level_y, level_x);
}

Grid Grid::window(int dims, int base, int lo, int hi) {
    Grid g{dims, base, lo, hi};
    if (g.hi < g.lo) {
        g.lo = 1;
        g.hi = 0;
    }
    check_grid(g);
    return g;
}

std::size_t Grid::size() const { return ipow(base, digits()); }

double Grid::cell_volume() const { return std::pow(static_cast<double>(base), -digits()); }

bool Grid::is_standard() const {
    if (digits() == 0) return true;
    if (dims == 1) return lo == 1;
    return lo <= 1 && hi >= 0;
}

int Grid::digit(std::size_t cell, int position) const {
    if (position < lo || position > hi) return 0;
    return static_cast<int>((cell / ipow(base, hi - position)) % static_cast<std::size_t>(base));
}

std::size_t Grid::cell_of(double x) const {
    require(dims == 1, "cell_of(x) needs a 1-D grid");
    return cell_of(x, 0.0);
}

std::size_t Grid::cell_of(double x, double y) const {
    require(x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0, "point outside the unit cell");
    std::size_t idx = 0;
    for (int p = lo; p <= hi; ++p) {
        double v = p >= 1 ? x : y;
        int k = p >= 1 ? p : 1 - p;
        double scaled = v * std::pow(static_cast<double>(base), k);
        int d = static_cast<int>(std::fmod(std::floor(scaled), static_cast<double>(base)));
        idx = idx * static_cast<std::size_t>(base) + static_cast<std::size_t>(d);
    }
    return idx;
}

std::pair<double, double> Grid::cell_origin(std::size_t cell) const {
    require(is_standard(), "cell geometry needs a standard grid");
    double x = 0.0, y = 0.0;
    double scale = 1.0;
    for (int p = 1; p <= hi; ++p) {
        scale /= base;
        x += digit(cell, p) * scale;
    }
    scale = 1.0;
    for (int k = 1; k <= 1 - lo && dims == 2; ++k) {
        scale /= base;
        y += digit(cell, 1 - k) * scale;
    }
    return {x, y};
}

std::string describe(const Grid& g) {
    std::ostringstream os;
    os << g.dims << "D base " << g.base;
    if (g.is_standard()) {
        if (g.dims == 1)
            os << " level " << g.level_x();
        else
            os << " levels " << g.level_x() << "x" << g.level_y();
    } else {
        os << " window [" << g.lo << "," << g.hi << "]";
    }
    return os.str();
}

Grid common_refinement(const Grid& a, const Grid& b) {
    check_compatible(a, b);
    if (a.digits() == 0) return b;
    if (b.digits() == 0) return a;
    return Grid::window(a.dims, a.base, std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

// --- Density ---------------------------------------------------------------

Density::Density(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    check_grid(grid_);
    require(values_.size() == grid_.size(), "value count does not match grid " + describe(grid_));
}

Density Density::uniform(const Grid& grid) { return Density(grid, std::vector<double>(grid.size(), 1.0)); }

Density Density::zero(const Grid& grid) { return Density(grid, std::vector<double>(grid.size(), 0.0)); }

Density Density::normalized(const Grid& grid, std::vector<double> values) {
    Density d(grid, std::move(values));
    require(d.is_nonnegative(), "density values must be non-negative");
    double n = l1_norm(d);
    require(n > 0.0, "cannot normalize an all-zero density");
    for (double& v : d.values_) v /= n;
    return d;
}

bool Density::is_nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

// --- GridSet -----------------------------------------------------------------

GridSet::GridSet(Grid grid, std::vector<std::uint8_t> members) : grid_(grid), members_(std::move(members)) {
    check_grid(grid_);
    require(members_.size() == grid_.size(), "membership count does not match grid " + describe(grid_));
}

GridSet GridSet::full(const Grid& grid) { return GridSet(grid, std::vector<std::uint8_t>(grid.size(), 1)); }

GridSet GridSet::interval(int base, int level, std::size_t first, std::size_t last) {
    Grid g = Grid::line(base, level);
    require(first <= last && last <= g.size(), "interval cell range out of bounds");
    std::vector<std::uint8_t> m(g.size(), 0);
    std::fill(m.begin() + static_cast<std::ptrdiff_t>(first), m.begin() + static_cast<std::ptrdiff_t>(last), 1);
    return GridSet(g, std::move(m));
}

GridSet GridSet::box(int base, int level_x, int level_y, std::size_t x0, std::size_t x1, std::size_t y0,
                     std::size_t y1) {
    Grid g = Grid::rect(base, level_x, level_y);
    const std::size_t nx = ipow(base, level_x);
    const std::size_t ny = ipow(base, level_y);
    require(x0 <= x1 && x1 <= nx && y0 <= y1 && y1 <= ny, "box cell range out of bounds");
    std::vector<std::uint8_t> m(g.size(), 0);
    for (std::size_t c = 0; c < g.size(); ++c) {
        auto [x, y] = g.cell_origin(c);
        auto ix = static_cast<std::size_t>(std::llround(x * static_cast<double>(nx)));
        auto iy = static_cast<std::size_t>(std::llround(y * static_cast<double>(ny)));
        m[c] = (ix >= x0 && ix < x1 && iy >= y0 && iy < y1) ? 1 : 0;
    }
    return GridSet(g, std::move(m));
}

std::size_t GridSet::count() const { return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), 1)); }

double GridSet::measure() const { return static_cast<double>(count()) * grid_.cell_volume(); }

Partition::Partition(std::vector<GridSet> c) : cells(std::move(c)) {
    require(cells.size() >= 2, "partition needs at least two cells");
    Grid g = cells.front().grid();
    for (const auto& a : cells) g = common_refinement(g, a.grid());
    std::vector<int> cover(g.size(), 0);
    for (const auto& a : cells) {
        GridSet r = refine(a, g);
        for (std::size_t i = 0; i < g.size(); ++i) cover[i] += r.contains(i) ? 1 : 0;
        double mu = a.measure();
        require(mu > 0.0 && mu < 1.0, "trivial partition: every cell needs 0 < mu(A_i) < mu(X)");
        weights.push_back(mu);
    }
    require(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }),
            "partition cells must be disjoint and cover the space");
}

StochasticKernel::StochasticKernel(Eigen::MatrixXd m, double tol) : matrix(std::move(m)) {
    require(matrix.rows() == matrix.cols() && matrix.rows() > 0, "kernel must be square");
    require((matrix.array() >= 0.0).all(), "kernel entries must be non-negative");
    for (Eigen::Index j = 0; j < matrix.cols(); ++j)
        require(std::abs(matrix.col(j).sum() - 1.0) <= tol, "kernel columns must sum to 1");
}

// --- operations ----------------------------------------------------------------

Density refine(const Density& d, const Grid& target) {
    check_compatible(d.grid(), target);
    require(window_contains(target, d.grid()), "refine target must contain the source window");
    if (target == d.grid()) return d;
    std::vector<double> v(target.size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = d[project_cell(target, d.grid(), c)];
    return Density(target, std::move(v));
}

GridSet refine(const GridSet& a, const Grid& target) {
    check_compatible(a.grid(), target);
    require(window_contains(target, a.grid()), "refine target must contain the source window");
    if (target == a.grid()) return a;
    std::vector<std::uint8_t> m(target.size());
    for (std::size_t c = 0; c < m.size(); ++c) m[c] = a.contains(project_cell(target, a.grid(), c)) ? 1 : 0;
    return GridSet(target, std::move(m));
}

Density indicator(const GridSet& a) {
    std::vector<double> v(a.grid().size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = a.contains(c) ? 1.0 : 0.0;
    return Density(a.grid(), std::move(v));
}

double l1_norm(const Density& d) {
    double s = 0.0;
    for (double v : d.values()) s += std::abs(v);
    return s * d.grid().cell_volume();
}

double l2_norm(const Density& d) {
    double s = 0.0;
    for (double v : d.values()) s += v * v;
    return std::sqrt(s * d.grid().cell_volume());
}

double integral(const Density& d) {
    double s = 0.0;
    for (double v : d.values()) s += v;
    return s * d.grid().cell_volume();
}

double pairing(const Density& f, const Density& g) {
    check_compatible(f.grid(), g.grid());
    // Digits outside the shared window are independent under Lebesgue measure.
    const Grid o = overlap(f.grid(), g.grid());
    const auto mf = marginal(f, o), mg = marginal(g, o);
    double s = 0.0;
    for (std::size_t c = 0; c < o.size(); ++c) s += mf[c] * mg[c];
    return s * o.cell_volume();
}

double measure_of_set(const Density& d, const GridSet& a) { return pairing(d, indicator(a)); }

double intersection_measure(const GridSet& a, const GridSet& b) { return pairing(indicator(a), indicator(b)); }

Density apply_markov(const StochasticKernel& k, const Density& d) {
    if (k.size() != d.size())
        throw GridMismatch("kernel size " + std::to_string(k.size()) + " does not match density size " +
                           std::to_string(d.size()));
    Eigen::Map<const Eigen::VectorXd> in(d.values().data(), static_cast<Eigen::Index>(d.size()));
    Eigen::VectorXd out = k.matrix * in;
    return Density(d.grid(), std::vector<double>(out.data(), out.data() + out.size()));
}

Density coarse_grain(const Density& d, const Partition& p) {
    Grid h = p.cells.front().grid();
    for (const auto& a : p.cells) h = common_refinement(h, a.grid());
    check_compatible(d.grid(), h);
    const Grid o = overlap(d.grid(), h);
    const auto md = marginal(d, o);
    std::vector<double> out(h.size(), 0.0);
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        GridSet a = refine(p.cells[i], h);
        double mass = 0.0;
        for (std::size_t c = 0; c < h.size(); ++c)
            if (a.contains(c)) mass += md[project_cell(h, o, c)];
        const double avg = mass * h.cell_volume() / p.weights[i];
        for (std::size_t c = 0; c < h.size(); ++c)
            if (a.contains(c)) out[c] = avg;
    }
    return Density(h, std::move(out));
}

namespace {
template <class Op> Density combine(const Density& a, const Density& b, Op op) {
    Grid h = common_refinement(a.grid(), b.grid());
    Density ra = refine(a, h), rb = refine(b, h);
    std::vector<double> v(h.size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = op(ra[c], rb[c]);
    return Density(h, std::move(v));
}
} // namespace

Density operator-(const Density& a, const Density& b) { return combine(a, b, std::minus<>{}); }
Density operator+(const Density& a, const Density& b) { return combine(a, b, std::plus<>{}); }

Density operator*(double s, const Density& d) {
    std::vector<double> v(d.values().begin(), d.values().end());
    for (double& x : v) x *= s;
    return Density(d.grid(), std::move(v));
}

// --- CSV -----------------------------------------------------------------------

void write_csv(std::ostream& os, const Density& d) {
    const Grid& g = d.grid();
    os << "dims,base,level\n" << g.dims << ',' << g.base << ',';
    if (g.dims == 1 && g.is_standard())
        os << g.level_x();
    else if (g.dims == 2 && g.is_standard() && g.level_x() == g.level_y())
        os << g.level_x();
    else
        os << g.lo << ':' << g.hi;
    os << "\ncell_index,value\n";
    std::ostringstream buf;
    buf.precision(17);
    for (std::size_t c = 0; c < d.size(); ++c) buf << c << ',' << d[c] << '\n';
    os << buf.str();
}

Density read_density_csv(std::istream& is) {
    std::string line;
    auto next = [&]() {
        while (std::getline(is, line))
            if (!line.empty() && line[0] != '#') return true;
        return false;
    };
    require(next() && line == "dims,base,level", "density CSV: missing `dims,base,level` header");
    require(next(), "density CSV: missing grid line");
    int dims = 0, base = 0;
    char comma = 0;
    std::istringstream gl(line);
    gl >> dims >> comma >> base >> comma;
    std::string level;
    gl >> level;
    Grid g;
    if (auto colon = level.find(':'); colon != std::string::npos) {
        g = Grid::window(dims, base, std::stoi(level.substr(0, colon)), std::stoi(level.substr(colon + 1)));
    } else {
        int k = std::stoi(level);
        g = dims == 1 ? Grid::line(base, k) : Grid::square(base, k);
    }
    require(next() && line == "cell_index,value", "density CSV: missing `cell_index,value` header");
    std::vector<double> v(g.size(), 0.0);
    std::vector<char> seen(g.size(), 0);
    while (next()) {
        auto comma_at = line.find(',');
        require(comma_at != std::string::npos, "density CSV: malformed row `" + line + "`");
        auto idx = std::stoull(line.substr(0, comma_at));
        require(idx < v.size(), "density CSV: cell index out of range");
        v[idx] = std::stod(line.substr(comma_at + 1));
        seen[idx] = 1;
    }
    require(std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; }), "density CSV: missing cells");
    return Density(g, std::move(v));
}

} // namespace arrowlab
