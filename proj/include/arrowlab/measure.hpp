#pragma once

// Piecewise-constant densities on beta-adic grids over [0,1) and [0,1)^2.
//
// A grid cell is a cylinder set: the set of points whose base-beta digits at a
// contiguous window of positions [lo, hi] take fixed values. Positions p >= 1
// are the digits of x (x = 0.d1 d2 d3 ...); positions p <= 0 are the digits of
// y read outward from the origin (y = 0.e1 e2 ..., with e_k at position 1-k).
// With this labelling the baker map is the shift p -> p-1 and the Renyi map
// drops digit d1, so both transfer operators are exact on grid functions.
//
// The familiar rectangular grid with level_x digits of x and level_y digits of
// y is the window [1 - level_y, level_x]. Every cell has the same Lebesgue
// measure base^-(hi-lo+1); the whole space has measure 1.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace arrowlab {

struct Grid {
    int dims = 1;
    int base = 2;
    int lo = 1;
    int hi = 0; // hi < lo: no digits, one cell

    static Grid line(int base, int level);
    static Grid square(int base, int level);
    static Grid rect(int base, int level_x, int level_y);
    static Grid window(int dims, int base, int lo, int hi);

    int digits() const { return hi >= lo ? hi - lo + 1 : 0; }
    std::size_t size() const;
    double cell_volume() const;

    // Rectangular grid with origin-anchored window.
    bool is_standard() const;
    int level_x() const { return hi > 0 ? hi : 0; }
    int level_y() const { return lo <= 0 ? 1 - lo : 0; }

    // Digit of `cell` at `position`; 0 when the position lies outside the window.
    int digit(std::size_t cell, int position) const;
    std::size_t cell_of(double x) const;
    std::size_t cell_of(double x, double y) const;
    // Lower-left corner and side lengths of a cell of a standard grid.
    std::pair<double, double> cell_origin(std::size_t cell) const;

    bool operator==(const Grid&) const = default;
};

std::string describe(const Grid& g);

// Smallest window containing both; throws GridMismatch on dims/base mismatch.
Grid common_refinement(const Grid& a, const Grid& b);

// Signed grid function. Operations that need a probability density check
// non-negativity and normalization themselves.
class Density {
  public:
    Density() = default;
    Density(Grid grid, std::vector<double> values);

    static Density uniform(const Grid& grid);
    static Density zero(const Grid& grid);
    // Checks non-negativity and rescales to unit L1 norm.
    static Density normalized(const Grid& grid, std::vector<double> values);

    template <class F> static Density sample_1d(const Grid& grid, F&& f) {
        std::vector<double> v(grid.size());
        for (std::size_t c = 0; c < v.size(); ++c) {
            auto [x0, y0] = grid.cell_origin(c);
            (void)y0;
            double h = 1.0 / static_cast<double>(v.size());
            v[c] = f(x0 + 0.5 * h);
        }
        return Density(grid, std::move(v));
    }

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    bool is_nonnegative() const;

  private:
    Grid grid_{};
    std::vector<double> values_{1.0};
};

class GridSet {
  public:
    GridSet() = default;
    GridSet(Grid grid, std::vector<std::uint8_t> members);

    static GridSet full(const Grid& grid);
    // Union of cells [first, last) of a level-k line grid.
    static GridSet interval(int base, int level, std::size_t first, std::size_t last);
    // Cells with x-index in [x0,x1) and y-index in [y0,y1) of a standard grid.
    static GridSet box(int base, int level_x, int level_y, std::size_t x0, std::size_t x1,
                       std::size_t y0, std::size_t y1);

    const Grid& grid() const { return grid_; }
    bool contains(std::size_t cell) const { return members_[cell] != 0; }
    std::span<const std::uint8_t> members() const { return members_; }
    std::size_t count() const;
    double measure() const;

  private:
    Grid grid_{};
    std::vector<std::uint8_t> members_{0};
};

struct Partition {
    std::vector<GridSet> cells;
    // Lebesgue measures mu(A_i).
    std::vector<double> weights;

    explicit Partition(std::vector<GridSet> cells);
};

// Column-stochastic matrix acting on cell-value vectors.
struct StochasticKernel {
    Eigen::MatrixXd matrix;

    explicit StochasticKernel(Eigen::MatrixXd m, double tol = 1e-12);
    std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

Density refine(const Density& d, const Grid& target);
GridSet refine(const GridSet& a, const Grid& target);
Density indicator(const GridSet& a);

double l1_norm(const Density& d);
double l2_norm(const Density& d);
double integral(const Density& d);
// Integral of f*g over the space; exact on grid functions.
double pairing(const Density& f, const Density& g);
double measure_of_set(const Density& d, const GridSet& a);
double intersection_measure(const GridSet& a, const GridSet& b);

Density apply_markov(const StochasticKernel& k, const Density& d);
// Cell averages of d, returned on the common grid of the partition cells.
Density coarse_grain(const Density& d, const Partition& p);

Density operator-(const Density& a, const Density& b);
Density operator+(const Density& a, const Density& b);
Density operator*(double s, const Density& d);

// CSV: header `dims,base,level`, then `cell_index,value` rows.
void write_csv(std::ostream& os, const Density& d);
Density read_density_csv(std::istream& is);

} // namespace arrowlab
