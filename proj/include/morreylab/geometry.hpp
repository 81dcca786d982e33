#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace morreylab {

// Points live in R^1 or R^2; the second coordinate is unused (0) in 1D.
using Point = std::array<double, 2>;

double norm(const Point& p, int dim);
double distance(const Point& a, const Point& b, int dim);

// Lebesgue measure of a ball: 2r in 1D, pi r^2 in 2D.
double ball_volume(int dim, double radius);
// Surface measure of the unit sphere: counting measure on {-1,+1} in 1D
// (mass 2), arc length on the circle in 2D (mass 2pi).
double sphere_measure(int dim);

struct Box {
    Point lo{};
    Point hi{};
    int dim = 1;

    double width(int axis) const { return hi[axis] - lo[axis]; }
    bool contains(const Point& p) const;
};

struct Ball {
    Point center{};
    double radius = 0.0;
    int dim = 1;

    bool contains(const Point& p) const { return distance(center, p, dim) < radius; }
    double volume() const { return ball_volume(dim, radius); }
};

// Uniform cell-centered grid over a box; the same resolution on every
// axis. Linear indexing is row-major with the first axis fastest.
class Grid {
public:
    Grid() = default;
    Grid(const Box& box, int resolution);

    const Box& box() const { return box_; }
    int dim() const { return box_.dim; }
    int resolution() const { return res_; }
    std::size_t cell_count() const;
    double spacing(int axis) const { return spacing_[axis]; }
    double cell_volume() const;

    Point cell_center(std::size_t index) const;
    // Index of the cell whose center is nearest to p (p clamped to the box).
    std::size_t nearest_cell(const Point& p) const;

    // Per-axis index range [lo, hi) of cells whose centers can lie within
    // distance r of c along that axis. Used to restrict ball scans.
    std::pair<int, int> axis_range(int axis, double c, double r) const;

    bool operator==(const Grid& other) const;

private:
    Box box_{};
    int res_ = 0;
    std::array<double, 2> spacing_{};
};

Grid make_grid(const Box& box, int resolution);

struct SampledFunction {
    Grid grid;
    std::vector<double> values; // cell-centered, zero-extended outside box

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

// Builds a SampledFunction by evaluating fn at every cell center.
SampledFunction sample(const Grid& grid, const std::function<double(const Point&)>& fn);

// Midpoint-rule integral of f over a region: sum of f at cell centers
// lying in the region, times cell volume. Compensated summation in fixed
// cell order; empty intersection gives 0.
double integrate(const SampledFunction& f, const Ball& region);
double integrate(const SampledFunction& f, const Box& region);
double integrate(const SampledFunction& f);

// Finite search family for suprema over balls: a geometric radius ladder
// crossed with every stride-th grid center. include_box_center adds the
// box midpoint (never itself a cell center on even grids).
struct BallFamily {
    std::vector<Point> centers;
    std::vector<double> radii;
    int dim = 1;

    std::size_t size() const { return centers.size() * radii.size(); }
    Ball ball(std::size_t k) const;
};

BallFamily ball_family(const Grid& grid, double r_min, double r_max, double growth,
                       int center_stride, bool include_box_center = true);

} // namespace morreylab
