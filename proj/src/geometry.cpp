#include "morreylab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "morreylab/parallel.hpp"

namespace morreylab {

double norm(const Point& p, int dim) {
    return dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]);
}

double distance(const Point& a, const Point& b, int dim) {
    return dim == 1 ? std::abs(a[0] - b[0]) : std::hypot(a[0] - b[0], a[1] - b[1]);
}

double ball_volume(int dim, double radius) {
    return dim == 1 ? 2.0 * radius : std::numbers::pi * radius * radius;
}

double sphere_measure(int dim) {
    return dim == 1 ? 2.0 : 2.0 * std::numbers::pi;
}

bool Box::contains(const Point& p) const {
    for (int a = 0; a < dim; ++a) {
        if (p[a] < lo[a] || p[a] > hi[a]) return false;
    }
    return true;
}

Grid::Grid(const Box& box, int resolution) : box_(box), res_(resolution) {
    for (int a = 0; a < box.dim; ++a) spacing_[a] = box.width(a) / resolution;
}

std::size_t Grid::cell_count() const {
    std::size_t n = static_cast<std::size_t>(res_);
    return dim() == 1 ? n : n * n;
}

double Grid::cell_volume() const {
    return dim() == 1 ? spacing_[0] : spacing_[0] * spacing_[1];
}

Point Grid::cell_center(std::size_t index) const {
    Point p{};
    if (dim() == 1) {
        p[0] = box_.lo[0] + (static_cast<double>(index) + 0.5) * spacing_[0];
    } else {
        const std::size_t ix = index % static_cast<std::size_t>(res_);
        const std::size_t iy = index / static_cast<std::size_t>(res_);
        p[0] = box_.lo[0] + (static_cast<double>(ix) + 0.5) * spacing_[0];
        p[1] = box_.lo[1] + (static_cast<double>(iy) + 0.5) * spacing_[1];
    }
    return p;
}

std::size_t Grid::nearest_cell(const Point& p) const {
    std::array<long, 2> idx{};
    for (int a = 0; a < dim(); ++a) {
        long k = static_cast<long>(std::floor((p[a] - box_.lo[a]) / spacing_[a]));
        idx[a] = std::clamp(k, 0L, static_cast<long>(res_) - 1);
    }
    return dim() == 1 ? static_cast<std::size_t>(idx[0])
                      : static_cast<std::size_t>(idx[1]) * res_ + idx[0];
}

std::pair<int, int> Grid::axis_range(int axis, double c, double r) const {
    // centers at lo + (k + 0.5) h; want |center - c| < r
    const double h = spacing_[axis];
    int lo = static_cast<int>(std::ceil((c - r - box_.lo[axis]) / h - 0.5));
    int hi = static_cast<int>(std::floor((c + r - box_.lo[axis]) / h - 0.5)) + 1;
    lo = std::max(lo, 0);
    hi = std::min(hi, res_);
    if (hi < lo) hi = lo;
    return {lo, hi};
}

bool Grid::operator==(const Grid& other) const {
    return res_ == other.res_ && box_.dim == other.box_.dim &&
           box_.lo == other.box_.lo && box_.hi == other.box_.hi;
}

Grid make_grid(const Box& box, int resolution) {
    if (box.dim != 1 && box.dim != 2) throw std::invalid_argument("make_grid: dim must be 1 or 2");
    if (resolution < 2) throw std::invalid_argument("make_grid: resolution must be >= 2");
    for (int a = 0; a < box.dim; ++a) {
        if (!(box.lo[a] < box.hi[a])) throw std::invalid_argument("make_grid: degenerate box (lo >= hi)");
    }
    return Grid(box, resolution);
}

SampledFunction sample(const Grid& grid, const std::function<double(const Point&)>& fn) {
    SampledFunction f;
    f.grid = grid;
    f.values.resize(grid.cell_count());
    parallel_for(f.values.size(), [&](std::size_t i) { f.values[i] = fn(grid.cell_center(i)); });
    return f;
}

namespace {

// Sums f over the cells of the sub-rectangle [x0,x1) x [y0,y1) whose
// centers lie in the region, in fixed row-major order.
template <class Member>
double restricted_sum(const SampledFunction& f, int x0, int x1, int y0, int y1, Member in_region) {
    const Grid& g = f.grid;
    const int res = g.resolution();
    if (g.dim() == 1) {
        CompensatedSum s;
        for (int i = x0; i < x1; ++i) {
            const Point p = g.cell_center(static_cast<std::size_t>(i));
            if (in_region(p)) s.add(f.values[static_cast<std::size_t>(i)]);
        }
        return s.value() * g.cell_volume();
    }
    const std::size_t rows = static_cast<std::size_t>(std::max(0, y1 - y0));
    std::vector<double> row_sums(rows, 0.0);
    parallel_for(rows, [&](std::size_t k) {
        const int iy = y0 + static_cast<int>(k);
        CompensatedSum s;
        const std::size_t base = static_cast<std::size_t>(iy) * res;
        for (int ix = x0; ix < x1; ++ix) {
            const Point p = g.cell_center(base + ix);
            if (in_region(p)) s.add(f.values[base + ix]);
        }
        row_sums[k] = s.value();
    });
    return block_sum(row_sums) * g.cell_volume();
}

} // namespace

double integrate(const SampledFunction& f, const Ball& region) {
    const Grid& g = f.grid;
    auto [x0, x1] = g.axis_range(0, region.center[0], region.radius);
    int y0 = 0, y1 = 1;
    if (g.dim() == 2) {
        auto [a, b] = g.axis_range(1, region.center[1], region.radius);
        y0 = a;
        y1 = b;
    }
    return restricted_sum(f, x0, x1, y0, y1,
                          [&](const Point& p) { return region.contains(p); });
}

double integrate(const SampledFunction& f, const Box& region) {
    return restricted_sum(f, 0, f.grid.resolution(), 0, f.grid.dim() == 2 ? f.grid.resolution() : 1,
                          [&](const Point& p) { return region.contains(p); });
}

double integrate(const SampledFunction& f) {
    const double s = parallel_sum(f.values.size(), [&](std::size_t i) { return f.values[i]; });
    return s * f.grid.cell_volume();
}

Ball BallFamily::ball(std::size_t k) const {
    const std::size_t nr = radii.size();
    return Ball{centers[k / nr], radii[k % nr], dim};
}

BallFamily ball_family(const Grid& grid, double r_min, double r_max, double growth,
                       int center_stride, bool include_box_center) {
    if (!(r_min > 0.0) || !(r_min < r_max)) throw std::invalid_argument("ball_family: need 0 < r_min < r_max");
    if (!(growth > 1.0)) throw std::invalid_argument("ball_family: growth must be > 1");
    if (center_stride < 1) throw std::invalid_argument("ball_family: center_stride must be >= 1");

    BallFamily fam;
    fam.dim = grid.dim();
    for (double r = r_min; r <= r_max * (1.0 + 1e-12); r *= growth) fam.radii.push_back(r);
    if (fam.radii.empty()) throw std::invalid_argument("ball_family: empty radius ladder");

    const int res = grid.resolution();
    std::vector<int> axis_idx;
    for (int k = center_stride / 2; k < res; k += center_stride) axis_idx.push_back(k);
    if (axis_idx.empty()) axis_idx.push_back(res / 2);

    if (grid.dim() == 1) {
        for (int k : axis_idx) fam.centers.push_back(grid.cell_center(static_cast<std::size_t>(k)));
    } else {
        for (int ky : axis_idx) {
            for (int kx : axis_idx) {
                fam.centers.push_back(grid.cell_center(static_cast<std::size_t>(ky) * res + kx));
            }
        }
    }
    if (include_box_center) {
        Point mid{};
        for (int a = 0; a < grid.dim(); ++a) mid[a] = 0.5 * (grid.box().lo[a] + grid.box().hi[a]);
        fam.centers.push_back(mid);
    }
    return fam;
}

} // namespace morreylab
