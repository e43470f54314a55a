#pragma once

// Box domains, uniform grids over them and fields sampled on those grids.

#include "fraclog/pointwise.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace fraclog {

/// An interval (n = 1) or axis-aligned box (n = 2).
struct DomainSpec {
    int n = 1;
    std::array<double, 2> low{0.0, 0.0};
    std::array<double, 2> high{1.0, 1.0};

    static DomainSpec interval(double lo, double hi);
    static DomainSpec box(double lo0, double hi0, double lo1, double hi1);

    /// Throws DomainError unless low < high on every axis.
    void validate() const;
    double diam() const;
    double volume() const;
    double length(int axis) const { return high[axis] - low[axis]; }
    const char* shape() const { return n == 1 ? "interval" : "box"; }
};

/// Uniform grid of spacing h covering a box; the continuous field attached
/// to nodal values is their P1 (n = 1) or Q1 (n = 2) interpolant.
class Grid {
public:
    /// Spacing fixed by the first axis; every other axis must hold a whole
    /// number of cells. Fewer than 8 cells on an axis is a ConfigError.
    Grid(const DomainSpec& domain, int elements_first_axis);

    const DomainSpec& domain() const { return domain_; }
    int n() const { return domain_.n; }
    double h() const { return h_; }
    int cells(int axis) const { return cells_[axis]; }
    int nodes(int axis) const { return cells_[axis] + 1; }
    int interior(int axis) const { return cells_[axis] - 1; }
    int node_count() const;
    int interior_count() const;

    /// Interior index -> (i0, i1) node indices, i1 = 0 when n = 1.
    std::array<int, 2> interior_node(int k) const;
    int node_index(int i0, int i1) const { return i0 + nodes(0) * i1; }
    Point node_point(int i0, int i1) const;
    bool is_boundary(int i0, int i1) const;

private:
    DomainSpec domain_;
    double h_;
    std::array<int, 2> cells_{1, 1};
};

/// Nodal samples over every grid node (first axis fastest); zero outside Omega.
struct CompactField {
    Grid grid;
    std::vector<double> samples;

    /// Samples must be finite and vanish on the boundary nodes.
    void validate() const;
    std::vector<double> interior_values() const;
    CompactField scaled(double alpha) const;
    CompactField absolute() const;
    bool is_zero() const;

    static CompactField zero(const Grid& grid);
    static CompactField from_interior(const Grid& grid, const std::vector<double>& values);
    /// Samples f at the interior nodes; boundary nodes are set to zero.
    static CompactField sample(const Grid& grid, const std::function<double(const Point&)>& f);
};

/// Seeded generator for property suites. Doubles come from the top 53 bits
/// of mt19937_64 so the streams agree across standard libraries.
class FieldRng {
public:
    explicit FieldRng(std::uint64_t seed) : engine_(seed) {}
    static constexpr const char* algorithm() { return "mt19937_64/53bit"; }
    double uniform();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

/// Interior samples drawn uniformly from [-1, 1].
CompactField random_field(const Grid& grid, FieldRng& rng);

/// Sum of a few randomly placed and signed bumps, each inside Omega.
CompactField random_bump_field(const Grid& grid, FieldRng& rng);

}  // namespace fraclog
