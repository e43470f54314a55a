#include "fraclog/grid.hpp"

#include "fraclog/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fraclog {

DomainSpec DomainSpec::interval(double lo, double hi) {
    DomainSpec d;
    d.n = 1;
    d.low = {lo, 0.0};
    d.high = {hi, 0.0};
    d.validate();
    return d;
}

DomainSpec DomainSpec::box(double lo0, double hi0, double lo1, double hi1) {
    DomainSpec d;
    d.n = 2;
    d.low = {lo0, lo1};
    d.high = {hi0, hi1};
    d.validate();
    return d;
}

void DomainSpec::validate() const {
    if (n != 1 && n != 2) {
        throw DomainError("domain dimension must be 1 or 2");
    }
    for (int i = 0; i < n; ++i) {
        if (!(low[i] < high[i]) || !std::isfinite(low[i]) || !std::isfinite(high[i])) {
            throw DomainError("domain bounds need low < high on every axis");
        }
    }
}

double DomainSpec::diam() const {
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        r += length(i) * length(i);
    }
    return std::sqrt(r);
}

double DomainSpec::volume() const {
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
        v *= length(i);
    }
    return v;
}

Grid::Grid(const DomainSpec& domain, int elements_first_axis) : domain_(domain) {
    domain_.validate();
    if (elements_first_axis < 8) {
        throw ConfigError("resolution too coarse: at least 8 cells per axis are required");
    }
    h_ = domain_.length(0) / elements_first_axis;
    cells_[0] = elements_first_axis;
    if (domain_.n == 2) {
        const double ratio = domain_.length(1) / h_;
        const long cells = std::lround(ratio);
        if (std::abs(ratio - cells) > 1e-9 * ratio) {
            throw ConfigError("box sides are not commensurate with the grid spacing");
        }
        if (cells < 8) {
            throw ConfigError("resolution too coarse: at least 8 cells per axis are required");
        }
        cells_[1] = static_cast<int>(cells);
    }
}

int Grid::node_count() const {
    return n() == 1 ? nodes(0) : nodes(0) * nodes(1);
}

int Grid::interior_count() const {
    return n() == 1 ? interior(0) : interior(0) * interior(1);
}

std::array<int, 2> Grid::interior_node(int k) const {
    if (n() == 1) {
        return {k + 1, 0};
    }
    return {k % interior(0) + 1, k / interior(0) + 1};
}

Point Grid::node_point(int i0, int i1) const {
    return {domain_.low[0] + i0 * h_, n() == 2 ? domain_.low[1] + i1 * h_ : 0.0};
}

bool Grid::is_boundary(int i0, int i1) const {
    if (i0 == 0 || i0 == cells_[0]) {
        return true;
    }
    return n() == 2 && (i1 == 0 || i1 == cells_[1]);
}

void CompactField::validate() const {
    if (static_cast<int>(samples.size()) != grid.node_count()) {
        throw ConfigError("field sample count does not match the grid");
    }
    const int n1 = grid.n() == 2 ? grid.nodes(1) : 1;
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i0 = 0; i0 < grid.nodes(0); ++i0) {
            const double v = samples[grid.node_index(i0, i1)];
            if (!std::isfinite(v)) {
                throw DomainError("field samples must be finite");
            }
            if (grid.is_boundary(i0, i1) && v != 0.0) {
                throw DomainError("field must vanish on the boundary of the domain");
            }
        }
    }
}

std::vector<double> CompactField::interior_values() const {
    std::vector<double> out(grid.interior_count());
    for (int k = 0; k < grid.interior_count(); ++k) {
        const auto idx = grid.interior_node(k);
        out[k] = samples[grid.node_index(idx[0], idx[1])];
    }
    return out;
}

CompactField CompactField::scaled(double alpha) const {
    CompactField out = *this;
    for (double& v : out.samples) {
        v *= alpha;
    }
    return out;
}

CompactField CompactField::absolute() const {
    CompactField out = *this;
    for (double& v : out.samples) {
        v = std::abs(v);
    }
    return out;
}

bool CompactField::is_zero() const {
    for (double v : samples) {
        if (v != 0.0) {
            return false;
        }
    }
    return true;
}

CompactField CompactField::zero(const Grid& grid) {
    return CompactField{grid, std::vector<double>(grid.node_count(), 0.0)};
}

CompactField CompactField::from_interior(const Grid& grid, const std::vector<double>& values) {
    if (static_cast<int>(values.size()) != grid.interior_count()) {
        throw ConfigError("interior value count does not match the grid");
    }
    CompactField f = zero(grid);
    for (int k = 0; k < grid.interior_count(); ++k) {
        const auto idx = grid.interior_node(k);
        f.samples[grid.node_index(idx[0], idx[1])] = values[k];
    }
    return f;
}

CompactField CompactField::sample(const Grid& grid, const std::function<double(const Point&)>& f) {
    std::vector<double> v(grid.interior_count());
    for (int k = 0; k < grid.interior_count(); ++k) {
        const auto idx = grid.interior_node(k);
        v[k] = f(grid.node_point(idx[0], idx[1]));
    }
    return from_interior(grid, v);
}

double FieldRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

CompactField random_field(const Grid& grid, FieldRng& rng) {
    std::vector<double> v(grid.interior_count());
    for (double& x : v) {
        x = rng.uniform(-1.0, 1.0);
    }
    return CompactField::from_interior(grid, v);
}

CompactField random_bump_field(const Grid& grid, FieldRng& rng) {
    const DomainSpec& d = grid.domain();
    const int count = 1 + static_cast<int>(rng.uniform() * 3.0);
    std::vector<AnalyticTestFunction> bumps;
    for (int k = 0; k < count; ++k) {
        AnalyticTestFunction b;
        b.family = Family::bump;
        double max_w = 0.5 * d.length(0);
        for (int i = 1; i < d.n; ++i) {
            max_w = std::min(max_w, 0.5 * d.length(i));
        }
        b.width = max_w * rng.uniform(0.3, 1.0);
        for (int i = 0; i < d.n; ++i) {
            b.center[i] = rng.uniform(d.low[i] + b.width, d.high[i] - b.width);
        }
        b.amplitude = rng.uniform(-1.0, 1.0);
        bumps.push_back(b);
    }
    const int n = d.n;
    return CompactField::sample(grid, [&](const Point& x) {
        double s = 0.0;
        for (const auto& b : bumps) {
            s += b.value(x, n);
        }
        return s;
    });
}

}  // namespace fraclog
