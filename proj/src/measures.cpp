// Copyright 2026 The qmeas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmeas/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qmeas {

namespace {

void check_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) {
        throw PreconditionError("grid mismatch between measure/set operands");
    }
}

}  // namespace

GridSet GridSet::of_cells(const GridSpec& grid, std::vector<int> cells) {
    GridSet s;
    s.grid = grid;
    s.mask.assign(static_cast<std::size_t>(grid.n), 0);
    for (int c : cells) {
        if (c < 0 || c >= grid.n) {
            throw PreconditionError("cell index out of range: " + std::to_string(c));
        }
        s.mask[static_cast<std::size_t>(c)] = 1;
    }
    s.cells.clear();
    for (int c = 0; c < grid.n; ++c) {
        if (s.mask[static_cast<std::size_t>(c)]) s.cells.push_back(c);
    }
    return s;
}

GridSet GridSet::full(const GridSpec& grid) {
    std::vector<int> all(static_cast<std::size_t>(grid.n));
    for (int c = 0; c < grid.n; ++c) all[static_cast<std::size_t>(c)] = c;
    return of_cells(grid, std::move(all));
}

GridSet GridSet::empty(const GridSpec& grid) { return of_cells(grid, {}); }

GridSet GridSet::half_line(const GridSpec& grid, int first) {
    if (first < 0 || first >= grid.n) {
        throw PreconditionError("half-line start out of range");
    }
    std::vector<int> cs;
    for (int c = first; c < grid.n; ++c) cs.push_back(c);
    return of_cells(grid, std::move(cs));
}

GridSet GridSet::interval(const GridSpec& grid, double lo, double hi) {
    std::vector<int> cs;
    for (int c = 0; c < grid.n; ++c) {
        double x = grid.position(c);
        if (x >= lo && x <= hi) cs.push_back(c);
    }
    return of_cells(grid, std::move(cs));
}

GridSet GridSet::translated(int shift) const {
    std::vector<int> cs;
    cs.reserve(cells.size());
    for (int c : cells) cs.push_back(wrap_index(c + shift, grid.n));
    return of_cells(grid, std::move(cs));
}

GridSet GridSet::complement() const {
    std::vector<int> cs;
    for (int c = 0; c < grid.n; ++c) {
        if (!contains(c)) cs.push_back(c);
    }
    return of_cells(grid, std::move(cs));
}

GridSet GridSet::union_with(const GridSet& other) const {
    check_same_grid(grid, other.grid);
    std::vector<int> cs = cells;
    cs.insert(cs.end(), other.cells.begin(), other.cells.end());
    return of_cells(grid, std::move(cs));
}

bool GridSet::disjoint_from(const GridSet& other) const {
    check_same_grid(grid, other.grid);
    for (int c : cells) {
        if (other.contains(c)) return false;
    }
    return true;
}

LineMeasure LineMeasure::dirac(const GridSpec& grid, double x) {
    // Nearest cell; exact half-way points go to the lower index.
    double t = x / grid.dx + grid.n / 2.0;
    int c = static_cast<int>(std::ceil(t - 0.5));
    if (c < 0 || c >= grid.n) {
        throw PreconditionError("dirac point outside grid range");
    }
    return from_atoms(grid, {{c, 1.0}}, /*normalize=*/false);
}

LineMeasure LineMeasure::from_atoms(const GridSpec& grid,
                                    std::vector<std::pair<int, double>> atoms,
                                    bool normalize) {
    LineMeasure mu;
    mu.grid = grid;
    mu.density = Eigen::VectorXd::Zero(grid.n);
    for (auto& [c, w] : atoms) {
        if (c < 0 || c >= grid.n) {
            throw PreconditionError("atom cell out of range");
        }
        if (!(w > 0.0)) {
            throw PreconditionError("atom weights must be positive");
        }
    }
    mu.atoms = std::move(atoms);
    return normalize ? mu.normalized() : mu;
}

LineMeasure LineMeasure::from_density(const GridSpec& grid, Eigen::VectorXd density,
                                      bool normalize) {
    if (density.size() != grid.n) {
        throw PreconditionError("density table length does not match grid");
    }
    if ((density.array() < 0.0).any()) {
        throw PreconditionError("density entries must be nonnegative");
    }
    LineMeasure mu;
    mu.grid = grid;
    mu.density = std::move(density);
    return normalize ? mu.normalized() : mu;
}

LineMeasure LineMeasure::gaussian_density(const GridSpec& grid, double a) {
    if (!(a > 0.0)) {
        throw PreconditionError("gaussian_density needs a > 0");
    }
    Eigen::VectorXd d(grid.n);
    const double amp = std::sqrt(2.0 * a / std::numbers::pi);
    for (int c = 0; c < grid.n; ++c) {
        double x = grid.position(c);
        d[c] = amp * std::exp(-2.0 * a * x * x);
    }
    return from_density(grid, std::move(d), /*normalize=*/true);
}

double LineMeasure::cell_mass(int c) const {
    double m = 0.0;
    for (const auto& [cell, w] : atoms) {
        if (cell == c) m += w;
    }
    return m + density[c] * grid.dx;
}

double LineMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& [cell, w] : atoms) m += w;
    for (int c = 0; c < grid.n; ++c) m += density[c] * grid.dx;
    return m;
}

LineMeasure LineMeasure::translated(int shift) const {
    LineMeasure out;
    out.grid = grid;
    out.atoms.reserve(atoms.size());
    for (const auto& [c, w] : atoms) {
        out.atoms.emplace_back(wrap_index(c + shift, grid.n), w);
    }
    out.density = Eigen::VectorXd(grid.n);
    for (int c = 0; c < grid.n; ++c) {
        out.density[c] = density[wrap_index(c - shift, grid.n)];
    }
    return out;
}

LineMeasure LineMeasure::normalized() const {
    double m = total_mass();
    if (!(m > 0.0)) {
        throw PreconditionError("cannot normalize a measure with zero mass");
    }
    LineMeasure out;
    out.grid = grid;
    out.atoms.reserve(atoms.size());
    for (const auto& [c, w] : atoms) out.atoms.emplace_back(c, w / m);
    out.density = density / m;
    return out;
}

double translated_mass(const LineMeasure& mu, const GridSet& set, int shift) {
    check_same_grid(mu.grid, set.grid);
    const int n = mu.grid.n;
    // r belongs to X - shift  iff  r + shift belongs to X. Scanning the
    // measure's own storage in a fixed order makes the sum depend only on the
    // translated set, not on how (set, shift) were split.
    double acc = 0.0;
    for (const auto& [c, w] : mu.atoms) {
        if (set.contains(wrap_index(c + shift, n))) acc += w;
    }
    for (int r = 0; r < n; ++r) {
        if (set.contains(wrap_index(r + shift, n))) acc += mu.density[r] * mu.grid.dx;
    }
    return acc;
}

LineMeasure convolve(const LineMeasure& mu1, const LineMeasure& mu2) {
    check_same_grid(mu1.grid, mu2.grid);
    const int n = mu1.grid.n;
    const int half = n / 2;
    LineMeasure out;
    out.grid = mu1.grid;
    out.density = Eigen::VectorXd::Zero(n);

    // Point x_c1 + x_c2 sits at cell c1 + c2 - n/2 (mod n).
    for (const auto& [c1, w1] : mu1.atoms) {
        for (const auto& [c2, w2] : mu2.atoms) {
            out.atoms.emplace_back(wrap_index(c1 + c2 - half, n), w1 * w2);
        }
    }
    for (const auto& [c1, w1] : mu1.atoms) {
        for (int c2 = 0; c2 < n; ++c2) {
            out.density[wrap_index(c1 + c2 - half, n)] += w1 * mu2.density[c2];
        }
    }
    for (const auto& [c2, w2] : mu2.atoms) {
        for (int c1 = 0; c1 < n; ++c1) {
            out.density[wrap_index(c1 + c2 - half, n)] += w2 * mu1.density[c1];
        }
    }
    if (mu1.density.squaredNorm() > 0.0 && mu2.density.squaredNorm() > 0.0) {
        for (int c = 0; c < n; ++c) {
            double acc = 0.0;
            for (int m = 0; m < n; ++m) {
                acc += mu1.density[m] * mu2.density[wrap_index(c - m + half, n)];
            }
            out.density[c] += acc * mu1.grid.dx;
        }
    }
    return out;
}

Moments moments(const LineMeasure& mu) {
    const int n = mu.grid.n;
    double mass = 0.0, m1 = 0.0;
    for (const auto& [c, w] : mu.atoms) {
        mass += w;
        m1 += w * mu.grid.position(c);
    }
    for (int c = 0; c < n; ++c) {
        double m = mu.density[c] * mu.grid.dx;
        mass += m;
        m1 += m * mu.grid.position(c);
    }
    Moments out;
    out.mean = m1 / mass;
    double m2 = 0.0;
    for (const auto& [c, w] : mu.atoms) {
        double d = mu.grid.position(c) - out.mean;
        m2 += w * d * d;
    }
    for (int c = 0; c < n; ++c) {
        double d = mu.grid.position(c) - out.mean;
        m2 += mu.density[c] * mu.grid.dx * d * d;
    }
    out.variance = m2 / mass;
    out.boundary_mass = mu.cell_mass(0) + mu.cell_mass(n - 1);
    out.tail_safe = out.boundary_mass <= 1e-9;
    return out;
}

double mean(const LineMeasure& mu) { return moments(mu).mean; }

double variance(const LineMeasure& mu) { return moments(mu).variance; }

}  // namespace qmeas
