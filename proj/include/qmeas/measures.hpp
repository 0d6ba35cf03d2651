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

// Probability measures on the lattice circle: finitely many atoms plus a
// density table. Moments are taken with the linear (non-periodic) cell
// coordinates, so they only mean something when the mass is well away from
// the wrap-around boundary; `Moments::tail_safe` reports that.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "qmeas/lattice.hpp"

namespace qmeas {

/// A subset of the n lattice cells.
struct GridSet {
    GridSpec grid;
    std::vector<std::uint8_t> mask;  // size n
    std::vector<int> cells;          // sorted member indices

    static GridSet of_cells(const GridSpec& grid, std::vector<int> cells);
    static GridSet full(const GridSpec& grid);
    static GridSet empty(const GridSpec& grid);
    /// Cells first..n-1 (rasterized half-line [x_first, infinity)).
    static GridSet half_line(const GridSpec& grid, int first);
    /// Cells whose coordinate lies in [lo, hi].
    static GridSet interval(const GridSpec& grid, double lo, double hi);

    bool contains(int c) const { return mask[static_cast<std::size_t>(c)] != 0; }
    std::size_t size() const { return cells.size(); }
    GridSet translated(int shift) const;
    GridSet complement() const;
    GridSet union_with(const GridSet& other) const;
    bool disjoint_from(const GridSet& other) const;
};

struct LineMeasure {
    GridSpec grid;
    std::vector<std::pair<int, double>> atoms;  // (cell, weight > 0)
    Eigen::VectorXd density;                    // mass per unit length, size n

    /// Unit atom at the cell nearest to x (ties resolved toward lower index).
    static LineMeasure dirac(const GridSpec& grid, double x);
    static LineMeasure from_atoms(const GridSpec& grid,
                                  std::vector<std::pair<int, double>> atoms,
                                  bool normalize = true);
    static LineMeasure from_density(const GridSpec& grid, Eigen::VectorXd density,
                                    bool normalize = true);
    /// Density proportional to exp(-2a x^2); variance 1/(4a).
    static LineMeasure gaussian_density(const GridSpec& grid, double a);

    double cell_mass(int c) const;
    double total_mass() const;
    LineMeasure translated(int shift) const;
    LineMeasure normalized() const;
};

/// mu(X - shift) with cyclic set translation. The summation order is fixed
/// (atoms in list order, then density cells ascending) so that equal shifted
/// sets produce bit-identical values.
double translated_mass(const LineMeasure& mu, const GridSet& set, int shift);

/// Cyclic convolution. Atom x atom terms stay atoms, everything else joins
/// the density part.
LineMeasure convolve(const LineMeasure& mu1, const LineMeasure& mu2);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double boundary_mass = 0.0;  // mass on the two edge cells
    bool tail_safe = false;      // boundary_mass <= 1e-9
};

Moments moments(const LineMeasure& mu);
double mean(const LineMeasure& mu);
double variance(const LineMeasure& mu);

}  // namespace qmeas
