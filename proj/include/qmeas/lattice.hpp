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

// Periodic n-point position lattice and its dual momentum lattice.
//
// Conventions used throughout the library:
//   * cells are indexed 0..n-1; cell j sits at x_j = (j - n/2) * dx, so both
//     x = 0 and p = 0 lie on the lattice (n must be even),
//   * dp = 2*pi / (n*dx), which makes the centered DFT below exactly unitary
//     and F^4 = identity,
//   * a StateVector stores psi(x_j) * sqrt(dx), so the Euclidean norm of the
//     amplitude vector equals the L2 norm of the sampled function.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qmeas/errors.hpp"

namespace qmeas {

struct GridSpec {
    int n = 0;        // number of cells, even, >= 4
    double dx = 0.0;  // position spacing
    double dp = 0.0;  // momentum spacing, 2*pi/(n*dx)

    double position(int j) const { return (j - n / 2) * dx; }
    double momentum(int k) const { return (k - n / 2) * dp; }
    double circumference() const { return n * dx; }

    bool operator==(const GridSpec& other) const = default;
};

GridSpec make_grid(int n, double dx);

/// Grid with dx = dp = sqrt(2*pi/n); position and momentum lattices coincide.
GridSpec make_balanced_grid(int n);

/// Reduce an (arbitrary) integer index to 0..n-1.
inline int wrap_index(long long j, int n) {
    long long r = j % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

/// Signed representative of a cell index in [-n/2, n/2).
inline int signed_index(int j, int n) {
    int r = wrap_index(j, n);
    return r >= n / 2 ? r - n : r;
}

struct StateVector {
    GridSpec grid;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

/// Wrap amplitudes as a physical (unit-norm) state; checks |norm - 1| <= 1e-12
/// unless `renormalize` is set, in which case the vector is scaled first.
StateVector make_state(const GridSpec& grid, Eigen::VectorXcd amplitudes,
                       bool renormalize = false);

/// Centered unitary DFT: (F psi)(p_k) = (2*pi)^{-1/2} sum_j psi(x_j) e^{-i p_k x_j} dx.
/// The result lives on the same GridSpec with momentum points read as positions.
StateVector fourier_transform(const StateVector& psi);
StateVector inverse_fourier_transform(const StateVector& psi);

/// Dense matrix of the centered DFT (needed for conjugating operators).
Eigen::MatrixXcd fourier_matrix(const GridSpec& grid);

struct GaussianSpec {
    double a = 0.5;    // quadratic decay, > 0
    double b = 0.0;    // quadratic chirp
    double b_lin = 0.0;  // linear phase (momentum offset)
    double c = 0.0;    // center
};

/// Sampled (2a/pi)^{1/4} e^{i b_lin x} e^{-(a+ib)(x-c)^2}, renormalized to unit
/// Euclidean norm. Rejects states whose continuum position tail outside the
/// grid exceeds `tail_tolerance` (wrap-around would corrupt continuum
/// comparisons). Desk-scale grids may pass a looser bound explicitly.
StateVector gaussian_state(const GridSpec& grid, const GaussianSpec& spec,
                           double tail_tolerance = 1e-12);

}  // namespace qmeas
