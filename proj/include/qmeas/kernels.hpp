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

// OpenMP kernels for the phase-space sweeps, each with a serial reference
// path selected by Exec. Parallel variants only distribute independent
// output slots; every reduction runs in a fixed order, so serial and
// parallel results are bit-identical for any thread count.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qmeas/lattice.hpp"
#include "qmeas/operators.hpp"

namespace qmeas {

struct PhaseCell {
    int q = 0;  // displacement index along position, 0..n-1
    int p = 0;  // displacement index along momentum, 0..n-1

    bool operator==(const PhaseCell&) const = default;
};

namespace kernels {

enum class Exec { serial, parallel };

/// W(a,b) M W(a,b)^dagger as an O(n^2) index/phase remap (no matrix product).
Eigen::MatrixXcd weyl_conjugate(const GridSpec& grid, const Eigen::MatrixXcd& m,
                                int a, int b);

/// scale * sum over cells of W(q,p) T W(q,p)^dagger, accumulated in cell-list
/// order.
Eigen::MatrixXcd region_sum(const GridSpec& grid, const Eigen::MatrixXcd& t,
                            const std::vector<PhaseCell>& cells, double scale,
                            Exec exec);

/// Outcome probabilities p(j,k) = tr[S * (1/n) W(j,k) T W(j,k)^dagger]
/// for spectral-form S and T; row index j, column index k.
Eigen::MatrixXd outcome_table(const GridSpec& grid, const DensityOperator& s,
                              const DensityOperator& t, Exec exec);

/// Real Gram matrix of the n^2 conjugates W(j,k) T W(j,k)^dagger under the
/// trace pairing, rows/columns in row-major (j,k) order.
Eigen::MatrixXd weyl_conjugate_gram(const GridSpec& grid, const Eigen::MatrixXcd& t,
                                    Exec exec);

/// Group average: out[z] = (1/n^2) sum_{(a,b)} W(a,b)^dagger cells[z+(a,b)] W(a,b).
/// `cells` is the full n x n table in row-major order.
std::vector<Eigen::MatrixXcd> covariant_average_table(
    const GridSpec& grid, const std::vector<Eigen::MatrixXcd>& cells, Exec exec);

}  // namespace kernels
}  // namespace qmeas
