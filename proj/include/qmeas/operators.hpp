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

// Hermitian operators, effects, density operators and the discrete Weyl
// system.
//
// Displacement conventions (j, k are arbitrary integers):
//   U(j)   cyclic shift by j cells,            (U psi)(x_m) = psi(x_{m-j}),
//   V(k)   modulation by e^{i (k dp) x_m},
//   W(j,k) = tau^{jk} U(j) V(k) with tau = e^{i pi / n},
// so that tau^{jk} = e^{i q p / 2} for the displacement (q, p) = (j dx, k dp).
// Composition: W(j,k) W(j',k') = tau^{j'k - jk'} W(j+j', k+k'), and
// W(j,k)^dagger = W(-j,-k) exactly.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "qmeas/lattice.hpp"

namespace qmeas {

class HermitianOperator {
  public:
    /// Validates max |M - M^dagger| <= 1e-12.
    static HermitianOperator create(const GridSpec& grid, Eigen::MatrixXcd matrix);

    const GridSpec& grid() const { return grid_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

  private:
    HermitianOperator(const GridSpec& grid, Eigen::MatrixXcd matrix)
        : grid_(grid), matrix_(std::move(matrix)) {}
    GridSpec grid_;
    Eigen::MatrixXcd matrix_;
};

/// Positive operator bounded by the identity. Checked at construction:
/// eigenvalues in [-1e-10, 1 + 1e-10]. Diagonal effects keep an O(n)
/// representation and skip the dense eigensolve.
class Effect {
  public:
    static Effect from_diagonal(const GridSpec& grid, Eigen::VectorXd diagonal);
    static Effect from_matrix(const GridSpec& grid, Eigen::MatrixXcd matrix);

    const GridSpec& grid() const { return grid_; }
    bool is_diagonal() const { return diagonal_.has_value(); }
    const Eigen::VectorXd& diagonal() const;
    Eigen::MatrixXcd dense() const;

  private:
    Effect(const GridSpec& grid) : grid_(grid) {}
    GridSpec grid_;
    std::optional<Eigen::VectorXd> diagonal_;
    std::optional<Eigen::MatrixXcd> matrix_;
};

/// Mixed state in spectral form: weights >= 0 summing to one, pairwise
/// orthonormal component vectors.
struct DensityOperator {
    GridSpec grid;
    std::vector<double> weights;
    std::vector<Eigen::VectorXcd> components;

    static DensityOperator pure(const StateVector& psi);
    static DensityOperator mixture(const GridSpec& grid, std::vector<double> weights,
                                   std::vector<Eigen::VectorXcd> components);
    static DensityOperator maximally_mixed(const GridSpec& grid);
    /// Spectral decomposition of an arbitrary positive unit-trace matrix;
    /// eigenvalues below `weight_cutoff` are dropped and the rest rescaled.
    static DensityOperator from_matrix(const GridSpec& grid,
                                       const Eigen::MatrixXcd& matrix,
                                       double weight_cutoff = 1e-13);

    int rank() const { return static_cast<int>(weights.size()); }
    Eigen::MatrixXcd to_matrix() const;
    double purity() const;
    /// sum_i w_i |phi_i(x_m)|^2 (position-basis diagonal).
    Eigen::VectorXd position_diagonal() const;
    /// Same in the momentum basis (components run through the DFT).
    Eigen::VectorXd momentum_diagonal() const;
};

// Weyl system actions on amplitude vectors.
Eigen::VectorXcd apply_translation(const GridSpec& grid, const Eigen::VectorXcd& v, int j);
Eigen::VectorXcd apply_modulation(const GridSpec& grid, const Eigen::VectorXcd& v, int k);
Eigen::VectorXcd apply_weyl(const GridSpec& grid, const Eigen::VectorXcd& v, int j, int k);

/// tau^{jk} = e^{i pi jk / n}.
std::complex<double> weyl_phase(const GridSpec& grid, long long j, long long k);

// Dense matrices (mostly for tests and momentum-side conjugations).
Eigen::MatrixXcd translation_matrix(const GridSpec& grid, int j);
Eigen::MatrixXcd modulation_matrix(const GridSpec& grid, int k);
Eigen::MatrixXcd weyl_matrix(const GridSpec& grid, int j, int k);

/// Largest absolute eigenvalue.
double operator_norm(const HermitianOperator& a);
double operator_norm(const Effect& a);
/// Convenience overload; validates Hermiticity like HermitianOperator::create.
double operator_norm(const GridSpec& grid, const Eigen::MatrixXcd& matrix);

/// Replace every component phi_i by W(j,k) phi_i; weights unchanged.
DensityOperator conjugate_density(const DensityOperator& t, int j, int k);

}  // namespace qmeas
