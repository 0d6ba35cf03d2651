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

#include "qmeas/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

namespace qmeas {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kEffectTol = 1e-10;

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void check_square(const GridSpec& grid, const Eigen::MatrixXcd& m) {
    if (m.rows() != grid.n || m.cols() != grid.n) {
        throw PreconditionError("operator dimensions do not match grid");
    }
}

}  // namespace

HermitianOperator HermitianOperator::create(const GridSpec& grid,
                                            Eigen::MatrixXcd matrix) {
    check_square(grid, matrix);
    double defect = hermiticity_defect(matrix);
    if (defect > kHermitianTol) {
        throw PreconditionError("matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
    }
    return HermitianOperator(grid, std::move(matrix));
}

Effect Effect::from_diagonal(const GridSpec& grid, Eigen::VectorXd diagonal) {
    if (diagonal.size() != grid.n) {
        throw PreconditionError("effect diagonal length does not match grid");
    }
    if (diagonal.minCoeff() < -kEffectTol || diagonal.maxCoeff() > 1.0 + kEffectTol) {
        throw InvariantError("diagonal effect entries outside [0, 1]");
    }
    Effect e(grid);
    e.diagonal_ = std::move(diagonal);
    return e;
}

Effect Effect::from_matrix(const GridSpec& grid, Eigen::MatrixXcd matrix) {
    check_square(grid, matrix);
    if (hermiticity_defect(matrix) > kHermitianTol) {
        throw PreconditionError("effect matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix,
                                                           Eigen::EigenvaluesOnly);
    double lo = solver.eigenvalues().minCoeff();
    double hi = solver.eigenvalues().maxCoeff();
    if (lo < -kEffectTol || hi > 1.0 + kEffectTol) {
        throw InvariantError("effect spectrum [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "] outside [0, 1]");
    }
    Effect e(grid);
    e.matrix_ = std::move(matrix);
    return e;
}

const Eigen::VectorXd& Effect::diagonal() const {
    if (!diagonal_) {
        throw PreconditionError("effect has no diagonal representation");
    }
    return *diagonal_;
}

Eigen::MatrixXcd Effect::dense() const {
    if (matrix_) return *matrix_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(grid_.n, grid_.n);
    m.diagonal() = diagonal_->cast<std::complex<double>>();
    return m;
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
    return mixture(psi.grid, {1.0}, {psi.amplitudes});
}

DensityOperator DensityOperator::mixture(const GridSpec& grid,
                                         std::vector<double> weights,
                                         std::vector<Eigen::VectorXcd> components) {
    if (weights.size() != components.size() || weights.empty()) {
        throw PreconditionError("weights and components must pair up");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw PreconditionError("negative mixture weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InvariantError("mixture weights sum to " + std::to_string(sum));
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].size() != grid.n) {
            throw PreconditionError("component length does not match grid");
        }
        for (std::size_t l = 0; l <= i; ++l) {
            std::complex<double> ip = components[l].dot(components[i]);
            double target = (l == i) ? 1.0 : 0.0;
            if (std::abs(ip - target) > 1e-10) {
                throw InvariantError("mixture components are not orthonormal");
            }
        }
    }
    DensityOperator t;
    t.grid = grid;
    t.weights = std::move(weights);
    t.components = std::move(components);
    return t;
}

DensityOperator DensityOperator::maximally_mixed(const GridSpec& grid) {
    std::vector<double> w(static_cast<std::size_t>(grid.n), 1.0 / grid.n);
    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(static_cast<std::size_t>(grid.n));
    for (int m = 0; m < grid.n; ++m) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(grid.n);
        e[m] = 1.0;
        basis.push_back(std::move(e));
    }
    return mixture(grid, std::move(w), std::move(basis));
}

DensityOperator DensityOperator::from_matrix(const GridSpec& grid,
                                             const Eigen::MatrixXcd& matrix,
                                             double weight_cutoff) {
    check_square(grid, matrix);
    if (hermiticity_defect(matrix) > 1e-10) {
        throw PreconditionError("density matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
    std::vector<double> weights;
    std::vector<Eigen::VectorXcd> comps;
    for (int i = grid.n - 1; i >= 0; --i) {  // descending eigenvalues
        double w = solver.eigenvalues()[i];
        if (w < -1e-10) {
            throw PreconditionError("density matrix has negative eigenvalue " +
                                    std::to_string(w));
        }
        if (w > weight_cutoff) {
            weights.push_back(w);
            comps.push_back(solver.eigenvectors().col(i));
        }
    }
    if (weights.empty()) {
        throw PreconditionError("density matrix is numerically zero");
    }
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (std::abs(sum - 1.0) > 1e-8) {
        throw PreconditionError("density matrix trace deviates from 1");
    }
    for (double& w : weights) w /= sum;
    return mixture(grid, std::move(weights), std::move(comps));
}

Eigen::MatrixXcd DensityOperator::to_matrix() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(grid.n, grid.n);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        m.noalias() += weights[i] * (components[i] * components[i].adjoint());
    }
    return m;
}

double DensityOperator::purity() const {
    double p = 0.0;
    for (double w : weights) p += w * w;
    return p;
}

Eigen::VectorXd DensityOperator::position_diagonal() const {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(grid.n);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        d += weights[i] * components[i].cwiseAbs2();
    }
    return d;
}

Eigen::VectorXd DensityOperator::momentum_diagonal() const {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(grid.n);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        StateVector psi{grid, components[i]};
        d += weights[i] * fourier_transform(psi).amplitudes.cwiseAbs2();
    }
    return d;
}

Eigen::VectorXcd apply_translation(const GridSpec& grid, const Eigen::VectorXcd& v,
                                   int j) {
    const int n = grid.n;
    Eigen::VectorXcd out(n);
    for (int m = 0; m < n; ++m) out[m] = v[wrap_index(m - j, n)];
    return out;
}

Eigen::VectorXcd apply_modulation(const GridSpec& grid, const Eigen::VectorXcd& v,
                                  int k) {
    // e^{i (k dp) x_m} = e^{2 pi i k (m - n/2) / n}; the integer exponent keeps
    // V exactly n-periodic in k.
    const int n = grid.n;
    Eigen::VectorXcd out(n);
    for (int m = 0; m < n; ++m) {
        long long e = static_cast<long long>(k % n) * (m - n / 2);
        double theta = 2.0 * std::numbers::pi * wrap_index(e, n) / n;
        out[m] = std::polar(1.0, theta) * v[m];
    }
    return out;
}

Eigen::VectorXcd apply_weyl(const GridSpec& grid, const Eigen::VectorXcd& v, int j,
                            int k) {
    return weyl_phase(grid, j, k) *
           apply_translation(grid, apply_modulation(grid, v, k), j);
}

std::complex<double> weyl_phase(const GridSpec& grid, long long j, long long k) {
    // e^{i pi jk / n}; reduce the exponent mod 2n to keep phases consistent.
    long long e = (j % (2LL * grid.n)) * (k % (2LL * grid.n));
    int r = wrap_index(e, 2 * grid.n);
    return std::polar(1.0, std::numbers::pi * r / grid.n);
}

Eigen::MatrixXcd translation_matrix(const GridSpec& grid, int j) {
    const int n = grid.n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    for (int m = 0; m < n; ++m) u(m, wrap_index(m - j, n)) = 1.0;
    return u;
}

Eigen::MatrixXcd modulation_matrix(const GridSpec& grid, int k) {
    const int n = grid.n;
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        long long e = static_cast<long long>(k % n) * (m - n / 2);
        v(m, m) = std::polar(1.0, 2.0 * std::numbers::pi * wrap_index(e, n) / n);
    }
    return v;
}

Eigen::MatrixXcd weyl_matrix(const GridSpec& grid, int j, int k) {
    return weyl_phase(grid, j, k) * (translation_matrix(grid, j) * modulation_matrix(grid, k));
}

double operator_norm(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix(),
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const Effect& a) {
    if (a.is_diagonal()) return a.diagonal().cwiseAbs().maxCoeff();
    return operator_norm(HermitianOperator::create(a.grid(), a.dense()));
}

double operator_norm(const GridSpec& grid, const Eigen::MatrixXcd& matrix) {
    return operator_norm(HermitianOperator::create(grid, matrix));
}

DensityOperator conjugate_density(const DensityOperator& t, int j, int k) {
    std::vector<Eigen::VectorXcd> comps;
    comps.reserve(t.components.size());
    for (const auto& phi : t.components) {
        comps.push_back(apply_weyl(t.grid, phi, j, k));
    }
    return DensityOperator::mixture(t.grid, t.weights, std::move(comps));
}

}  // namespace qmeas
