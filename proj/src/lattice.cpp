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

#include "qmeas/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace qmeas {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// n-th roots of unity, roots[r] = exp(2*pi*i*r/n). Indexing the table with a
// reduced exponent keeps repeated transforms phase-consistent to the last bit.
std::vector<std::complex<double>> unit_roots(int n) {
    std::vector<std::complex<double>> roots(n);
    for (int r = 0; r < n; ++r) {
        double theta = kTwoPi * r / n;
        roots[r] = {std::cos(theta), std::sin(theta)};
    }
    return roots;
}

// (F psi)_k = n^{-1/2} sum_j omega^{sign*(k-n/2)(j-n/2)} psi_j,
// sign = -1 forward, +1 inverse.
Eigen::VectorXcd centered_dft(const Eigen::VectorXcd& in, int n, int sign) {
    const auto roots = unit_roots(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const int m = n / 2;
    Eigen::VectorXcd out(n);
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < n; ++j) {
            long long e = static_cast<long long>(sign) * (k - m) * (j - m);
            acc += roots[wrap_index(e, n)] * in[j];
        }
        out[k] = scale * acc;
    }
    return out;
}

}  // namespace

GridSpec make_grid(int n, double dx) {
    if (n < 4) {
        throw PreconditionError("grid size n must be at least 4, got " + std::to_string(n));
    }
    if (n % 2 != 0) {
        throw PreconditionError("grid size n must be even, got " + std::to_string(n));
    }
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw PreconditionError("grid spacing dx must be positive and finite");
    }
    GridSpec g;
    g.n = n;
    g.dx = dx;
    g.dp = kTwoPi / (n * dx);
    return g;
}

GridSpec make_balanced_grid(int n) {
    if (n < 4 || n % 2 != 0) {
        throw PreconditionError("balanced grid needs even n >= 4");
    }
    return make_grid(n, std::sqrt(kTwoPi / n));
}

StateVector make_state(const GridSpec& grid, Eigen::VectorXcd amplitudes,
                       bool renormalize) {
    if (amplitudes.size() != grid.n) {
        throw PreconditionError("amplitude vector length does not match grid");
    }
    double norm = amplitudes.norm();
    if (renormalize) {
        if (norm == 0.0) {
            throw PreconditionError("cannot normalize the zero vector");
        }
        amplitudes /= norm;
    } else if (std::abs(norm - 1.0) > 1e-12) {
        throw InvariantError("state vector norm deviates from 1 by " +
                             std::to_string(std::abs(norm - 1.0)));
    }
    return StateVector{grid, std::move(amplitudes)};
}

StateVector fourier_transform(const StateVector& psi) {
    return StateVector{psi.grid, centered_dft(psi.amplitudes, psi.grid.n, -1)};
}

StateVector inverse_fourier_transform(const StateVector& psi) {
    return StateVector{psi.grid, centered_dft(psi.amplitudes, psi.grid.n, +1)};
}

Eigen::MatrixXcd fourier_matrix(const GridSpec& grid) {
    const int n = grid.n;
    const int m = n / 2;
    const auto roots = unit_roots(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd f(n, n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            long long e = -static_cast<long long>(k - m) * (j - m);
            f(k, j) = scale * roots[wrap_index(e, n)];
        }
    }
    return f;
}

StateVector gaussian_state(const GridSpec& grid, const GaussianSpec& spec,
                           double tail_tolerance) {
    if (!(spec.a > 0.0)) {
        throw PreconditionError("gaussian width parameter a must be positive");
    }
    // Position tail outside the covered interval, from the continuum density
    // |psi(x)|^2 = sqrt(2a/pi) exp(-2a (x-c)^2).
    const double lo = grid.position(0) - 0.5 * grid.dx;
    const double hi = grid.position(grid.n - 1) + 0.5 * grid.dx;
    const double s = std::sqrt(2.0 * spec.a);
    const double tail =
        0.5 * (std::erfc(s * (hi - spec.c)) + std::erfc(s * (spec.c - lo)));
    if (!(tail < tail_tolerance)) {
        throw PreconditionError("gaussian tail mass " + std::to_string(tail) +
                                " exceeds tolerance; grid too small for this state");
    }

    const double amp = std::pow(2.0 * spec.a / std::numbers::pi, 0.25);
    const std::complex<double> width(spec.a, spec.b);
    const double root_dx = std::sqrt(grid.dx);
    Eigen::VectorXcd v(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.position(j);
        const double u = x - spec.c;
        const std::complex<double> phase(0.0, spec.b_lin * x);
        v[j] = amp * std::exp(phase - width * u * u) * root_dx;
    }
    return make_state(grid, std::move(v), /*renormalize=*/true);
}

}  // namespace qmeas
