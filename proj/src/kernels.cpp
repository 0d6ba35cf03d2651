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

#include "qmeas/kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace qmeas::kernels {

namespace {

// Modulation phases d[m] = e^{i (b dp) x_m} as exact n-th roots of unity.
Eigen::VectorXcd modulation_phases(const GridSpec& grid, int b) {
    const int n = grid.n;
    Eigen::VectorXcd d(n);
    for (int m = 0; m < n; ++m) {
        long long e = static_cast<long long>(b % n) * (m - n / 2);
        d[m] = std::polar(1.0, 2.0 * std::numbers::pi * wrap_index(e, n) / n);
    }
    return d;
}

}  // namespace

Eigen::MatrixXcd weyl_conjugate(const GridSpec& grid, const Eigen::MatrixXcd& m,
                                int a, int b) {
    // W = tau U(a) V(b); the tau phase cancels under conjugation, so
    // (W M W^+)(r, c) = d[r-a] conj(d[c-a]) M(r-a, c-a).
    const int n = grid.n;
    const Eigen::VectorXcd d = modulation_phases(grid, b);
    Eigen::MatrixXcd out(n, n);
    for (int c = 0; c < n; ++c) {
        const int cs = wrap_index(c - a, n);
        const std::complex<double> dc = std::conj(d[cs]);
        for (int r = 0; r < n; ++r) {
            const int rs = wrap_index(r - a, n);
            out(r, c) = d[rs] * dc * m(rs, cs);
        }
    }
    return out;
}

Eigen::MatrixXcd region_sum(const GridSpec& grid, const Eigen::MatrixXcd& t,
                            const std::vector<PhaseCell>& cells, double scale,
                            Exec exec) {
    const int n = grid.n;
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(cells.size());
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);

    // Keep the per-cell terms when that is affordable so the parallel fill
    // can feed one fixed-order accumulation pass.
    const std::size_t bytes = cells.size() * static_cast<std::size_t>(n) * n * 16;
    if (exec == Exec::parallel && bytes <= (std::size_t{256} << 20)) {
        std::vector<Eigen::MatrixXcd> terms(cells.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            terms[static_cast<std::size_t>(i)] =
                weyl_conjugate(grid, t, cells[static_cast<std::size_t>(i)].q,
                               cells[static_cast<std::size_t>(i)].p);
        }
        for (const auto& term : terms) acc += term;
    } else {
        for (const auto& cell : cells) {
            acc += weyl_conjugate(grid, t, cell.q, cell.p);
        }
    }
    return scale * acc;
}

Eigen::MatrixXd outcome_table(const GridSpec& grid, const DensityOperator& s,
                              const DensityOperator& t, Exec exec) {
    const int n = grid.n;
    Eigen::MatrixXd table(n, n);

    // p(j,k) = (1/n) sum_{i,l} t_i s_l |<psi_l, U(j) V(k) phi_i>|^2; the tau
    // multiplier drops out of the modulus.
    auto fill_row = [&](int j) {
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < t.components.size(); ++i) {
                const Eigen::VectorXcd chi =
                    apply_translation(grid, apply_modulation(grid, t.components[i], k), j);
                for (std::size_t l = 0; l < s.components.size(); ++l) {
                    acc += t.weights[i] * s.weights[l] *
                           std::norm(s.components[l].dot(chi));
                }
            }
            table(j, k) = acc / n;
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < n; ++j) fill_row(j);
    } else {
        for (int j = 0; j < n; ++j) fill_row(j);
    }
    return table;
}

Eigen::MatrixXd weyl_conjugate_gram(const GridSpec& grid, const Eigen::MatrixXcd& t,
                                    Exec exec) {
    const int n = grid.n;
    if (n > 32) {
        throw PreconditionError("gram assembly materializes n^2 dense operators; n <= 32 required");
    }
    const int cells = n * n;
    std::vector<Eigen::MatrixXcd> conj(static_cast<std::size_t>(cells));

    auto fill_cell = [&](int idx) {
        conj[static_cast<std::size_t>(idx)] = weyl_conjugate(grid, t, idx / n, idx % n);
    };
    auto fill_gram_row = [&](int r, Eigen::MatrixXd& g) {
        for (int c = r; c < cells; ++c) {
            // tr(A B) for Hermitian A, B equals the real entrywise pairing.
            double v = conj[static_cast<std::size_t>(r)]
                           .cwiseProduct(conj[static_cast<std::size_t>(c)].conjugate())
                           .sum()
                           .real();
            g(r, c) = v;
            g(c, r) = v;
        }
    };

    Eigen::MatrixXd gram(cells, cells);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int idx = 0; idx < cells; ++idx) fill_cell(idx);
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < cells; ++r) fill_gram_row(r, gram);
    } else {
        for (int idx = 0; idx < cells; ++idx) fill_cell(idx);
        for (int r = 0; r < cells; ++r) fill_gram_row(r, gram);
    }
    return gram;
}

std::vector<Eigen::MatrixXcd> covariant_average_table(
    const GridSpec& grid, const std::vector<Eigen::MatrixXcd>& cells, Exec exec) {
    const int n = grid.n;
    const int total = n * n;
    if (static_cast<int>(cells.size()) != total) {
        throw PreconditionError("table must hold one effect per phase-space cell");
    }
    std::vector<Eigen::MatrixXcd> out(static_cast<std::size_t>(total));

    // W(a,b)^dagger X W(a,b) = W(-a,-b) X W(-a,-b)^dagger.
    auto average_cell = [&](int idx) {
        const int j = idx / n;
        const int k = idx % n;
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const int src = wrap_index(j + a, n) * n + wrap_index(k + b, n);
                acc += weyl_conjugate(grid, cells[static_cast<std::size_t>(src)], -a, -b);
            }
        }
        out[static_cast<std::size_t>(idx)] = acc / total;
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int idx = 0; idx < total; ++idx) average_cell(idx);
    } else {
        for (int idx = 0; idx < total; ++idx) average_cell(idx);
    }
    return out;
}

}  // namespace qmeas::kernels
