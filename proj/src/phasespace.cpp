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

#include "qmeas/phasespace.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qmeas {

namespace {

constexpr double kNormalizationTol = 1e-10;
constexpr double kPositivityTol = 1e-10;
constexpr int kExplicitTableMaxN = 32;

void check_table_invariants(const GridSpec& grid,
                            const std::vector<Eigen::MatrixXcd>& cells,
                            kernels::Exec exec) {
    const int n = grid.n;
    if (static_cast<int>(cells.size()) != n * n) {
        throw PreconditionError("expected one effect per phase-space cell");
    }
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& cell : cells) {
        if (cell.rows() != n || cell.cols() != n) {
            throw PreconditionError("cell effect has wrong dimensions");
        }
        sum += cell;
    }
    double defect = (sum - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > kNormalizationTol) {
        throw InvariantError("cell effects sum deviates from identity by " +
                             std::to_string(defect));
    }

    const int total = n * n;
    int bad = 0;
    auto check_cell = [&](int idx) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
            cells[static_cast<std::size_t>(idx)], Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -kPositivityTol) {
#pragma omp atomic
            ++bad;
        }
    };
    if (exec == kernels::Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int idx = 0; idx < total; ++idx) check_cell(idx);
    } else {
        for (int idx = 0; idx < total; ++idx) check_cell(idx);
    }
    if (bad > 0) {
        throw InvariantError(std::to_string(bad) + " cell effects are not positive");
    }
}

}  // namespace

PhaseRegion PhaseRegion::of_cells(const GridSpec& grid, std::vector<PhaseCell> cells) {
    PhaseRegion r;
    r.grid = grid;
    r.mask.assign(static_cast<std::size_t>(grid.n) * grid.n, 0);
    for (const auto& cell : cells) {
        if (cell.q < 0 || cell.q >= grid.n || cell.p < 0 || cell.p >= grid.n) {
            throw PreconditionError("phase-space cell index out of range");
        }
        r.mask[static_cast<std::size_t>(cell.q) * grid.n + cell.p] = 1;
    }
    r.cells.clear();
    for (int q = 0; q < grid.n; ++q) {
        for (int p = 0; p < grid.n; ++p) {
            if (r.mask[static_cast<std::size_t>(q) * grid.n + p]) {
                r.cells.push_back({q, p});
            }
        }
    }
    return r;
}

PhaseRegion PhaseRegion::full(const GridSpec& grid) {
    std::vector<PhaseCell> cs;
    cs.reserve(static_cast<std::size_t>(grid.n) * grid.n);
    for (int q = 0; q < grid.n; ++q) {
        for (int p = 0; p < grid.n; ++p) cs.push_back({q, p});
    }
    return of_cells(grid, std::move(cs));
}

PhaseRegion PhaseRegion::empty(const GridSpec& grid) { return of_cells(grid, {}); }

PhaseRegion PhaseRegion::q_strip(const GridSpec& grid, const std::vector<int>& q_cells) {
    std::vector<PhaseCell> cs;
    for (int q : q_cells) {
        for (int p = 0; p < grid.n; ++p) cs.push_back({q, p});
    }
    return of_cells(grid, std::move(cs));
}

PhaseRegion PhaseRegion::p_strip(const GridSpec& grid, const std::vector<int>& p_cells) {
    std::vector<PhaseCell> cs;
    for (int p : p_cells) {
        for (int q = 0; q < grid.n; ++q) cs.push_back({q, p});
    }
    return of_cells(grid, std::move(cs));
}

PhaseRegion PhaseRegion::half_q(const GridSpec& grid) {
    std::vector<int> qs;
    for (int q = 0; q < grid.n / 2; ++q) qs.push_back(q);
    return q_strip(grid, qs);
}

PhaseRegion PhaseRegion::translated(int a, int b) const {
    std::vector<PhaseCell> cs;
    cs.reserve(cells.size());
    for (const auto& cell : cells) {
        cs.push_back({wrap_index(cell.q + a, grid.n), wrap_index(cell.p + b, grid.n)});
    }
    return of_cells(grid, std::move(cs));
}

PhaseRegion PhaseRegion::negated() const {
    std::vector<PhaseCell> cs;
    cs.reserve(cells.size());
    for (const auto& cell : cells) {
        cs.push_back({wrap_index(-cell.q, grid.n), wrap_index(-cell.p, grid.n)});
    }
    return of_cells(grid, std::move(cs));
}

JointObservable JointObservable::generated(DensityOperator t) {
    GridSpec grid = t.grid;
    return JointObservable(grid, std::move(t));
}

JointObservable JointObservable::from_table(const GridSpec& grid,
                                            std::vector<Eigen::MatrixXcd> cells,
                                            kernels::Exec exec) {
    if (grid.n > kExplicitTableMaxN) {
        throw PreconditionError("explicit tables hold n^2 dense effects; n <= 32 required");
    }
    check_table_invariants(grid, cells, exec);
    return JointObservable(grid, std::move(cells));
}

bool JointObservable::is_generated() const {
    return std::holds_alternative<DensityOperator>(generator_);
}

const DensityOperator& JointObservable::generator() const {
    if (!is_generated()) {
        throw PreconditionError("observable is not generated by a state");
    }
    return std::get<DensityOperator>(generator_);
}

const std::vector<Eigen::MatrixXcd>& JointObservable::table() const {
    if (is_generated()) {
        throw PreconditionError("observable has no explicit table");
    }
    return std::get<std::vector<Eigen::MatrixXcd>>(generator_);
}

Eigen::MatrixXcd JointObservable::cell_effect(int j, int k) const {
    const int n = grid_.n;
    j = wrap_index(j, n);
    k = wrap_index(k, n);
    if (is_generated()) {
        return kernels::weyl_conjugate(grid_, generator().to_matrix(), j, k) / n;
    }
    return table()[static_cast<std::size_t>(j) * n + k];
}

Effect JointObservable::effect_of_region(const PhaseRegion& region,
                                         kernels::Exec exec) const {
    if (!(region.grid == grid_)) {
        throw PreconditionError("region and observable live on different grids");
    }
    const int n = grid_.n;
    Eigen::MatrixXcd sum;
    if (is_generated()) {
        sum = kernels::region_sum(grid_, generator().to_matrix(), region.cells,
                                  1.0 / n, exec);
    } else {
        sum = Eigen::MatrixXcd::Zero(n, n);
        const auto& cells = table();
        for (const auto& cell : region.cells) {
            sum += cells[static_cast<std::size_t>(cell.q) * n + cell.p];
        }
    }
    sum = 0.5 * (sum + sum.adjoint()).eval();
    return Effect::from_matrix(grid_, std::move(sum));
}

JointObservable covariant_observable(DensityOperator t) {
    return JointObservable::generated(std::move(t));
}

std::pair<LineMeasure, LineMeasure> margin_measures(const DensityOperator& t) {
    const int n = t.grid.n;
    const Eigen::VectorXd pos = t.position_diagonal();
    const Eigen::VectorXd mom = t.momentum_diagonal();
    Eigen::VectorXd rho(n), nu(n);
    for (int c = 0; c < n; ++c) {
        rho[c] = pos[wrap_index(-c, n)] / t.grid.dx;
        nu[c] = mom[wrap_index(-c, n)] / t.grid.dx;
    }
    return {LineMeasure::from_density(t.grid, std::move(rho)),
            LineMeasure::from_density(t.grid, std::move(nu))};
}

JointObservable covariant_average(const JointObservable& m, kernels::Exec exec) {
    const GridSpec grid = m.grid();
    std::vector<Eigen::MatrixXcd> cells;
    if (m.is_generated()) {
        if (grid.n > kExplicitTableMaxN) {
            throw PreconditionError("covariant averaging materializes the table; n <= 32 required");
        }
        const Eigen::MatrixXcd t = m.generator().to_matrix();
        cells.resize(static_cast<std::size_t>(grid.n) * grid.n);
        for (int j = 0; j < grid.n; ++j) {
            for (int k = 0; k < grid.n; ++k) {
                cells[static_cast<std::size_t>(j) * grid.n + k] =
                    kernels::weyl_conjugate(grid, t, j, k) / grid.n;
            }
        }
    } else {
        cells = m.table();
    }
    // from_table re-checks normalization of the input table; the averaged
    // output passes through the same validation.
    check_table_invariants(grid, cells, exec);
    return JointObservable::from_table(
        grid, kernels::covariant_average_table(grid, cells, exec), exec);
}

CompletenessReport is_informationally_complete(const DensityOperator& t,
                                               kernels::Exec exec) {
    const int n = t.grid.n;
    Eigen::MatrixXd gram = kernels::weyl_conjugate_gram(t.grid, t.to_matrix(), exec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = solver.eigenvalues();
    const double leading = ev.maxCoeff();
    const double threshold = 1e-8 * leading;

    CompletenessReport report;
    report.dimension = n * n;
    report.leading = leading;
    double smallest_kept = leading;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev[i] > threshold) {
            ++report.rank;
            smallest_kept = std::min(smallest_kept, ev[i]);
        }
    }
    report.smallest_kept = smallest_kept;
    report.complete = report.rank == report.dimension;
    return report;
}

Eigen::MatrixXd outcome_distribution(const JointObservable& g, const DensityOperator& s,
                                     kernels::Exec exec) {
    if (!(g.grid() == s.grid)) {
        throw PreconditionError("state and observable live on different grids");
    }
    const int n = g.grid().n;
    Eigen::MatrixXd table;
    if (g.is_generated()) {
        table = kernels::outcome_table(g.grid(), s, g.generator(), exec);
    } else {
        table.resize(n, n);
        const Eigen::MatrixXcd sm = s.to_matrix();
        const auto& cells = g.table();
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                table(j, k) =
                    (sm * cells[static_cast<std::size_t>(j) * n + k]).trace().real();
            }
        }
    }

    double min = table.minCoeff();
    if (min < -1e-12) {
        throw InvariantError("outcome probability " + std::to_string(min) +
                             " is negative beyond tolerance");
    }
    table = table.cwiseMax(0.0);
    double sum = table.sum();
    if (std::abs(sum - 1.0) > 1e-10) {
        throw InvariantError("outcome probabilities sum to " + std::to_string(sum));
    }
    return table / sum;
}

std::vector<PhaseCell> sample_outcomes(const JointObservable& g,
                                       const DensityOperator& s, std::size_t count,
                                       std::uint64_t seed, kernels::Exec exec) {
    if (count == 0) {
        throw PreconditionError("sample count must be positive");
    }
    const int n = g.grid().n;
    const Eigen::MatrixXd table = outcome_distribution(g, s, exec);

    // Inverse CDF over the row-major flattening (j first, then k).
    std::vector<double> cdf(static_cast<std::size_t>(n) * n);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            acc += table(j, k);
            cdf[static_cast<std::size_t>(j) * n + k] = acc;
        }
    }
    const double total = cdf.back();

    std::mt19937_64 rng(seed);
    std::vector<PhaseCell> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // 53-bit uniform in [0, 1); avoids distribution objects, whose output
        // is not pinned down by the standard.
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u * total);
        if (it == cdf.end()) --it;
        int idx = static_cast<int>(it - cdf.begin());
        samples.push_back({idx / n, idx % n});
    }
    return samples;
}

}  // namespace qmeas
