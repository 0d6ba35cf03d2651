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

// Covariant phase-space observables. Cell (j,k) of the discrete phase space
// stands for the displacement (j*dx, k*dp); its effect under the observable
// generated by a state T is (1/n) W(j,k) T W(j,k)^dagger, which sums to the
// identity exactly. The corresponding physical outcome is the displacement
// wrapped into the centered window, i.e. line-measure cell (j + n/2) mod n.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "qmeas/kernels.hpp"
#include "qmeas/measures.hpp"
#include "qmeas/operators.hpp"

namespace qmeas {

/// Phase-space displacement index j <-> centered outcome cell. Involutive
/// because n is even.
inline int phase_index_to_cell(int j, int n) { return wrap_index(j + n / 2, n); }

struct PhaseRegion {
    GridSpec grid;
    std::vector<std::uint8_t> mask;  // size n*n, row-major (q, p)
    std::vector<PhaseCell> cells;    // row-major order

    static PhaseRegion of_cells(const GridSpec& grid, std::vector<PhaseCell> cells);
    static PhaseRegion full(const GridSpec& grid);
    static PhaseRegion empty(const GridSpec& grid);
    /// All (q, p) with q in the given index list.
    static PhaseRegion q_strip(const GridSpec& grid, const std::vector<int>& q_cells);
    static PhaseRegion p_strip(const GridSpec& grid, const std::vector<int>& p_cells);
    /// Left half of the q axis: q < n/2, all p.
    static PhaseRegion half_q(const GridSpec& grid);

    bool contains(int q, int p) const {
        return mask[static_cast<std::size_t>(q) * grid.n + p] != 0;
    }
    std::size_t size() const { return cells.size(); }
    PhaseRegion translated(int a, int b) const;
    PhaseRegion negated() const;
};

/// Joint observable over the n x n phase space: either generated lazily by a
/// state T or an explicit per-cell effect table (n <= 32).
class JointObservable {
  public:
    static JointObservable generated(DensityOperator t);
    static JointObservable from_table(const GridSpec& grid,
                                      std::vector<Eigen::MatrixXcd> cells,
                                      kernels::Exec exec = kernels::Exec::parallel);

    const GridSpec& grid() const { return grid_; }
    bool is_generated() const;
    const DensityOperator& generator() const;
    const std::vector<Eigen::MatrixXcd>& table() const;

    Eigen::MatrixXcd cell_effect(int j, int k) const;
    Effect effect_of_region(const PhaseRegion& region,
                            kernels::Exec exec = kernels::Exec::parallel) const;

  private:
    JointObservable(GridSpec grid,
                    std::variant<DensityOperator, std::vector<Eigen::MatrixXcd>> gen)
        : grid_(grid), generator_(std::move(gen)) {}
    GridSpec grid_;
    std::variant<DensityOperator, std::vector<Eigen::MatrixXcd>> generator_;
};

/// The covariant observable generated by T.
JointObservable covariant_observable(DensityOperator t);

/// Margins of the observable generated by T: densities proportional to
/// sum_i w_i |phi_i(-q)|^2 and sum_i w_i |phi_i^(-p)|^2 (cyclic reflection),
/// normalized to unit mass.
std::pair<LineMeasure, LineMeasure> margin_measures(const DensityOperator& t);

/// Uniform group average over all n^2 displacements. The input must be
/// normalized; the output is covariant and keeps covariant margins.
JointObservable covariant_average(const JointObservable& m,
                                  kernels::Exec exec = kernels::Exec::parallel);

struct CompletenessReport {
    bool complete = false;
    int rank = 0;
    int dimension = 0;   // n^2
    double leading = 0;  // largest Gram eigenvalue
    double smallest_kept = 0;
};

/// True when the Weyl conjugates of T span the full operator space (Gram rank
/// n^2 with relative eigenvalue threshold 1e-8).
CompletenessReport is_informationally_complete(
    const DensityOperator& t, kernels::Exec exec = kernels::Exec::parallel);

/// Probability table p(j,k) = tr[S G(cell)], entries clamped at -1e-12 and
/// renormalized; sums to one within 1e-10.
Eigen::MatrixXd outcome_distribution(const JointObservable& g, const DensityOperator& s,
                                     kernels::Exec exec = kernels::Exec::parallel);

/// Deterministic i.i.d. sampling via inverse CDF on the row-major flattened
/// table. Identical (seed, inputs) give identical output on any platform.
std::vector<PhaseCell> sample_outcomes(const JointObservable& g,
                                       const DensityOperator& s, std::size_t count,
                                       std::uint64_t seed,
                                       kernels::Exec exec = kernels::Exec::parallel);

}  // namespace qmeas
