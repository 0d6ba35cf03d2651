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

// Fuzzy position and momentum observables. A position observable smears the
// sharp position projections with a probability measure rho; it is diagonal
// in the position basis with entries rho(X - x_m). The matching momentum
// observable is its conjugate under the lattice Fourier transform.

#pragma once

#include <Eigen/Dense>

#include "qmeas/measures.hpp"
#include "qmeas/operators.hpp"

namespace qmeas {

enum class MeasureKind { position, momentum };

/// Effect family generated by one probability measure.
struct OperatorMeasure {
    MeasureKind kind = MeasureKind::position;
    LineMeasure generator;

    const GridSpec& grid() const { return generator.grid; }
    Effect effect(const GridSet& set) const;
};

/// Diagonal table of E_rho(X): entry m equals rho(X - x_m).
Eigen::VectorXd position_effect_diagonal(const LineMeasure& rho, const GridSet& set);
Effect position_effect(const LineMeasure& rho, const GridSet& set);

/// F^{-1} (diagonal nu(Y - p_k)) F, materialized densely. Results are cached
/// per (nu, Y); the cache takes concurrent readers with single-writer
/// insertion.
Effect momentum_effect(const LineMeasure& nu, const GridSet& set);

/// Operator norm of i(AB - BA).
double commutator_norm(const Effect& a, const Effect& b);

/// max over half-lines X of ||E_{rho1}(X) - E_{rho2}(X)||; zero exactly when
/// the measures agree on the lattice. Half-line masses determine the CDF, so
/// the family is separating.
double distinguish_measures(const LineMeasure& rho1, const LineMeasure& rho2);

}  // namespace qmeas
