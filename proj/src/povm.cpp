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

#include "qmeas/povm.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace qmeas {

namespace {

struct MomentumEffectKey {
    int n;
    double dx;
    std::vector<std::pair<int, double>> atoms;
    std::vector<double> density;
    std::vector<int> cells;

    bool operator==(const MomentumEffectKey& other) const = default;
};

struct MomentumEffectKeyHash {
    std::size_t operator()(const MomentumEffectKey& k) const {
        std::size_t h = std::hash<int>{}(k.n);
        auto mix = [&h](std::size_t v) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        };
        mix(std::hash<double>{}(k.dx));
        for (const auto& [c, w] : k.atoms) {
            mix(std::hash<int>{}(c));
            mix(std::hash<double>{}(w));
        }
        for (double d : k.density) mix(std::hash<double>{}(d));
        for (int c : k.cells) mix(std::hash<int>{}(c));
        return h;
    }
};

// Shared cache of dense momentum effects keyed by (nu, Y).
class MomentumEffectCache {
  public:
    std::shared_ptr<const Eigen::MatrixXcd> find(const MomentumEffectKey& key) {
        std::shared_lock lock(mutex_);
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : it->second;
    }

    std::shared_ptr<const Eigen::MatrixXcd> insert(const MomentumEffectKey& key,
                                                   Eigen::MatrixXcd value) {
        std::unique_lock lock(mutex_);
        if (entries_.size() >= kMaxEntries) entries_.clear();
        auto [it, inserted] = entries_.try_emplace(
            key, std::make_shared<const Eigen::MatrixXcd>(std::move(value)));
        return it->second;
    }

  private:
    static constexpr std::size_t kMaxEntries = 64;
    std::shared_mutex mutex_;
    std::unordered_map<MomentumEffectKey, std::shared_ptr<const Eigen::MatrixXcd>,
                       MomentumEffectKeyHash>
        entries_;
};

MomentumEffectCache& momentum_cache() {
    static MomentumEffectCache cache;
    return cache;
}

MomentumEffectKey make_key(const LineMeasure& nu, const GridSet& set) {
    MomentumEffectKey key;
    key.n = nu.grid.n;
    key.dx = nu.grid.dx;
    key.atoms = nu.atoms;
    key.density.assign(nu.density.data(), nu.density.data() + nu.density.size());
    key.cells = set.cells;
    return key;
}

}  // namespace

Effect OperatorMeasure::effect(const GridSet& set) const {
    return kind == MeasureKind::position ? position_effect(generator, set)
                                         : momentum_effect(generator, set);
}

Eigen::VectorXd position_effect_diagonal(const LineMeasure& rho, const GridSet& set) {
    if (!(rho.grid == set.grid)) {
        throw PreconditionError("measure and set live on different grids");
    }
    const int n = rho.grid.n;
    Eigen::VectorXd d(n);
    for (int m = 0; m < n; ++m) {
        // Entry at position x_m is rho(X - x_m); the point x_m corresponds to
        // the index shift m - n/2.
        d[m] = translated_mass(rho, set, m - n / 2);
    }
    return d;
}

Effect position_effect(const LineMeasure& rho, const GridSet& set) {
    return Effect::from_diagonal(rho.grid, position_effect_diagonal(rho, set));
}

Effect momentum_effect(const LineMeasure& nu, const GridSet& set) {
    if (!(nu.grid == set.grid)) {
        throw PreconditionError("measure and set live on different grids");
    }
    MomentumEffectKey key = make_key(nu, set);
    auto cached = momentum_cache().find(key);
    if (!cached) {
        Eigen::VectorXd d = position_effect_diagonal(nu, set);
        Eigen::MatrixXcd f = fourier_matrix(nu.grid);
        Eigen::MatrixXcd dense =
            f.adjoint() * d.cast<std::complex<double>>().asDiagonal() * f;
        // Symmetrize away the conjugation round-off before validation.
        dense = 0.5 * (dense + dense.adjoint()).eval();
        cached = momentum_cache().insert(key, std::move(dense));
    }
    return Effect::from_matrix(nu.grid, *cached);
}

double commutator_norm(const Effect& a, const Effect& b) {
    if (!(a.grid() == b.grid())) {
        throw PreconditionError("effects live on different grids");
    }
    Eigen::MatrixXcd am = a.dense();
    Eigen::MatrixXcd bm = b.dense();
    Eigen::MatrixXcd comm =
        std::complex<double>(0.0, 1.0) * (am * bm - bm * am);
    comm = 0.5 * (comm + comm.adjoint()).eval();
    return operator_norm(a.grid(), comm);
}

double distinguish_measures(const LineMeasure& rho1, const LineMeasure& rho2) {
    if (!(rho1.grid == rho2.grid)) {
        throw PreconditionError("measures live on different grids");
    }
    const int n = rho1.grid.n;
    double best = 0.0;
    for (int first = 0; first < n; ++first) {
        GridSet half = GridSet::half_line(rho1.grid, first);
        Eigen::VectorXd d1 = position_effect_diagonal(rho1, half);
        Eigen::VectorXd d2 = position_effect_diagonal(rho2, half);
        best = std::max(best, (d1 - d2).cwiseAbs().maxCoeff());
    }
    return best;
}

}  // namespace qmeas
