// Copyright 2026 The Serenade Simulator Authors
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

#pragma once

#include "serenade/matching.hpp"
#include "serenade/rng.hpp"

namespace serenade {

/// Keeps, per output, the heaviest incident arrival edge. Ties are broken
/// uniformly at random with draws from `rng`.
PartialMatching prune(const ArrivalGraph& a, const WeightMatrix& q, Rng& rng);

/// Pairs the k-th unmatched input (ascending id) with the k-th unmatched
/// output (ascending id).
FullMatching populate_serial(const PartialMatching& pm);

enum class SubMatching : std::uint8_t { Red, Green };

/// Per-cycle red/green choice of the centralized merge; ties go green.
SubMatching merge_choice(Weight red_total, Weight green_total);

/// Linear-traversal MERGE: for each cycle of sigma_g^-1 o sigma_r keep the
/// heavier of the two sub-matchings it subsumes.
FullMatching serena_merge(const FullMatching& s_r, const FullMatching& s_g, const WeightMatrix& q);

/// sigma = s_g^-1 o s_r.
Permutation union_permutation(const FullMatching& s_r, const FullMatching& s_g);

/// The dual-weighted cycle graph of (s_r, s_g) under q: edge i -> sigma(i)
/// carries red weight q[i][s_r(i)] and green weight q[sigma(i)][s_r(i)].
DualWeightedCycleGraph cycle_graph(const FullMatching& s_r, const FullMatching& s_g,
                                   const WeightMatrix& q);

}  // namespace serenade
