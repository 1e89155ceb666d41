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

#include "serenade/traffic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "serenade/errors.hpp"

namespace serenade {

MatrixKind parse_matrix_kind(std::string_view text) {
  std::string key;
  for (char c : text)
    if (c != '-' && c != '_' && c != ' ')
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "uniform") return MatrixKind::Uniform;
  if (key == "quasidiagonal") return MatrixKind::QuasiDiagonal;
  if (key == "logdiagonal") return MatrixKind::LogDiagonal;
  if (key == "diagonal") return MatrixKind::Diagonal;
  throw ConfigError("unknown traffic matrix '" + std::string(text) + "'");
}

std::string_view to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Uniform: return "uniform";
    case MatrixKind::QuasiDiagonal: return "quasi-diagonal";
    case MatrixKind::LogDiagonal: return "log-diagonal";
    case MatrixKind::Diagonal: return "diagonal";
  }
  return "?";
}

std::vector<double> dest_distribution(MatrixKind kind, VertexId i, std::size_t n) {
  if (n == 0 || i == 0 || i > n) throw PreconditionError("dest_distribution: bad port");
  std::vector<double> p(n, 0.0);
  auto at = [&](std::size_t d) -> double& { return p[(i - 1 + d) % n]; };
  switch (kind) {
    case MatrixKind::Uniform:
      std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(n));
      break;
    case MatrixKind::QuasiDiagonal:
      if (n == 1) {
        p[0] = 1.0;
        break;
      }
      std::fill(p.begin(), p.end(), 1.0 / (2.0 * static_cast<double>(n - 1)));
      at(0) = 0.5;
      break;
    case MatrixKind::LogDiagonal: {
      // 2^{-(d+1)} / (1 - 2^{-N}) at cyclic distance d.
      const double norm = -std::expm1(-static_cast<double>(n) * std::log(2.0));
      for (std::size_t d = 0; d < n; ++d)
        at(d) = std::ldexp(1.0, -static_cast<int>(d + 1)) / norm;
      break;
    }
    case MatrixKind::Diagonal:
      if (n == 1) {
        p[0] = 1.0;
        break;
      }
      at(0) = 2.0 / 3.0;
      at(1) = 1.0 / 3.0;
      break;
  }
  return p;
}

TrafficGenerator::TrafficGenerator(const TrafficSpec& spec, std::size_t n, Rng rng)
    : spec_(spec), n_(n), rng_(std::move(rng)), cdf_(n), burst_(n) {
  if (!(spec.load >= 0.0 && spec.load <= 1.0)) throw ConfigError("load must lie in [0, 1]");
  if (spec.burst) {
    const auto& b = *spec.burst;
    if (!(b.p > 0.0 && b.p <= 1.0 && b.q > 0.0 && b.q <= 1.0))
      throw ConfigError("burst parameters must lie in (0, 1]");
    if (b.p == 1.0 && b.q == 1.0) throw ConfigError("burst parameters p = q = 1 never advance");
  }
  for (VertexId i = 1; i <= n; ++i) {
    auto& c = cdf_[i - 1];
    c = dest_distribution(spec.matrix, i, n);
    for (std::size_t j = 1; j < n; ++j) c[j] += c[j - 1];
    c.back() = 1.0;
  }
}

VertexId TrafficGenerator::sample_dest(VertexId i) {
  if (spec_.matrix == MatrixKind::Uniform) return static_cast<VertexId>(rng_.below(n_) + 1);
  const auto& c = cdf_[i - 1];
  const double u = rng_.uniform01();
  const auto it = std::upper_bound(c.begin(), c.end(), u);
  return static_cast<VertexId>(std::min<std::size_t>(it - c.begin(), n_ - 1) + 1);
}

void TrafficGenerator::advance_burst(VertexId i) {
  auto& s = burst_[i - 1];
  while (s.remaining == 0) {
    s.on = !s.on;
    s.remaining = rng_.geometric(s.on ? spec_.burst->p : spec_.burst->q);
    if (s.on) s.dest = sample_dest(i);
  }
  --s.remaining;
}

ArrivalGraph TrafficGenerator::next() {
  ArrivalGraph a(n_);
  for (VertexId i = 1; i <= n_; ++i) {
    if (spec_.burst) advance_burst(i);
    if (!rng_.bernoulli(spec_.load)) continue;
    a.dest[i - 1] = spec_.burst && burst_[i - 1].on ? burst_[i - 1].dest : sample_dest(i);
  }
  return a;
}

}  // namespace serenade
