/*
 * Copyright 2026 The pacr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "pacr/simplex.hpp"

#include <cstddef>
#include <stdexcept>

namespace pacr {

std::optional<std::vector<Rational>> solve_equality_feasibility(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("ragged matrix");
  if (b.size() != m) throw std::invalid_argument("rhs size mismatch");
  if (m == 0) return std::vector<Rational>(n, Rational(0));

  // Normalise to b >= 0, then start from the all-artificial basis and
  // minimise the artificial mass.
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& v : a[i]) v = -v;
    }
  }

  const std::size_t cols = n + m;  // structural + artificial
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = b[i];
    basis[i] = n + i;
  }
  // Reduced-cost row for minimising the sum of artificials, expressed after
  // pricing out the initial basis: cost_j = -sum_i t[i][j] for structural j.
  std::vector<Rational> cost(cols + 1);
  for (std::size_t j = 0; j <= cols; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += t[i][j];
    cost[j] = -s;
  }
  for (std::size_t i = 0; i < m; ++i) cost[n + i] = 0;

  for (;;) {
    // Bland: smallest-index column with negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    // Ratio test, ties broken by smallest basis index (Bland).
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m)
      throw std::logic_error("unbounded phase-one objective");  // impossible
    // Pivot on (leave, enter).
    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rational f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  // Feasible iff no artificial mass remains.
  Rational residue = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) residue += t[i][cols];
  if (residue != 0) return std::nullopt;

  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][cols];
  return x;
}

}  // namespace pacr
