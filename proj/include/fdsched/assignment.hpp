// Copyright 2026 The fdsched Authors
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

/**
 * \file fdsched/assignment.hpp
 *
 * \brief Maximum-benefit linear assignment (Hungarian method) plus an
 *  exhaustive oracle and the pair-or-stay-alone reduction used by the
 *  schedulers.
 */

#ifndef FDSCHED_ASSIGNMENT_HPP
#define FDSCHED_ASSIGNMENT_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "model.hpp"

namespace fdsched {

template <typename T>
struct AssignmentResult {
  /// Column chosen for each row; nullopt when the row landed on padding.
  std::vector<std::optional<std::size_t>> row_to_col;
  T total{};
};

namespace detail {

template <typename T>
T selected_total(const Matrix<T>& values, const std::vector<std::optional<std::size_t>>& row_to_col) {
  T total{};
  for (std::size_t r = 0; r < row_to_col.size(); ++r)
    if (row_to_col[r]) total += values(r, *row_to_col[r]);
  return total;
}

/// O(n^3) shortest augmenting path Hungarian method on a square cost
/// matrix (minimization). Returns the column assigned to each row.
template <typename T>
std::vector<std::size_t> hungarian_min_square(const Matrix<T>& cost) {
  const std::size_t n = cost.rows();
  const T inf = std::numeric_limits<T>::max();
  // 1-based potentials; index 0 is the virtual column.
  std::vector<T> u(n + 1, T{}), v(n + 1, T{}), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      T delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const T cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

template <typename T>
void require_finite(const Matrix<T>& values, const char* who) {
  if (values.empty()) throw InvalidArgument(std::string(who) + ": empty matrix");
  if constexpr (std::numeric_limits<T>::has_infinity) {
    for (T v : values.data())
      if (!(v == v) || v == std::numeric_limits<T>::infinity() || v == -std::numeric_limits<T>::infinity())
        throw InvalidArgument(std::string(who) + ": non-finite entry");
  }
}

}  // namespace detail

/// Maximum-total assignment on an R x C benefit matrix. The matrix is padded
/// to a square with zeros; rows that land on padding get no column.
/// Maximization is turned into minimization via cost = max - value.
template <typename T>
AssignmentResult<T> hungarian_max(const Matrix<T>& values) {
  detail::require_finite(values, "hungarian_max");
  const std::size_t rows = values.rows();
  const std::size_t cols = values.cols();
  const std::size_t n = std::max(rows, cols);
  T hi = T{};
  for (T v : values.data()) hi = std::max(hi, v);
  Matrix<T> cost(n, n, hi);  // padding cells have value 0 -> cost hi
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) cost(r, c) = hi - values(r, c);

  const auto assigned = detail::hungarian_min_square(cost);
  AssignmentResult<T> res;
  res.row_to_col.assign(rows, std::nullopt);
  for (std::size_t r = 0; r < rows; ++r)
    if (assigned[r] < cols) res.row_to_col[r] = assigned[r];
  res.total = detail::selected_total(values, res.row_to_col);
  return res;
}

inline constexpr std::size_t kBruteForceMaxSize = 9;

/// Exact optimum by enumerating every permutation of the zero-padded square.
/// Ties go to the lexicographically first permutation.
template <typename T>
AssignmentResult<T> brute_force_assignment(const Matrix<T>& values) {
  detail::require_finite(values, "brute_force_assignment");
  const std::size_t rows = values.rows();
  const std::size_t cols = values.cols();
  const std::size_t n = std::max(rows, cols);
  if (n > kBruteForceMaxSize) throw InvalidArgument("brute_force_assignment: padded size exceeds 9");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best = perm;
  bool have = false;
  T best_total{};
  do {
    T total{};
    for (std::size_t r = 0; r < rows; ++r)
      if (perm[r] < cols) total += values(r, perm[r]);
    if (!have || total > best_total) {
      best_total = total;
      best = perm;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  AssignmentResult<T> res;
  res.row_to_col.assign(rows, std::nullopt);
  for (std::size_t r = 0; r < rows; ++r)
    if (best[r] < cols) res.row_to_col[r] = best[r];
  res.total = detail::selected_total(values, res.row_to_col);
  return res;
}

// Pair-or-stay-alone ---------------------------------------------------------

struct BenefitMatrix {
  Matrix<double> values;        // s_ij
  std::vector<double> solo_ul;  // contribution of UL i alone on a channel
  std::vector<double> solo_dl;
};

struct SoloAssignment {
  Pairing pairing;
  double total = 0.0;
};

/// Chooses pairs and solo users maximizing sum(s_ij) + sum(solo) under a
/// budget of `num_channels` channels (each pair and each solo user takes one).
///
/// Rows are UL users plus d_r "DL alone" slots, columns are DL users plus
/// d_c "UL alone" slots, with d_r = min(F - I, J) and d_c = min(F - J, I).
/// Capping the slots is exactly the channel budget: with k pairs,
/// I + J - k <= F  <=>  J - k <= F - I  <=>  I - k <= F - J.
/// For I = J = F there are no slots and every user must be paired.
inline SoloAssignment assign_with_solo(const BenefitMatrix& b, std::size_t num_channels) {
  const std::size_t ni = b.values.rows();
  const std::size_t nj = b.values.cols();
  if (b.solo_ul.size() != ni || b.solo_dl.size() != nj)
    throw InvalidArgument("assign_with_solo: solo vectors do not match the benefit matrix");
  if (ni > num_channels || nj > num_channels)
    throw InvalidArgument("assign_with_solo: more users in one direction than channels");

  SoloAssignment out{Pairing(ni, nj), 0.0};
  if (ni == 0 && nj == 0) return out;
  if (ni == 0 || nj == 0) {
    for (double s : b.solo_ul) out.total += s;
    for (double s : b.solo_dl) out.total += s;
    return out;
  }

  const std::size_t dl_slots = std::min(num_channels - ni, nj);
  const std::size_t ul_slots = std::min(num_channels - nj, ni);
  const std::size_t n = ni + dl_slots;  // == nj + ul_slots

  Matrix<double> m(n, n, 0.0);
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t j = 0; j < nj; ++j) m(i, j) = b.values(i, j);
    for (std::size_t c = nj; c < nj + ul_slots; ++c) m(i, c) = b.solo_ul[i];
  }
  for (std::size_t r = ni; r < n; ++r)
    for (std::size_t j = 0; j < nj; ++j) m(r, j) = b.solo_dl[j];

  const auto res = hungarian_max(m);
  for (std::size_t i = 0; i < ni; ++i) {
    const std::size_t c = *res.row_to_col[i];
    if (c < nj) {
      out.pairing.pair(i, c);
      out.total += b.values(i, c);
    } else {
      out.total += b.solo_ul[i];
    }
  }
  for (std::size_t j = 0; j < nj; ++j)
    if (!out.pairing.partner_of_dl(j)) out.total += b.solo_dl[j];
  return out;
}

}  // namespace fdsched

#endif  // FDSCHED_ASSIGNMENT_HPP
