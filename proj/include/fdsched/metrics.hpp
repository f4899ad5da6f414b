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

#ifndef FDSCHED_METRICS_HPP
#define FDSCHED_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <charconv>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdsched {

/// Jain's fairness index (sum x)^2 / (n sum x^2). An all-zero vector counts
/// as perfectly fair and yields 1.
inline double jain_index(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("jain_index: empty vector");
  double s = 0.0;
  double s2 = 0.0;
  for (double v : x) {
    s += v;
    s2 += v * v;
  }
  if (s2 == 0.0) return 1.0;
  return s * s / (static_cast<double>(x.size()) * s2);
}

struct CdfSeries {
  std::string metric;
  std::string strategy;
  double mu = 0.0;
  std::string weight_mode;
  std::vector<double> values;         // nondecreasing
  std::vector<double> probabilities;  // k/N, k = 1..N

  std::size_t size() const { return values.size(); }
};

inline CdfSeries empirical_cdf(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical_cdf: no samples");
  std::sort(samples.begin(), samples.end());
  CdfSeries cdf;
  const auto n = static_cast<double>(samples.size());
  cdf.probabilities.reserve(samples.size());
  for (std::size_t k = 1; k <= samples.size(); ++k) cdf.probabilities.push_back(static_cast<double>(k) / n);
  cdf.values = std::move(samples);
  return cdf;
}

/// Nearest-rank percentile, q in [0, 100]. q = 0 gives the smallest sample.
inline double percentile(const CdfSeries& cdf, double q) {
  if (cdf.values.empty()) throw std::invalid_argument("percentile: empty series");
  if (!(q >= 0.0 && q <= 100.0)) throw std::invalid_argument("percentile: q outside [0,100]");
  const auto n = cdf.values.size();
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return cdf.values[rank - 1];
}

inline double median(const CdfSeries& cdf) { return percentile(cdf, 50.0); }

/// Relative difference of the medians, (p50(a) - p50(b)) / p50(b).
inline double median_gap(const CdfSeries& a, const CdfSeries& b) {
  const double mb = median(b);
  if (mb == 0.0) throw std::domain_error("median_gap: reference median is zero");
  return (median(a) - mb) / mb;
}

/// Shortest representation that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// `# metric,strategy,mu,weight_mode` metadata line, a `value,probability`
/// column header, then one row per sample.
inline void write_csv(std::ostream& os, const CdfSeries& cdf) {
  os << "# " << cdf.metric << ',' << cdf.strategy << ',' << format_double(cdf.mu) << ',' << cdf.weight_mode << '\n';
  os << "value,probability\n";
  for (std::size_t k = 0; k < cdf.values.size(); ++k)
    os << format_double(cdf.values[k]) << ',' << format_double(cdf.probabilities[k]) << '\n';
}

}  // namespace fdsched

#endif  // FDSCHED_METRICS_HPP
