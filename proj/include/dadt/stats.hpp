/*
 * Copyright 2026 The DADT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Numerical kernel: frequency estimates, Shannon entropy (bits), information
// gain and the one-dimensional Wasserstein distance between discrete
// distributions.

#ifndef DADT_STATS_HPP_
#define DADT_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dadt/data.hpp"
#include "dadt/error.hpp"

namespace dadt {

inline constexpr double kProbabilityTolerance = 1e-9;

// A finite distribution on an ordered axis. Categorical distributions carry
// their labels and sit on positions 0, 1, 2, ... in label order; numeric
// distributions carry strictly increasing support values.
struct Distribution {
  std::vector<double> support;
  std::vector<double> probs;
  std::vector<std::string> labels;

  static Distribution Categorical(std::vector<double> probs, std::vector<std::string> labels = {}) {
    Distribution d;
    d.support.resize(probs.size());
    std::iota(d.support.begin(), d.support.end(), 0.0);
    d.probs = std::move(probs);
    d.labels = std::move(labels);
    if (d.labels.empty()) {
      for (std::size_t i = 0; i < d.probs.size(); ++i) d.labels.push_back(std::to_string(i));
    }
    return d;
  }

  static Distribution Numeric(std::vector<double> support, std::vector<double> probs) {
    Distribution d;
    d.support = std::move(support);
    d.probs = std::move(probs);
    return d;
  }

  // Empirical distribution of a sample; support is the sorted distinct values.
  static Distribution Empirical(std::span<const double> sample) {
    if (sample.empty()) Fail(ErrorCode::kEmptyContext, "empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    Distribution d;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      d.support.push_back(sorted[i]);
      d.probs.push_back(static_cast<double>(j - i) / n);
      i = j;
    }
    return d;
  }

  bool categorical() const { return !labels.empty(); }
  std::size_t size() const { return probs.size(); }

  void Validate() const {
    if (probs.size() != support.size() || probs.empty()) {
      Fail(ErrorCode::kDomainError, "distribution support and probabilities differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) Fail(ErrorCode::kDomainError, "probability outside [0,1]");
      if (i > 0 && !(support[i] > support[i - 1])) {
        Fail(ErrorCode::kDomainError, "support must be strictly increasing");
      }
      sum += probs[i];
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      Fail(ErrorCode::kDomainError, "probabilities sum to " + FormatDouble(sum));
    }
  }

  bool operator==(const Distribution&) const = default;
};

// Fraction of rows satisfying `cond`. Never invents a value for an empty view.
inline double EstimateFreq(const DatasetView& rows, const SplitCondition& cond) {
  if (rows.empty()) Fail(ErrorCode::kEmptyContext, "frequency estimate over zero rows");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) hits += cond.Holds(rows.row(i)) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

// Fraction of rows whose class equals `label`.
inline double EstimateClassFreq(const DatasetView& rows, int label) {
  if (rows.empty()) Fail(ErrorCode::kEmptyContext, "frequency estimate over zero rows");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) hits += rows.label(i) == label ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

inline std::vector<double> ClassCounts(const DatasetView& rows) {
  std::vector<double> counts(rows.schema().num_classes(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) counts[static_cast<std::size_t>(rows.label(i))] += 1.0;
  return counts;
}

// Normalizes counts by their total. Counts are integral so the result is the
// correctly rounded relative frequency.
inline std::vector<double> NormalizeCounts(std::span<const double> counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (!(total > 0.0)) Fail(ErrorCode::kEmptyContext, "normalizing zero mass");
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = counts[i] / total;
  return out;
}

inline Distribution ClassFrequency(const DatasetView& rows) {
  if (rows.empty()) Fail(ErrorCode::kEmptyContext, "class distribution over zero rows");
  const std::vector<double> counts = ClassCounts(rows);
  return Distribution::Categorical(NormalizeCounts(counts), rows.schema().class_attr().domain);
}

// Shannon entropy in bits with 0 log 0 = 0.
inline double Entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

inline double Entropy(const Distribution& d) { return Entropy(d.probs); }

// H(parent) - p_left H(left) - (1 - p_left) H(right). The probabilities are
// inputs so that source-only and knowledge-embedded estimates share this
// one formula.
inline double InformationGain(std::span<const double> parent, double p_left, std::span<const double> left,
                              std::span<const double> right) {
  if (!(p_left >= 0.0 && p_left <= 1.0)) Fail(ErrorCode::kDomainError, "p_left outside [0,1]");
  if (left.size() != parent.size() || right.size() != parent.size()) {
    Fail(ErrorCode::kDomainError, "class supports differ");
  }
  return Entropy(parent) - p_left * Entropy(left) - (1.0 - p_left) * Entropy(right);
}

inline double InformationGain(const Distribution& parent, double p_left, const Distribution& left,
                              const Distribution& right) {
  return InformationGain(parent.probs, p_left, left.probs, right.probs);
}

// Integral of |CDF_p - CDF_q| over the merged support. Categorical
// distributions use unit spacing in label order, so for two classes this
// reduces to |p_1 - q_1|.
inline double Wasserstein(const Distribution& p, const Distribution& q) {
  if (p.categorical() != q.categorical() || (p.categorical() && p.labels != q.labels)) {
    Fail(ErrorCode::kIncomparableSupports, "distributions do not share an ordered axis");
  }
  if (p.support.size() != p.probs.size() || q.support.size() != q.probs.size()) {
    Fail(ErrorCode::kDomainError, "support and probabilities differ in length");
  }
  std::size_t i = 0;
  std::size_t j = 0;
  double cdf_p = 0.0;
  double cdf_q = 0.0;
  double total = 0.0;
  double position = 0.0;
  bool started = false;
  while (i < p.support.size() || j < q.support.size()) {
    double next;
    if (j >= q.support.size() || (i < p.support.size() && p.support[i] <= q.support[j])) {
      next = p.support[i];
    } else {
      next = q.support[j];
    }
    if (started) total += std::abs(cdf_p - cdf_q) * (next - position);
    while (i < p.support.size() && p.support[i] == next) cdf_p += p.probs[i++];
    while (j < q.support.size() && q.support[j] == next) cdf_q += q.probs[j++];
    position = next;
    started = true;
  }
  return total;
}

// Wasserstein distance between two empirical samples.
inline double WassersteinSamples(std::span<const double> a, std::span<const double> b) {
  return Wasserstein(Distribution::Empirical(a), Distribution::Empirical(b));
}

}  // namespace dadt

#endif  // DADT_STATS_HPP_
