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

// Shared fixtures and reference oracles for the unit and acceptance tests.
// The oracles deliberately avoid the library's own arithmetic: they work in
// long double, use natural logs, and recompute CDFs from scratch.

#ifndef DADT_TESTS_SUPPORT_TESTING_HPP_
#define DADT_TESTS_SUPPORT_TESTING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dadt/dadt.hpp"

namespace dadt::testing {

// The code of the dadt::Error thrown by `f`, or nullopt if it returns.
template <typename F>
std::optional<ErrorCode> ErrorOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Binary attributes named as given, binary class Y {"0","1"}.
inline Schema BinarySchema(const std::vector<std::string>& names, std::optional<std::string> protected_attr = {}) {
  std::vector<Attribute> attrs;
  for (const auto& n : names) attrs.push_back(Attribute::Discrete(n, {"0", "1"}));
  return Schema(std::move(attrs), Attribute::Discrete("Y", {"0", "1"}), std::move(protected_attr));
}

// Rows are {x..., y}.
inline Dataset Table(const Schema& schema, const std::vector<std::vector<double>>& rows) {
  Dataset d(schema, true);
  for (const auto& r : rows) {
    std::vector<double> x(r.begin(), r.end() - 1);
    d.AddRow(x, static_cast<int>(r.back()));
  }
  return d;
}

// `copies` repetitions of each row.
inline Dataset Repeat(const Schema& schema, const std::vector<std::vector<double>>& rows, int copies) {
  std::vector<std::vector<double>> all;
  for (const auto& r : rows) {
    for (int c = 0; c < copies; ++c) all.push_back(r);
  }
  return Table(schema, all);
}

inline Dataset ParseCsv(const std::string& text, const Schema& schema) {
  std::istringstream in(text);
  return LoadDataset(in, schema);
}

// A small mixed-type dataset whose label depends on a couple of attributes
// plus noise, so that trees have something to find.
inline Dataset RandomDataset(std::mt19937_64& rng, std::size_t max_rows = 500, std::size_t max_attrs = 6) {
  std::uniform_int_distribution<std::size_t> n_attrs_d(1, max_attrs);
  std::uniform_int_distribution<std::size_t> n_rows_d(20, max_rows);
  std::uniform_int_distribution<int> classes_d(2, 3);
  std::bernoulli_distribution continuous_d(0.35);
  const std::size_t m = n_attrs_d(rng);
  const std::size_t n = n_rows_d(rng);
  const int k = classes_d(rng);

  std::vector<Attribute> attrs;
  for (std::size_t a = 0; a < m; ++a) {
    const std::string name = "A" + std::to_string(a);
    if (continuous_d(rng)) {
      attrs.push_back(Attribute::Continuous(name));
    } else {
      std::uniform_int_distribution<int> size_d(2, 4);
      std::vector<std::string> domain;
      for (int v = 0, s = size_d(rng); v < s; ++v) domain.push_back("v" + std::to_string(v));
      attrs.push_back(Attribute::Discrete(name, domain));
    }
  }
  std::vector<std::string> classes;
  for (int c = 0; c < k; ++c) classes.push_back("c" + std::to_string(c));
  Schema schema(attrs, Attribute::Discrete("Y", classes));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> noise_d(0.0, 0.3);
  const double noise = noise_d(rng);
  std::vector<double> weights(m);
  for (double& w : weights) w = unit(rng) * 2.0 - 1.0;

  Dataset d(schema, true);
  std::vector<double> x(m);
  for (std::size_t r = 0; r < n; ++r) {
    double score = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      if (attrs[a].is_discrete()) {
        std::uniform_int_distribution<int> v(0, static_cast<int>(attrs[a].domain.size()) - 1);
        x[a] = v(rng);
        score += weights[a] * x[a] / static_cast<double>(attrs[a].domain.size() - 1);
      } else {
        // One decimal place so that repeated values and ties occur.
        x[a] = std::round(unit(rng) * 100.0) / 10.0;
        score += weights[a] * x[a] / 10.0;
      }
    }
    int y = std::clamp(static_cast<int>((score + 1.0) / 2.0 * k), 0, k - 1);
    if (unit(rng) < noise) y = std::uniform_int_distribution<int>(0, k - 1)(rng);
    d.AddRow(x, y);
  }
  return d;
}

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("dadt_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream out(path_ / name, std::ios::binary);
    out << text;
  }

 private:
  std::filesystem::path path_;
};

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace oracle {

// Entropy in bits via natural logs in extended precision.
inline double Entropy(const std::vector<double>& probs) {
  long double h = 0.0L;
  for (double p : probs) {
    if (p > 0.0) h -= static_cast<long double>(p) * std::log(static_cast<long double>(p));
  }
  return static_cast<double>(h / std::log(2.0L));
}

// Information gain of a binary split as the mutual information between the
// side indicator and the class, from the joint table.
inline double MutualInformation(const std::vector<double>& left_counts, const std::vector<double>& right_counts) {
  long double n = 0.0L;
  for (double c : left_counts) n += c;
  for (double c : right_counts) n += c;
  long double nl = 0.0L;
  for (double c : left_counts) nl += c;
  const long double nr = n - nl;
  long double mi = 0.0L;
  for (std::size_t y = 0; y < left_counts.size(); ++y) {
    const long double ny = static_cast<long double>(left_counts[y]) + right_counts[y];
    const long double cells[2] = {left_counts[y], right_counts[y]};
    const long double sides[2] = {nl, nr};
    for (int s = 0; s < 2; ++s) {
      if (cells[s] > 0.0L) mi += cells[s] / n * std::log(cells[s] * n / (sides[s] * ny));
    }
  }
  return static_cast<double>(mi / std::log(2.0L));
}

// Integral of |F_p - F_q| by recomputing both CDFs from scratch at every
// point of the merged grid and integrating the step function piecewise.
inline double Wasserstein(const std::vector<double>& sp, const std::vector<double>& pp,
                          const std::vector<double>& sq, const std::vector<double>& pq) {
  std::set<double> grid(sp.begin(), sp.end());
  grid.insert(sq.begin(), sq.end());
  const std::vector<double> points(grid.begin(), grid.end());
  auto cdf = [](const std::vector<double>& s, const std::vector<double>& p, double x) {
    long double f = 0.0L;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] <= x) f += p[i];
    }
    return f;
  };
  long double total = 0.0L;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const long double gap = static_cast<long double>(points[i + 1]) - points[i];
    total += std::abs(cdf(sp, pp, points[i]) - cdf(sq, pq, points[i])) * gap;
  }
  return static_cast<double>(total);
}

// For equal-size samples the optimal coupling pairs order statistics.
inline double WassersteinEqualSamples(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  long double total = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(static_cast<long double>(a[i]) - b[i]);
  return static_cast<double>(total / a.size());
}

}  // namespace oracle

// Random probability vector of length k, optionally with exact zeros.
inline std::vector<double> RandomSimplex(std::mt19937_64& rng, std::size_t k, bool allow_zeros = true) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(k);
  double sum = 0.0;
  for (double& v : p) {
    v = (allow_zeros && unit(rng) < 0.15) ? 0.0 : unit(rng);
    sum += v;
  }
  if (sum == 0.0) {
    p[0] = 1.0;
    return p;
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace dadt::testing

#endif  // DADT_TESTS_SUPPORT_TESTING_HPP_
