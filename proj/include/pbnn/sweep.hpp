#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pbnn/model.hpp"
#include "pbnn/orbit.hpp"
#include "pbnn/permutation.hpp"

namespace pbnn {

/// Largest N accepted for a full permutation sweep (8 x 10! rows).
inline constexpr int kMaxSweepDim = 10;

struct SweepRow {
  ConnectionNumber cn;
  Permutation sigma;
  Fraction alpha;
  Fraction beta;
  std::uint64_t period = 0;
  std::uint64_t basin = 0;
};

using FeatureKey = std::pair<std::uint64_t, std::uint64_t>;  // (period, basin) over 2^N

struct CnSummary {
  ConnectionNumber cn;
  std::uint64_t row_count = 0;
  /// Distinct (alpha, beta) with multiplicity, keyed by numerators.
  std::map<FeatureKey, std::uint64_t> points;
  /// Feature point of the permutation-free network.
  FeaturePoint sbnn;
  /// Every row with the largest alpha and, among those, the largest beta.
  std::vector<SweepRow> best_rows;
};

struct SweepResult {
  int n = 0;
  /// Retained rows, ordered by CN then lexicographic permutation.
  std::vector<SweepRow> rows;
  std::vector<CnSummary> summaries;

  const CnSummary* summary(ConnectionNumber cn) const;
};

struct SweepOptions {
  std::optional<ConnectionNumber> cn;
  unsigned jobs = 1;
  bool keep_rows = true;
  /// Called once per row, in output order, from the calling thread.
  std::function<void(const SweepRow&)> on_row;
};

/// Rows a PBNN sweep at dimension n would produce (n! per CN).
std::uint64_t pbnn_sweep_rows(int n, bool single_cn);

/// Feature point of the PBNN whose first-map table is `f1`.
FeaturePoint pbnn_feature(const FunctionalGraph& f1, const Permutation& sigma);

SweepResult sweep_sbnn(int n);
SweepResult sweep_pbnn(int n, const SweepOptions& options = {});

std::size_t distinct_points(const SweepResult& result, ConnectionNumber cn);

}  // namespace pbnn
