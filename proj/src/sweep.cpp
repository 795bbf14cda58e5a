#include "pbnn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

#include "pbnn/errors.hpp"

namespace pbnn {

namespace {

constexpr std::size_t kBlockSize = 8192;

FunctionalGraph first_map(ConnectionNumber cn, int n) {
  const RuleNumber rn = cn_to_rule_number(cn);
  return build_graph([rn](const BinaryState& s) { return eca_step(s, rn); }, n);
}

SweepRow make_row(ConnectionNumber cn, const Permutation& sigma, const FeaturePoint& fp) {
  return SweepRow{cn, sigma, fp.alpha, fp.beta, fp.period, fp.basin};
}

void absorb(CnSummary& summary, const SweepRow& row) {
  ++summary.row_count;
  ++summary.points[{row.period, row.basin}];
  if (summary.best_rows.empty()) {
    summary.best_rows.push_back(row);
    return;
  }
  const SweepRow& best = summary.best_rows.front();
  if (row.period > best.period || (row.period == best.period && row.basin > best.basin)) {
    summary.best_rows.clear();
    summary.best_rows.push_back(row);
  } else if (row.period == best.period && row.basin == best.basin) {
    summary.best_rows.push_back(row);
  }
}

void emit(SweepResult& result, CnSummary& summary, const SweepOptions& options, SweepRow row) {
  absorb(summary, row);
  if (options.on_row) options.on_row(row);
  if (options.keep_rows) result.rows.push_back(std::move(row));
}

void require_sweep_dim(int n, std::uint64_t rows) {
  if (n < kMinDim || n > kMaxSweepDim) {
    throw SweepSizeError("sweep at n=" + std::to_string(n) + " is infeasible: it needs " +
                             std::to_string(rows) + " rows (supported n is " +
                             std::to_string(kMinDim) + ".." + std::to_string(kMaxSweepDim) + ")",
                         rows);
  }
}

}  // namespace

const CnSummary* SweepResult::summary(ConnectionNumber cn) const {
  for (const auto& s : summaries) {
    if (s.cn == cn) return &s;
  }
  return nullptr;
}

std::uint64_t pbnn_sweep_rows(int n, bool single_cn) {
  const std::uint64_t per_cn = n <= 20 ? factorial(std::max(n, 0)) : ~std::uint64_t{0};
  if (single_cn) return per_cn;
  return per_cn > ~std::uint64_t{0} / kConnectionCount ? ~std::uint64_t{0}
                                                        : per_cn * kConnectionCount;
}

FeaturePoint pbnn_feature(const FunctionalGraph& f1, const Permutation& sigma) {
  const int n = f1.dim();
  if (sigma.size() != n) throw DimensionError("permutation size does not match graph dimension");
  std::vector<std::uint32_t> table(f1.size());
  for (std::uint64_t code = 0; code < f1.size(); ++code) {
    const std::uint32_t hidden = f1.next(static_cast<std::uint32_t>(code));
    std::uint32_t out = 0;
    for (int i = 1; i <= n; ++i) out |= ((hidden >> (sigma(i) - 1)) & 1U) << (i - 1);
    table[code] = out;
  }
  return feature_point(analyze(FunctionalGraph(n, std::move(table))));
}

SweepResult sweep_sbnn(int n) {
  require_exhaustive_dim(n);
  SweepResult result;
  result.n = n;
  const Permutation id = Permutation::identity(n);
  for (int c = 0; c < kConnectionCount; ++c) {
    const ConnectionNumber cn(c);
    const FeaturePoint fp = feature_point(analyze(first_map(cn, n)));
    CnSummary summary;
    summary.cn = cn;
    summary.sbnn = fp;
    SweepRow row = make_row(cn, id, fp);
    absorb(summary, row);
    result.rows.push_back(std::move(row));
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

SweepResult sweep_pbnn(int n, const SweepOptions& options) {
  require_sweep_dim(n, pbnn_sweep_rows(n, options.cn.has_value()));
  const unsigned jobs = std::max(1U, options.jobs);

  SweepResult result;
  result.n = n;
  if (options.keep_rows) result.rows.reserve(pbnn_sweep_rows(n, options.cn.has_value()));

  std::vector<ConnectionNumber> cns;
  if (options.cn) {
    cns.push_back(*options.cn);
  } else {
    for (int c = 0; c < kConnectionCount; ++c) cns.emplace_back(c);
  }

  std::vector<Permutation> block;
  std::vector<FeaturePoint> features;
  block.reserve(kBlockSize);

  for (ConnectionNumber cn : cns) {
    const FunctionalGraph f1 = first_map(cn, n);
    CnSummary summary;
    summary.cn = cn;
    summary.sbnn = feature_point(analyze(f1));

    Permutation sigma = Permutation::identity(n);
    bool more = true;
    while (more) {
      block.clear();
      while (more && block.size() < kBlockSize) {
        block.push_back(sigma);
        more = sigma.advance();
      }
      features.assign(block.size(), FeaturePoint{});

      // Work items are claimed dynamically; results land at their own slot,
      // so the merge below is in enumeration order whatever the scheduling.
      std::atomic<std::size_t> cursor{0};
      auto worker = [&] {
        for (std::size_t i = cursor++; i < block.size(); i = cursor++) {
          features[i] = pbnn_feature(f1, block[i]);
        }
      };
      const unsigned threads = std::min<std::size_t>(jobs, block.size());
      if (threads <= 1) {
        worker();
      } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      }

      for (std::size_t i = 0; i < block.size(); ++i) {
        emit(result, summary, options, make_row(cn, block[i], features[i]));
      }
    }
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

std::size_t distinct_points(const SweepResult& result, ConnectionNumber cn) {
  const CnSummary* s = result.summary(cn);
  return s ? s->points.size() : 0;
}

}  // namespace pbnn
