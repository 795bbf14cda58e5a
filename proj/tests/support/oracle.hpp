#pragma once

// Reference implementations used only by tests. They work on plain +/-1
// vectors and raw tables and share no code path with the library kernels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Spins = std::vector<int>;

inline Spins decode(std::uint64_t code, int n) {
  Spins x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[i] = (code >> i) & 1U ? 1 : -1;
  return x;
}

inline std::uint64_t encode(const Spins& x) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 1) code += std::uint64_t{1} << i;
  }
  return code;
}

inline int sign(int v) { return v >= 0 ? 1 : -1; }

/// x_i <- sgn(wa x_{i-1} + wb x_i + wc x_{i+1}), ring indexing, 0-based vector.
inline Spins sbnn(const Spins& x, int wa, int wb, int wc) {
  const int n = static_cast<int>(x.size());
  Spins y(x.size());
  for (int i = 0; i < n; ++i) {
    y[i] = sign(wa * x[(i + n - 1) % n] + wb * x[i] + wc * x[(i + 1) % n]);
  }
  return y;
}

/// Rule table written out as the list of eight neighbourhoods in order
/// (-1,-1,-1), (-1,-1,+1), ..., (+1,+1,+1); outputs[k] is F of entry k.
inline Spins eca(const Spins& x, const std::vector<int>& outputs) {
  static const int hoods[8][3] = {{-1, -1, -1}, {-1, -1, 1}, {-1, 1, -1}, {-1, 1, 1},
                                  {1, -1, -1},  {1, -1, 1},  {1, 1, -1},  {1, 1, 1}};
  const int n = static_cast<int>(x.size());
  Spins y(x.size());
  for (int i = 0; i < n; ++i) {
    const int l = x[(i + n - 1) % n];
    const int c = x[i];
    const int r = x[(i + 1) % n];
    for (int k = 0; k < 8; ++k) {
      if (hoods[k][0] == l && hoods[k][1] == c && hoods[k][2] == r) y[i] = outputs[k];
    }
  }
  return y;
}

/// x_i <- y_{sigma(i)}, sigma given 1-based.
inline Spins permute(const Spins& y, const std::vector<int>& sigma) {
  Spins x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[static_cast<std::size_t>(sigma[i] - 1)];
  return x;
}

/// (transient, period, smallest cycle member) by direct iteration of a table.
struct Orbit {
  std::uint64_t transient;
  std::uint64_t period;
  std::uint64_t cycle_min;
};

inline Orbit orbit_of(const std::vector<std::uint64_t>& table, std::uint64_t start) {
  // After |table| steps every orbit is on its cycle.
  std::uint64_t z = start;
  for (std::size_t k = 0; k < table.size(); ++k) z = table[z];
  std::uint64_t period = 1;
  std::uint64_t lo = z;
  for (std::uint64_t w = table[z]; w != z; w = table[w], ++period) lo = std::min(lo, w);

  auto iterate = [&](std::uint64_t s, std::uint64_t k) {
    for (std::uint64_t i = 0; i < k; ++i) s = table[s];
    return s;
  };
  std::uint64_t transient = 0;
  std::uint64_t s = start;
  while (iterate(s, period) != s) {
    s = table[s];
    ++transient;
  }
  return Orbit{transient, period, lo};
}

/// (period, basin) of the maximal-period cycle, ties by basin then smallest member.
inline std::pair<std::uint64_t, std::uint64_t> feature(const std::vector<std::uint64_t>& table) {
  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> by_cycle;  // min -> (period, basin)
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    const Orbit o = orbit_of(table, s);
    auto& entry = by_cycle[o.cycle_min];
    entry.first = o.period;
    ++entry.second;
  }
  std::pair<std::uint64_t, std::uint64_t> best{0, 0};
  for (const auto& [lo, pb] : by_cycle) {
    if (pb.first > best.first || (pb.first == best.first && pb.second > best.second)) best = pb;
  }
  return best;
}

inline std::vector<std::uint64_t> pbnn_table(int n, int wa, int wb, int wc,
                                             const std::vector<int>& sigma) {
  std::vector<std::uint64_t> t(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < t.size(); ++s) {
    t[s] = encode(permute(sbnn(decode(s, n), wa, wb, wc), sigma));
  }
  return t;
}

inline std::vector<int> weights(int cn) {
  return {(cn & 4) ? 1 : -1, (cn & 2) ? 1 : -1, (cn & 1) ? 1 : -1};
}

inline std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace oracle
