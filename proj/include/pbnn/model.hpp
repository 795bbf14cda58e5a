#pragma once

#include <array>
#include <cstdint>

#include "pbnn/fraction.hpp"
#include "pbnn/permutation.hpp"
#include "pbnn/state.hpp"

namespace pbnn {

/// Signum activation: +1 for x >= 0, -1 otherwise.
constexpr int sgn(int x) noexcept { return x >= 0 ? 1 : -1; }

/// Index 0..7 of a local weight triple (w_a, w_b, w_c) in {-1,+1}^3.
/// Bit 2 selects w_a = +1, bit 1 w_b, bit 0 w_c.
class ConnectionNumber {
 public:
  constexpr ConnectionNumber() = default;
  /// Throws std::out_of_range outside 0..7.
  explicit ConnectionNumber(int value);

  constexpr int value() const noexcept { return value_; }
  constexpr int w_a() const noexcept { return (value_ & 4) ? 1 : -1; }
  constexpr int w_b() const noexcept { return (value_ & 2) ? 1 : -1; }
  constexpr int w_c() const noexcept { return (value_ & 1) ? 1 : -1; }

  friend bool operator==(ConnectionNumber, ConnectionNumber) = default;
  friend auto operator<=>(ConnectionNumber, ConnectionNumber) = default;

 private:
  int value_ = 0;
};

/// Wolfram rule number. Bit k is the output (1 for +1) on the neighbourhood
/// whose (left, center, right) bits spell k, left most significant.
class RuleNumber {
 public:
  constexpr RuleNumber() = default;
  explicit RuleNumber(int value);

  constexpr int value() const noexcept { return value_; }
  /// Output bit for neighbourhood k in 0..7.
  constexpr bool output(int k) const noexcept { return (value_ >> k) & 1; }

  friend bool operator==(RuleNumber, RuleNumber) = default;
  friend auto operator<=>(RuleNumber, RuleNumber) = default;

 private:
  int value_ = 0;
};

inline constexpr int kConnectionCount = 8;

RuleNumber cn_to_rule_number(ConnectionNumber cn);
/// Fraction of +1 outputs in the rule table, over 8.
Fraction rule_lambda(RuleNumber rn);

/// w_a x_{i-1} + w_b x_i + w_c x_{i+1} with ring indexing; always in {-3,-1,1,3}.
int weighted_sum(const BinaryState& s, ConnectionNumber cn, int cell);

/// First map: every cell takes the sign of its weighted neighbourhood.
BinaryState sbnn_step(const BinaryState& s, ConnectionNumber cn);
/// Generic elementary cellular automaton step on a ring.
BinaryState eca_step(const BinaryState& s, RuleNumber rn);
/// Second map: output bit i-1 copies input bit sigma(i)-1.
BinaryState permute_state(const BinaryState& y, const Permutation& sigma);

struct PbnnParams {
  ConnectionNumber cn;
  Permutation sigma;

  int dim() const noexcept { return sigma.size(); }
};

/// The composition f = f2 o f1.
BinaryState pbnn_step(const BinaryState& s, const PbnnParams& p);

}  // namespace pbnn
