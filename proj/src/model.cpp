#include "pbnn/model.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>
#include <string>

#include "pbnn/errors.hpp"

namespace pbnn {

Fraction Fraction::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw FormatError("expected num/den, got '" + std::string(text) + "'");
  }
  auto read = [&](std::string_view part) {
    std::uint64_t v = 0;
    const auto* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, v);
    if (part.empty() || ec != std::errc{} || ptr != end) {
      throw FormatError("malformed fraction '" + std::string(text) + "'");
    }
    return v;
  };
  Fraction f{read(text.substr(0, slash)), read(text.substr(slash + 1))};
  if (f.den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  return f;
}

ConnectionNumber::ConnectionNumber(int value) : value_(value) {
  if (value < 0 || value > 7) {
    throw std::out_of_range("connection number " + std::to_string(value) + " outside 0..7");
  }
}

RuleNumber::RuleNumber(int value) : value_(value) {
  if (value < 0 || value > 255) {
    throw std::out_of_range("rule number " + std::to_string(value) + " outside 0..255");
  }
}

RuleNumber cn_to_rule_number(ConnectionNumber cn) {
  int rn = 0;
  for (int k = 0; k < 8; ++k) {
    const int left = (k & 4) ? 1 : -1;
    const int center = (k & 2) ? 1 : -1;
    const int right = (k & 1) ? 1 : -1;
    if (sgn(cn.w_a() * left + cn.w_b() * center + cn.w_c() * right) > 0) rn |= 1 << k;
  }
  return RuleNumber(rn);
}

Fraction rule_lambda(RuleNumber rn) {
  return Fraction{static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(rn.value()))), 8};
}

int weighted_sum(const BinaryState& s, ConnectionNumber cn, int cell) {
  const int n = s.dim();
  const int left = cell == 1 ? n : cell - 1;
  const int right = cell == n ? 1 : cell + 1;
  return cn.w_a() * s.spin(left) + cn.w_b() * s.spin(cell) + cn.w_c() * s.spin(right);
}

BinaryState sbnn_step(const BinaryState& s, ConnectionNumber cn) {
  std::uint64_t out = 0;
  for (int i = 1; i <= s.dim(); ++i) {
    if (sgn(weighted_sum(s, cn, i)) > 0) out |= std::uint64_t{1} << (i - 1);
  }
  return BinaryState(out, s.dim());
}

BinaryState eca_step(const BinaryState& s, RuleNumber rn) {
  const int n = s.dim();
  const std::uint64_t mask = state_mask(n);
  const std::uint64_t center = s.bits();
  // bit i of `left` holds cell i-1, bit i of `right` holds cell i+1 (ring)
  const std::uint64_t left = ((center << 1) | (center >> (n - 1))) & mask;
  const std::uint64_t right = ((center >> 1) | (center << (n - 1))) & mask;

  std::uint64_t out = 0;
  for (int k = 0; k < 8; ++k) {
    if (!rn.output(k)) continue;
    out |= ((k & 4) ? left : ~left) & ((k & 2) ? center : ~center) & ((k & 1) ? right : ~right);
  }
  return BinaryState(out & mask, n);
}

BinaryState permute_state(const BinaryState& y, const Permutation& sigma) {
  if (sigma.size() != y.dim()) {
    throw DimensionError("permutation size " + std::to_string(sigma.size()) +
                         " does not match state dimension " + std::to_string(y.dim()));
  }
  const std::uint64_t in = y.bits();
  std::uint64_t out = 0;
  for (int i = 1; i <= y.dim(); ++i) {
    out |= ((in >> (sigma(i) - 1)) & 1U) << (i - 1);
  }
  return BinaryState(out, y.dim());
}

BinaryState pbnn_step(const BinaryState& s, const PbnnParams& p) {
  return permute_state(sbnn_step(s, p.cn), p.sigma);
}

}  // namespace pbnn
