#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pbnn {

inline constexpr int kMinDim = 3;
/// Upper bound for anything that tabulates all 2^N states.
inline constexpr int kMaxExhaustiveDim = 32;
/// Upper bound for plain trajectory simulation (one machine word).
inline constexpr int kMaxTrajectoryDim = 64;

/// Mask with the low `dim` bits set.
constexpr std::uint64_t state_mask(int dim) {
  return dim >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
}

/// 2^dim, the size of the state space. Only defined for dim <= kMaxExhaustiveDim.
std::uint64_t state_count(int dim);

void require_trajectory_dim(int dim);
void require_exhaustive_dim(int dim);

/// A vector in {-1,+1}^N packed into a word.
///
/// Bit i-1 holds x_i with 1 meaning +1 and 0 meaning -1. The canonical index
/// is the packed value plus one, so the all -1 vector is index 1, the vector
/// (+1,-1,...,-1) is index 2 and the all +1 vector is index 2^N.
class BinaryState {
 public:
  BinaryState() = default;
  /// Throws DimensionError if dim is out of range or bits above dim are set.
  BinaryState(std::uint64_t bits, int dim);

  static BinaryState from_index(std::uint64_t index, int dim);
  static BinaryState from_spins(std::span<const int> spins);
  static BinaryState all_minus(int dim) { return BinaryState(0, dim); }
  static BinaryState all_plus(int dim) { return BinaryState(state_mask(dim), dim); }

  /// Accepts "+-++-+" or "101101"; the first character is x_1.
  static BinaryState parse(std::string_view text);

  std::uint64_t bits() const noexcept { return bits_; }
  int dim() const noexcept { return dim_; }
  /// Canonical index in 1..2^N. Requires dim < 64.
  std::uint64_t index() const;

  /// x_i for 1-based i, as -1 or +1.
  int spin(int i) const;
  std::vector<int> spins() const;

  std::string to_pm_string() const;
  std::string to_bit_string() const;

  friend bool operator==(const BinaryState&, const BinaryState&) = default;
  friend auto operator<=>(const BinaryState&, const BinaryState&) = default;

 private:
  std::uint64_t bits_ = 0;
  int dim_ = 0;
};

}  // namespace pbnn
