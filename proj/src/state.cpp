#include "pbnn/state.hpp"

#include <stdexcept>
#include <string>

#include "pbnn/errors.hpp"

namespace pbnn {

void require_trajectory_dim(int dim) {
  if (dim < kMinDim || dim > kMaxTrajectoryDim) {
    throw DimensionError("dimension " + std::to_string(dim) + " outside supported range " +
                         std::to_string(kMinDim) + ".." + std::to_string(kMaxTrajectoryDim));
  }
}

void require_exhaustive_dim(int dim) {
  if (dim < kMinDim || dim > kMaxExhaustiveDim) {
    throw DimensionError("dimension " + std::to_string(dim) +
                         " outside exhaustive-analysis range " + std::to_string(kMinDim) +
                         ".." + std::to_string(kMaxExhaustiveDim));
  }
}

std::uint64_t state_count(int dim) {
  require_exhaustive_dim(dim);
  return std::uint64_t{1} << dim;
}

BinaryState::BinaryState(std::uint64_t bits, int dim) : bits_(bits), dim_(dim) {
  require_trajectory_dim(dim);
  if ((bits & ~state_mask(dim)) != 0) {
    throw DimensionError("state bits exceed dimension " + std::to_string(dim));
  }
}

BinaryState BinaryState::from_index(std::uint64_t index, int dim) {
  require_trajectory_dim(dim);
  if (dim == 64) {
    throw DimensionError("canonical index is not representable for dimension 64");
  }
  if (index < 1 || index - 1 > state_mask(dim)) {
    throw std::out_of_range("state index " + std::to_string(index) + " outside 1.." +
                            std::to_string(state_mask(dim) + 1));
  }
  return BinaryState(index - 1, dim);
}

BinaryState BinaryState::from_spins(std::span<const int> spins) {
  const int dim = static_cast<int>(spins.size());
  require_trajectory_dim(dim);
  std::uint64_t bits = 0;
  for (int i = 0; i < dim; ++i) {
    if (spins[i] == 1) {
      bits |= std::uint64_t{1} << i;
    } else if (spins[i] != -1) {
      throw std::invalid_argument("spin values must be -1 or +1");
    }
  }
  return BinaryState(bits, dim);
}

BinaryState BinaryState::parse(std::string_view text) {
  const int dim = static_cast<int>(text.size());
  require_trajectory_dim(dim);
  const bool pm = text.find_first_of("+-") != std::string_view::npos;
  std::uint64_t bits = 0;
  for (int i = 0; i < dim; ++i) {
    const char c = text[i];
    bool on = false;
    if (pm && (c == '+' || c == '-')) {
      on = c == '+';
    } else if (!pm && (c == '0' || c == '1')) {
      on = c == '1';
    } else {
      throw std::invalid_argument("state string must use only '+'/'-' or only '0'/'1': " +
                                  std::string(text));
    }
    if (on) bits |= std::uint64_t{1} << i;
  }
  return BinaryState(bits, dim);
}

std::uint64_t BinaryState::index() const {
  if (dim_ >= 64) {
    throw DimensionError("canonical index is not representable for dimension 64");
  }
  return bits_ + 1;
}

int BinaryState::spin(int i) const {
  if (i < 1 || i > dim_) throw std::out_of_range("cell index out of range");
  return ((bits_ >> (i - 1)) & 1U) ? 1 : -1;
}

std::vector<int> BinaryState::spins() const {
  std::vector<int> out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) out[i] = ((bits_ >> i) & 1U) ? 1 : -1;
  return out;
}

std::string BinaryState::to_pm_string() const {
  std::string s(static_cast<std::size_t>(dim_), '-');
  for (int i = 0; i < dim_; ++i) {
    if ((bits_ >> i) & 1U) s[i] = '+';
  }
  return s;
}

std::string BinaryState::to_bit_string() const {
  std::string s(static_cast<std::size_t>(dim_), '0');
  for (int i = 0; i < dim_; ++i) {
    if ((bits_ >> i) & 1U) s[i] = '1';
  }
  return s;
}

}  // namespace pbnn
