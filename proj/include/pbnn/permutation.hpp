#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pbnn {

/// A bijection on {1..N}, stored as the image list (sigma(1), ..., sigma(N)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws PermutationParseError (OutOfRange / NotBijective) on invalid images.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  /// sigma(i) for 1-based i.
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  std::span<const int> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;

  /// Lexicographic successor of the image list; false after the last one.
  bool advance();

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// (outer o inner)(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// "P231465" for N <= 9, "P1-2-10-..." for N >= 10.
Permutation parse_perm_id(std::string_view text, int n);
std::string format_perm_id(const Permutation& sigma);

/// n!, throws std::overflow_error beyond 20.
std::uint64_t factorial(int n);

}  // namespace pbnn
