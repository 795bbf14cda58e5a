#include "pbnn/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "pbnn/errors.hpp"

namespace pbnn {

namespace {

using Kind = PermutationParseError::Kind;

void validate_images(const std::vector<int>& images) {
  const int n = static_cast<int>(images.size());
  std::vector<bool> seen(images.size() + 1, false);
  for (int v : images) {
    if (v < 1 || v > n) {
      throw PermutationParseError(Kind::OutOfRange, "permutation entry " + std::to_string(v) +
                                                        " outside 1.." + std::to_string(n));
    }
    if (seen[v]) {
      throw PermutationParseError(Kind::NotBijective,
                                  "permutation entry " + std::to_string(v) + " repeated");
    }
    seen[v] = true;
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  validate_images(images_);
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  }
  return Permutation(std::move(inv));
}

bool Permutation::advance() { return std::next_permutation(images_.begin(), images_.end()); }

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) {
    throw DimensionError("cannot compose permutations of different sizes");
  }
  std::vector<int> images(static_cast<std::size_t>(inner.size()));
  for (int i = 1; i <= inner.size(); ++i) images[i - 1] = outer(inner(i));
  return Permutation(std::move(images));
}

Permutation parse_perm_id(std::string_view text, int n) {
  if (n < 1) throw DimensionError("permutation size must be positive");
  if (text.empty() || text.front() != 'P') {
    throw PermutationParseError(Kind::MissingPrefix,
                                "permutation identifier must start with 'P': " +
                                    std::string(text));
  }
  std::string_view body = text.substr(1);
  std::vector<int> images;

  if (n <= 9) {
    for (char c : body) {
      if (c < '0' || c > '9') {
        throw PermutationParseError(Kind::BadCharacter,
                                    std::string("unexpected character '") + c +
                                        "' in permutation identifier");
      }
      images.push_back(c - '0');
    }
  } else {
    while (true) {
      const auto dash = body.find('-');
      std::string_view token = body.substr(0, dash);
      int value = 0;
      const auto* end = token.data() + token.size();
      auto [ptr, ec] = std::from_chars(token.data(), end, value);
      if (token.empty() || ec != std::errc{} || ptr != end) {
        throw PermutationParseError(Kind::BadCharacter, "malformed entry '" + std::string(token) +
                                                            "' in permutation identifier");
      }
      images.push_back(value);
      if (dash == std::string_view::npos) break;
      body.remove_prefix(dash + 1);
    }
  }

  if (static_cast<int>(images.size()) != n) {
    throw PermutationParseError(Kind::WrongLength,
                                "permutation identifier has " + std::to_string(images.size()) +
                                    " entries, expected " + std::to_string(n));
  }
  return Permutation(std::move(images));
}

std::string format_perm_id(const Permutation& sigma) {
  std::string out = "P";
  const bool wide = sigma.size() >= 10;
  for (int i = 1; i <= sigma.size(); ++i) {
    if (wide && i > 1) out += '-';
    out += std::to_string(sigma(i));
  }
  return out;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::overflow_error("factorial argument out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace pbnn
