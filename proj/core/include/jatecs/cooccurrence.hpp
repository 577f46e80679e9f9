#pragma once

#include <cstdint>

namespace jatecs {

// Document counts for the four presence combinations of a feature t and a
// category c: a = t and c, b = t not c, c = c not t, d = neither.
struct CooccurrenceCounts {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t d = 0;

  constexpr std::uint64_t total() const noexcept { return a + b + c + d; }
  constexpr bool operator==(const CooccurrenceCounts&) const = default;
};

}  // namespace jatecs
