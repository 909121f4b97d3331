#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <string_view>

namespace genreach {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using StateId = std::uint32_t;

// Bit i set <=> color i+1 (colors are 1-based in files, 0-based here).
using ColorMask = std::uint64_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

// Hard representation limit of ColorMask.
inline constexpr int kMaxColors = 64;
// Default refusal threshold for methods that enumerate color subsets.
inline constexpr int kDefaultColorCap = 20;

enum class Player : std::uint8_t { Eve, Adam };

constexpr Player opponent(Player p) noexcept {
  return p == Player::Eve ? Player::Adam : Player::Eve;
}

constexpr std::string_view to_string(Player p) noexcept {
  return p == Player::Eve ? "eve" : "adam";
}

constexpr ColorMask full_mask(int k) noexcept {
  return k >= 64 ? ~ColorMask{0} : (ColorMask{1} << k) - 1;
}

constexpr bool is_subset(ColorMask a, ColorMask b) noexcept {
  return (a & ~b) == 0;
}

inline int popcount(ColorMask m) noexcept { return std::popcount(m); }

}  // namespace genreach
