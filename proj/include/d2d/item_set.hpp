#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The d2d-auction Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace d2d {

/// Set of D2D pair indices (0-based), stored as a bit mask.
///
/// Pairs are the auctioned items, so a package D_k is an ItemSet. The mask
/// width bounds the number of pairs per drop to kMaxItems.
class ItemSet
{
public:
  using Bits = std::uint32_t;

  static constexpr std::size_t kMaxItems = 24;

  constexpr ItemSet() = default;

  constexpr explicit ItemSet(Bits bits)
    : bits_(bits)
  {}

  static ItemSet of(std::initializer_list<std::size_t> items)
  {
    ItemSet out;
    for (auto item : items)
    {
      out.insert(item);
    }
    return out;
  }

  static constexpr ItemSet single(std::size_t item)
  {
    return ItemSet{Bits{1} << item};
  }

  /// All pairs 0..count-1.
  static constexpr ItemSet first(std::size_t count)
  {
    return ItemSet{count >= 32 ? ~Bits{0} : (Bits{1} << count) - 1};
  }

  constexpr Bits bits() const noexcept
  {
    return bits_;
  }

  constexpr bool empty() const noexcept
  {
    return bits_ == 0;
  }

  constexpr std::size_t size() const noexcept
  {
    return static_cast<std::size_t>(std::popcount(bits_));
  }

  constexpr bool contains(std::size_t item) const noexcept
  {
    return ((bits_ >> item) & 1U) != 0;
  }

  constexpr bool intersects(ItemSet other) const noexcept
  {
    return (bits_ & other.bits_) != 0;
  }

  constexpr bool subset_of(ItemSet other) const noexcept
  {
    return (bits_ & ~other.bits_) == 0;
  }

  void insert(std::size_t item)
  {
    assert(item < kMaxItems);
    bits_ |= Bits{1} << item;
  }

  void erase(std::size_t item)
  {
    bits_ &= ~(Bits{1} << item);
  }

  friend constexpr ItemSet operator|(ItemSet a, ItemSet b)
  {
    return ItemSet{a.bits_ | b.bits_};
  }

  friend constexpr ItemSet operator&(ItemSet a, ItemSet b)
  {
    return ItemSet{a.bits_ & b.bits_};
  }

  /// Set difference.
  friend constexpr ItemSet operator-(ItemSet a, ItemSet b)
  {
    return ItemSet{a.bits_ & ~b.bits_};
  }

  ItemSet &operator|=(ItemSet other)
  {
    bits_ |= other.bits_;
    return *this;
  }

  friend constexpr bool operator==(ItemSet, ItemSet) = default;

  std::vector<std::size_t> members() const
  {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (Bits rest = bits_; rest != 0; rest &= rest - 1)
    {
      out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
    }
    return out;
  }

  /// Calls fn(item) for every member in ascending order.
  template <typename Fn>
  void for_each(Fn &&fn) const
  {
    for (Bits rest = bits_; rest != 0; rest &= rest - 1)
    {
      fn(static_cast<std::size_t>(std::countr_zero(rest)));
    }
  }

  /// Human-readable, 1-based: "{1,3}".
  std::string to_string() const
  {
    std::string out = "{";
    bool first_item = true;
    for_each([&](std::size_t item) {
      if (!first_item)
      {
        out += ',';
      }
      out += std::to_string(item + 1);
      first_item = false;
    });
    out += '}';
    return out;
  }

private:
  Bits bits_{0};
};

}  // namespace d2d
