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

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace d2d {

/// Dense row-major 2D array.
template <typename T>
class Grid
{
public:
  Grid() = default;

  Grid(std::size_t rows, std::size_t cols, T fill = T{})
    : rows_(rows)
    , cols_(cols)
    , data_(rows * cols, fill)
  {}

  std::size_t rows() const noexcept
  {
    return rows_;
  }

  std::size_t cols() const noexcept
  {
    return cols_;
  }

  T &operator()(std::size_t row, std::size_t col)
  {
    assert(row < rows_ && col < cols_);
    return data_[row * cols_ + col];
  }

  T const &operator()(std::size_t row, std::size_t col) const
  {
    assert(row < rows_ && col < cols_);
    return data_[row * cols_ + col];
  }

  std::span<T const> row(std::size_t r) const
  {
    return {data_.data() + r * cols_, cols_};
  }

  bool operator==(Grid const &) const = default;

private:
  std::size_t    rows_{0};
  std::size_t    cols_{0};
  std::vector<T> data_;
};

}  // namespace d2d
