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

#include <stdexcept>
#include <string>
#include <utility>

namespace d2d {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (e.g. a pair outside its package).
class ContractViolation : public Error
{
public:
  using Error::Error;
};

/// An allocation hands the same D2D pair to more than one resource unit.
class FeasibilityError : public Error
{
public:
  using Error::Error;
};

/// User placement could not satisfy the geometry constraints.
class GenerationError : public Error
{
public:
  using Error::Error;
};

/// Exhaustive search refused an instance above its size guard.
class SizeGuardError : public Error
{
public:
  using Error::Error;
};

/// A mechanism identity or oracle relation did not hold.
class InvariantViolation : public Error
{
public:
  using Error::Error;
};

/// The auction exceeded its iteration guard.
class InternalError : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  ConfigError(std::string key, std::string const &message)
    : Error(key.empty() ? message : key + ": " + message)
    , key_(std::move(key))
  {}

  std::string const &key() const noexcept
  {
    return key_;
  }

private:
  std::string key_;
};

}  // namespace d2d
