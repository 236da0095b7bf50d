// Copyright 2026 The Synthrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYNTHRISK_COMMON_H_
#define SYNTHRISK_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace synthrisk {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument or configuration value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data is malformed or inconsistent (ragged CSV, schema mismatch, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

using Rng = std::mt19937_64;

// Derives an independent stream seed from a master seed and a stream index
// (splitmix64 finalizer over the combined words).
uint64_t DeriveSeed(uint64_t master, uint64_t stream);

// Draws `count` distinct indices from [0, n) uniformly, in draw order.
std::vector<size_t> SampleWithoutReplacement(size_t n, size_t count, Rng& rng);

// Outcome of N_A guesses: one bit per guess, 1 when the guess was correct.
class OutcomeVector {
 public:
  OutcomeVector() = default;
  explicit OutcomeVector(std::vector<uint8_t> bits) : bits_(std::move(bits)) {}

  void push_back(bool success) { bits_.push_back(success ? 1 : 0); }
  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](size_t i) const { return bits_[i] != 0; }
  size_t successes() const;
  const std::vector<uint8_t>& bits() const { return bits_; }

  friend bool operator==(const OutcomeVector&, const OutcomeVector&) = default;

 private:
  std::vector<uint8_t> bits_;
};

}  // namespace synthrisk

#endif  // SYNTHRISK_COMMON_H_
