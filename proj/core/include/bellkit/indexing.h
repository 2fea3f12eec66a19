// Copyright 2026 The bellkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BELLKIT_INDEXING_H_
#define BELLKIT_INDEXING_H_

#include <cstddef>
#include <span>
#include <vector>

namespace bellkit {

/// Mixed-radix encoding of a tuple of outcome indices. Digit 0 is the most
/// significant, so iterating the flat index enumerates tuples in
/// lexicographic order.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<std::size_t> radices);

  std::size_t digits() const { return radices_.size(); }
  std::size_t radix(std::size_t d) const { return radices_[d]; }
  const std::vector<std::size_t>& radices() const { return radices_; }
  std::size_t size() const { return size_; }

  std::size_t encode(std::span<const std::size_t> digits) const;
  void decode(std::size_t index, std::span<std::size_t> digits) const;
  std::vector<std::size_t> decode(std::size_t index) const;

  // Digit d of `index` without decoding the rest.
  std::size_t digit(std::size_t index, std::size_t d) const {
    return (index / strides_[d]) % radices_[d];
  }

  bool operator==(const MixedRadix& other) const {
    return radices_ == other.radices_;
  }

 private:
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

}  // namespace bellkit

#endif  // BELLKIT_INDEXING_H_
