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

#include "bellkit/indexing.h"

#include <stdexcept>

namespace bellkit {

MixedRadix::MixedRadix(std::vector<std::size_t> radices)
    : radices_(std::move(radices)), strides_(radices_.size(), 1) {
  for (std::size_t d = radices_.size(); d-- > 0;) {
    if (radices_[d] == 0) throw std::invalid_argument("zero radix");
    strides_[d] = size_;
    size_ *= radices_[d];
  }
}

std::size_t MixedRadix::encode(std::span<const std::size_t> digits) const {
  std::size_t index = 0;
  for (std::size_t d = 0; d < radices_.size(); ++d) {
    index += digits[d] * strides_[d];
  }
  return index;
}

void MixedRadix::decode(std::size_t index,
                        std::span<std::size_t> digits) const {
  for (std::size_t d = radices_.size(); d-- > 0;) {
    digits[d] = index % radices_[d];
    index /= radices_[d];
  }
}

std::vector<std::size_t> MixedRadix::decode(std::size_t index) const {
  std::vector<std::size_t> out(radices_.size());
  decode(index, out);
  return out;
}

}  // namespace bellkit
