// SPDX-License-Identifier: Apache-2.0
//
// beamsel: beamspace MIMO beam selection library and simulator
// Copyright (C) 2026 The beamsel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BEAMSEL_OP_COUNTER_HPP
#define BEAMSEL_OP_COUNTER_HPP

#include <cstdint>

namespace beamsel {

// Tally of complex multiply-add operations. Kernels take an optional
// pointer; passing nullptr disables counting.
class OpCounter {
public:
    void add(std::uint64_t n) noexcept { count_ += n; }
    std::uint64_t count() const noexcept { return count_; }
    void reset() noexcept { count_ = 0; }

private:
    std::uint64_t count_ = 0;
};

inline void tally(OpCounter *ops, std::uint64_t n) noexcept
{
    if (ops != nullptr)
        ops->add(n);
}

} // namespace beamsel

#endif
