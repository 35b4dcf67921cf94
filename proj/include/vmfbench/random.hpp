// Copyright 2026 The vmfbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Counter-based random numbers. Every Monte Carlo trial owns a stream keyed
// by (seed, trial index), so results do not depend on how trials are
// scheduled across workers.

#include <array>
#include <concepts>
#include <cstdint>

namespace vmfbench {

// Philox4x64 with 10 rounds (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3"). Known-answer vectors are checked in the unit tests.
class Philox4x64 {
 public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  __extension__ using Wide = unsigned __int128;

  static Counter single_round(const Counter& c, const Key& k) noexcept {
    const Wide p0 = static_cast<Wide>(kMul0) * c[0];
    const Wide p1 = static_cast<Wide>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const auto lo0 = static_cast<std::uint64_t>(p0);
    const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
    const auto lo1 = static_cast<std::uint64_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

// Source of uniform variates on the open interval (0, 1).
template <class R>
concept UniformSource = requires(R& r) {
  { r.uniform() } -> std::convertible_to<double>;
};

// One reproducible stream: key = (seed, stream id), counter = block index.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : key_{seed, stream_id} {}

  std::uint64_t next_u64() noexcept {
    if (pos_ == 4) {
      buffer_ = Philox4x64::block({block_index_++, 0, 0, 0}, key_);
      pos_ = 0;
    }
    return buffer_[pos_++];
  }

  // 53 random bits centred in their cell, so 0 and 1 are never returned.
  double uniform() noexcept {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(next_u64() >> 11) + 0.5) * kScale;
  }

 private:
  Philox4x64::Key key_;
  std::uint64_t block_index_ = 0;
  Philox4x64::Counter buffer_{};
  int pos_ = 4;
};

static_assert(UniformSource<CounterStream>);

}  // namespace vmfbench
