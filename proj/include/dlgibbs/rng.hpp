/* Copyright 2026 The dlgibbs Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dlgibbs {

/// Mixes a path of integers (experiment seed, replicate index, chain role,
/// ...) into a single 64-bit stream id with splitmix64 finalization.
std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> path);

/// A seeded random stream.
///
/// The pair (seed, stream_id) fully determines the variate sequence. The
/// underlying engine is a 64-bit Mersenne twister initialised through
/// std::seed_seq from all four 32-bit halves of the pair, so streams that
/// differ only in their id are decorrelated. A stream is owned by one thread
/// at a time; it is movable and copyable (a copy replays the same sequence).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal variate.
  double normal() { return normal_(engine_); }

  /// Raw 64-bit output.
  std::uint64_t next_u64() noexcept { return engine_(); }

  /// Child stream with the id derived from this stream's (seed, id, child).
  RngStream split(std::uint64_t child) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace dlgibbs
