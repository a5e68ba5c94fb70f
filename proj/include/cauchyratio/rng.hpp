// Copyright 2026 The cauchyratio Authors
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

#ifndef CAUCHYRATIO_RNG_HPP_
#define CAUCHYRATIO_RNG_HPP_

#include <cstdint>
#include <random>

namespace cauchyratio {

// Deterministic random stream keyed by (seed, stream_index).
//
// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
// have fully specified output, so equal keys give bit-identical sequences on
// every conforming standard library. Uniform and normal variates are derived
// here rather than through std::*_distribution, whose algorithms are
// implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  // Standard normal (Marsaglia polar method).
  double normal();
  // Exponential with rate 1.
  double exponential();
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  // An independent stream derived from this stream's key; does not consume
  // draws from *this.
  RngStream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_RNG_HPP_
