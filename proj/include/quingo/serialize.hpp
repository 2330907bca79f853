// Copyright 2026 The Quingo Toolchain Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "quingo/types.hpp"
#include "quingo/value.hpp"

namespace quingo {

using Bytes = std::vector<uint8_t>;

struct WireFormat {
  bool f32_doubles = false;  // 4-byte IEEE singles instead of 8-byte doubles
};

/// Size of the fixed part: arrays count as their 4-byte offset word.
size_t fixed_size(const TypePtr& t, WireFormat fmt = {});

/// Little-endian image of `v`. Arrays are a 4-byte offset, relative to the
/// offset word itself, to a region holding a count and the elements;
/// regions follow the enclosing fixed part depth-first.
Bytes encode_value(const Value& v, const TypePtr& t, WireFormat fmt = {});

struct Decoded {
  Value value;
  size_t extent = 0;  // bytes from `base` to the furthest byte read
};

/// Decodes the block that starts at `base`. DecodeTruncated when the buffer
/// ends early, DecodeBadOffset when an array offset escapes the buffer.
Decoded decode_value(const uint8_t* data, size_t size, const TypePtr& t, size_t base = 0, WireFormat fmt = {});
Decoded decode_value(const Bytes& bytes, const TypePtr& t, size_t base = 0, WireFormat fmt = {});

void put_le(Bytes& out, size_t at, uint64_t v, int width);
uint64_t get_le(const uint8_t* p, int width);

}  // namespace quingo
