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

#include "quingo/serialize.hpp"

#include <bit>
#include <cstring>

#include "quingo/error.hpp"

namespace quingo {

void put_le(Bytes& out, size_t at, uint64_t v, int width) {
  for (int i = 0; i < width; ++i) out[at + i] = static_cast<uint8_t>(v >> (8 * i));
}

uint64_t get_le(const uint8_t* p, int width) {
  uint64_t v = 0;
  for (int i = 0; i < width; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
  return v;
}

size_t fixed_size(const TypePtr& t, WireFormat fmt) {
  switch (t->kind) {
    case TypeKind::Bool: return 1;
    case TypeKind::Int: return 4;
    case TypeKind::Double: return fmt.f32_doubles ? 4 : 8;
    case TypeKind::Unit: return 0;
    case TypeKind::Array: return 4;
    case TypeKind::Tuple: {
      size_t n = 0;
      for (const auto& e : t->elems) n += fixed_size(e, fmt);
      return n;
    }
    default:
      throw Error(Errc::EncodeTypeMismatch, "type " + type_to_string(t) + " cannot cross the host boundary");
  }
}

namespace {

[[noreturn]] void mismatch(const Value& v, const TypePtr& t) {
  throw Error(Errc::EncodeTypeMismatch, "value " + value_to_text(v) + " does not have type " + type_to_string(t));
}

void encode_at(const Value& v, const TypePtr& t, WireFormat fmt, Bytes& out, size_t at) {
  switch (t->kind) {
    case TypeKind::Bool:
      if (!v.is<bool>()) mismatch(v, t);
      out[at] = v.as<bool>() ? 1 : 0;
      return;
    case TypeKind::Int:
      if (!v.is<int32_t>()) mismatch(v, t);
      put_le(out, at, static_cast<uint32_t>(v.as<int32_t>()), 4);
      return;
    case TypeKind::Double: {
      double d;
      if (v.is<double>()) {
        d = v.as<double>();
      } else if (v.is<int32_t>()) {
        d = v.as<int32_t>();
      } else {
        mismatch(v, t);
      }
      if (fmt.f32_doubles) {
        put_le(out, at, std::bit_cast<uint32_t>(static_cast<float>(d)), 4);
      } else {
        put_le(out, at, std::bit_cast<uint64_t>(d), 8);
      }
      return;
    }
    case TypeKind::Unit:
      if (!v.is<UnitVal>()) mismatch(v, t);
      return;
    case TypeKind::Tuple: {
      if (!v.is<TupleVal>() || v.as<TupleVal>().elems.size() != t->elems.size()) mismatch(v, t);
      size_t off = at;
      for (size_t i = 0; i < t->elems.size(); ++i) {
        encode_at(v.as<TupleVal>().elems[i], t->elems[i], fmt, out, off);
        off += fixed_size(t->elems[i], fmt);
      }
      return;
    }
    case TypeKind::Array: {
      if (!v.is<ArrayVal>()) mismatch(v, t);
      const auto& elems = v.as<ArrayVal>().elems;
      size_t region = out.size();
      size_t esize = fixed_size(t->elem(), fmt);
      out.resize(region + 4 + elems.size() * esize, 0);
      put_le(out, at, static_cast<uint32_t>(region - at), 4);
      put_le(out, region, static_cast<uint32_t>(elems.size()), 4);
      for (size_t i = 0; i < elems.size(); ++i) encode_at(elems[i], t->elem(), fmt, out, region + 4 + i * esize);
      return;
    }
    default:
      mismatch(v, t);
  }
}

class Reader {
 public:
  Reader(const uint8_t* data, size_t size, size_t base, WireFormat fmt)
      : data_(data), size_(size), base_(base), fmt_(fmt), high_(base) {}

  Value read(const TypePtr& t, size_t at) {
    switch (t->kind) {
      case TypeKind::Bool: return Value(bytes(at, 1)[0] != 0);
      case TypeKind::Int: return Value(static_cast<int32_t>(static_cast<uint32_t>(get_le(bytes(at, 4), 4))));
      case TypeKind::Double:
        if (fmt_.f32_doubles)
          return Value(static_cast<double>(std::bit_cast<float>(static_cast<uint32_t>(get_le(bytes(at, 4), 4)))));
        return Value(std::bit_cast<double>(get_le(bytes(at, 8), 8)));
      case TypeKind::Unit: return Value(UnitVal{});
      case TypeKind::Tuple: {
        std::vector<Value> elems;
        size_t off = at;
        for (const auto& e : t->elems) {
          elems.push_back(read(e, off));
          off += fixed_size(e, fmt_);
        }
        return make_tuple(std::move(elems));
      }
      case TypeKind::Array: {
        uint32_t rel = static_cast<uint32_t>(get_le(bytes(at, 4), 4));
        // Regions always lie after the offset word; this also rules out cycles.
        if (rel < 4 || rel > size_ - at)
          throw Error(Errc::DecodeBadOffset, "array offset " + std::to_string(rel) + " at byte " +
                                                 std::to_string(at - base_) + " leaves the result block");
        size_t region = at + rel;
        uint32_t n = static_cast<uint32_t>(get_le(bytes(region, 4), 4));
        size_t esize = fixed_size(t->elem(), fmt_);
        if (esize > 0 && n > (size_ - region - 4) / esize)
          throw Error(Errc::DecodeTruncated,
                      "array of " + std::to_string(n) + " elements does not fit in the result block");
        std::vector<Value> elems;
        elems.reserve(n);
        for (uint32_t i = 0; i < n; ++i) elems.push_back(read(t->elem(), region + 4 + i * esize));
        return make_array(std::move(elems));
      }
      default:
        throw Error(Errc::EncodeTypeMismatch, "type " + type_to_string(t) + " cannot cross the host boundary");
    }
  }

  size_t extent() const { return high_ - base_; }

 private:
  const uint8_t* bytes(size_t at, size_t n) {
    if (at > size_ || n > size_ - at)
      throw Error(Errc::DecodeTruncated, "result block truncated: need " + std::to_string(at + n - base_) +
                                             " bytes, have " + std::to_string(size_ - base_));
    high_ = std::max(high_, at + n);
    return data_ + at;
  }

  const uint8_t* data_;
  size_t size_;
  size_t base_;
  WireFormat fmt_;
  size_t high_;
};

}  // namespace

Bytes encode_value(const Value& v, const TypePtr& t, WireFormat fmt) {
  Bytes out(fixed_size(t, fmt), 0);
  encode_at(v, t, fmt, out, 0);
  return out;
}

Decoded decode_value(const uint8_t* data, size_t size, const TypePtr& t, size_t base, WireFormat fmt) {
  if (base > size) throw Error(Errc::DecodeTruncated, "result block starts past the end of the buffer");
  Reader r(data, size, base, fmt);
  Decoded d;
  d.value = r.read(t, base);
  d.extent = r.extent();
  return d;
}

Decoded decode_value(const Bytes& bytes, const TypePtr& t, size_t base, WireFormat fmt) {
  return decode_value(bytes.data(), bytes.size(), t, base, fmt);
}

}  // namespace quingo
