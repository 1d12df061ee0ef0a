#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace prio {

using Nat = std::uint64_t;

// All canonical serializations are byte strings; std::string doubles as the
// byte buffer so hashing and file io stay trivial.
using Bytes = std::string;

// --- unsigned LEB128 varints ------------------------------------------------

inline void put_varint(Bytes& out, Nat v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

// Reads one varint at `pos`, advancing it. Returns false on truncation or a
// value that does not fit 64 bits.
inline bool get_varint(std::string_view buf, std::size_t& pos, Nat& out) {
  Nat v = 0;
  int shift = 0;
  while (pos < buf.size()) {
    const auto byte = static_cast<unsigned char>(buf[pos++]);
    if (shift >= 63 && (byte >> 1) != 0) return false;
    v |= static_cast<Nat>(byte & 0x7f) << shift;
    if ((byte & 0x80) == 0) {
      out = v;
      return true;
    }
    shift += 7;
  }
  return false;
}

// --- length-prefixed blocks ---------------------------------------------------

inline void put_block(Bytes& out, std::string_view part) {
  put_varint(out, part.size());
  out.append(part);
}

inline bool get_block(std::string_view buf, std::size_t& pos, std::string_view& out) {
  Nat len = 0;
  if (!get_varint(buf, pos, len)) return false;
  if (len > buf.size() - pos) return false;
  out = buf.substr(pos, static_cast<std::size_t>(len));
  pos += static_cast<std::size_t>(len);
  return true;
}

// --- canonical item order -----------------------------------------------------

// Shortlex over serialized bytes: shorter first, ties broken lexicographically.
// Every enumerator in the engine yields candidates in this order.
inline bool shortlex_less(const Bytes& a, const Bytes& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// --- hex (for text file formats) ----------------------------------------------

inline std::string to_hex(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

inline bool from_hex(std::string_view hex, Bytes& out) {
  if (hex.size() % 2 != 0) return false;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  out.clear();
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return false;
    out.push_back(static_cast<char>((hi << 4) | lo));
  }
  return true;
}

// --- hashing ------------------------------------------------------------------

inline Nat fnv1a64(std::string_view data) {
  Nat h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hash_hex(Nat h) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace prio
