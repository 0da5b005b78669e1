#pragma once

// Exhaustive injectivity check shared by the FST and PDC families.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pdepth/errors.hpp"
#include "pdepth/fst.hpp"

namespace pdepth::detail {

inline BitWord word_from_code(std::uint32_t bits, unsigned length) {
  BitWord w;
  w.reserve(length);
  for (unsigned i = length; i-- > 0;) w.push_back(static_cast<std::uint8_t>((bits >> i) & 1u));
  return w;
}

struct KeyHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
    return static_cast<std::size_t>(k.first ^ (k.second * 0x9e3779b97f4a7c15ull));
  }
};

inline std::pair<std::uint64_t, std::uint64_t> fingerprint(const BitWord& out, std::uint32_t state) {
  std::uint64_t a = 0xcbf29ce484222325ull ^ state;
  std::uint64_t b = 0x84222325cbf29ce4ull + out.size();
  for (auto bit : out.bits()) {
    a = (a ^ (bit + 1u)) * 0x100000001b3ull;
    b = (b + bit + 7u) * 0xff51afd7ed558ccdull;
    b ^= b >> 29;
  }
  return {a ^ (static_cast<std::uint64_t>(state) << 32), b};
}

// run(x) yields (output, end state), or nullopt when x is outside the domain.
template <class Run>
IlVerdict il_search(unsigned bound, Run&& run) {
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  struct Seen {
    std::uint32_t bits;
    unsigned length;
  };
  IlVerdict verdict;
  verdict.bound = bound;
  std::unordered_map<Key, Seen, KeyHash> shorter;

  auto same = [&](const BitWord& a, const BitWord& b) {
    auto ra = run(a);
    auto rb = run(b);
    return ra && rb && ra->first == rb->first && ra->second == rb->second;
  };

  for (unsigned len = 0; len <= bound; ++len) {
    const std::uint32_t count = std::uint32_t{1} << len;
    std::unordered_map<Key, Seen, KeyHash> level;
    level.reserve(count);
    std::vector<std::pair<Key, std::uint32_t>> keys;
    keys.reserve(count);
    for (std::uint32_t code = 0; code < count; ++code) {
      const BitWord x = word_from_code(code, len);
      auto r = run(x);
      if (!r) continue;
      const Key key = fingerprint(r->first, r->second);
      auto [it, inserted] = level.emplace(key, Seen{code, len});
      if (!inserted) {
        const BitWord first = word_from_code(it->second.bits, len);
        if (same(first, x)) {
          verdict.lossless = false;
          verdict.counterexample = std::make_pair(first, x);
          return verdict;
        }
      }
      keys.emplace_back(key, code);
    }
    for (const auto& [key, code] : keys) {
      auto it = shorter.find(key);
      if (it == shorter.end()) continue;
      const BitWord first = word_from_code(it->second.bits, it->second.length);
      const BitWord x = word_from_code(code, len);
      if (same(first, x)) {
        verdict.lossless = false;
        verdict.counterexample = std::make_pair(first, x);
        return verdict;
      }
    }
    for (const auto& [key, seen] : level) shorter.emplace(key, seen);
  }
  return verdict;
}

}  // namespace pdepth::detail
