#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pdepth/words.hpp"

namespace pdepth {

/// One LZ78 phrase as (index of its longest proper prefix phrase, last bit).
struct Lz78Pair {
  std::size_t pointer = 0;
  std::uint8_t bit = 0;
  friend bool operator==(const Lz78Pair&, const Lz78Pair&) = default;
};

struct Lz78Parse {
  std::vector<BitWord> phrases;
  std::vector<std::size_t> pointers;
  std::vector<std::uint8_t> last_bits;
  std::size_t encoded_len_plain = 0;
  std::size_t encoded_len_gamma = 0;

  std::vector<Lz78Pair> pairs() const;
};

enum class PointerCoding { Plain, Gamma };

/// Greedy parse against a dictionary that starts as {lambda}. Only the last
/// phrase may repeat an earlier one.
Lz78Parse lz78_parse(const BitWord& x);

std::size_t lz78_encoded_len(const Lz78Parse& parse, PointerCoding coding);

/// Plain-coded length without materializing phrases.
std::size_t lz78_plain_len(const BitWord& x);

/// Bits needed for phrase i (1-based) under each coding.
std::size_t lz78_plain_cost(std::size_t phrase_index);
std::size_t lz78_gamma_cost(std::size_t pointer);

/// Inverse of the parse. Throws InvalidArgument on a pointer >= its own index.
BitWord lz78_decode(const std::vector<Lz78Pair>& pairs);

}  // namespace pdepth
