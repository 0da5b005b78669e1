#include "pdepth/lz78.hpp"

#include <array>
#include <bit>
#include <string>

#include "pdepth/errors.hpp"

namespace pdepth {

namespace {

struct Trie {
  std::vector<std::array<std::int32_t, 2>> children{{-1, -1}};

  std::int32_t add(std::int32_t parent, std::uint8_t bit) {
    const auto id = static_cast<std::int32_t>(children.size());
    children.push_back({-1, -1});
    children[static_cast<std::size_t>(parent)][bit] = id;
    return id;
  }
};

// Walks x through the trie, calling emit(pointer, bit, begin, end) per phrase.
template <class Emit>
void walk(const BitWord& x, Emit&& emit) {
  Trie trie;
  std::int32_t node = 0;
  std::int32_t parent = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::uint8_t b = x[i];
    const std::int32_t next = trie.children[static_cast<std::size_t>(node)][b];
    if (next >= 0) {
      parent = node;
      node = next;
      continue;
    }
    trie.add(node, b);
    emit(static_cast<std::size_t>(node), b, start, i + 1);
    node = 0;
    parent = 0;
    start = i + 1;
  }
  if (node != 0) emit(static_cast<std::size_t>(parent), x.back(), start, x.size());
}

}  // namespace

std::size_t lz78_plain_cost(std::size_t phrase_index) {
  // ceil(log2 i) + 1
  const std::size_t ceil_log = phrase_index <= 1 ? 0 : std::bit_width(phrase_index - 1);
  return ceil_log + 1;
}

std::size_t lz78_gamma_cost(std::size_t pointer) {
  const std::size_t value = pointer + 1;
  return 2 * (std::bit_width(value) - 1) + 1 + 1;
}

std::vector<Lz78Pair> Lz78Parse::pairs() const {
  std::vector<Lz78Pair> out;
  out.reserve(pointers.size());
  for (std::size_t i = 0; i < pointers.size(); ++i) out.push_back({pointers[i], last_bits[i]});
  return out;
}

Lz78Parse lz78_parse(const BitWord& x) {
  Lz78Parse parse;
  walk(x, [&](std::size_t pointer, std::uint8_t bit, std::size_t begin, std::size_t end) {
    parse.phrases.push_back(x.substr(begin, end - begin));
    parse.pointers.push_back(pointer);
    parse.last_bits.push_back(bit);
  });
  parse.encoded_len_plain = lz78_encoded_len(parse, PointerCoding::Plain);
  parse.encoded_len_gamma = lz78_encoded_len(parse, PointerCoding::Gamma);
  return parse;
}

std::size_t lz78_encoded_len(const Lz78Parse& parse, PointerCoding coding) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < parse.pointers.size(); ++i) {
    total += coding == PointerCoding::Plain ? lz78_plain_cost(i + 1) : lz78_gamma_cost(parse.pointers[i]);
  }
  return total;
}

std::size_t lz78_plain_len(const BitWord& x) {
  std::size_t count = 0;
  std::size_t total = 0;
  walk(x, [&](std::size_t, std::uint8_t, std::size_t, std::size_t) { total += lz78_plain_cost(++count); });
  return total;
}

BitWord lz78_decode(const std::vector<Lz78Pair>& pairs) {
  std::vector<BitWord> dictionary{BitWord{}};
  BitWord out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.pointer > i) {
      fail(ErrorKind::InvalidArgument,
           "dangling pointer " + std::to_string(p.pointer) + " at phrase " + std::to_string(i + 1));
    }
    BitWord phrase = dictionary[p.pointer];
    phrase.push_back(p.bit);
    out.append(phrase);
    dictionary.push_back(std::move(phrase));
  }
  return out;
}

}  // namespace pdepth
