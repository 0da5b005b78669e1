#pragma once

// Straightforward reference implementations used as test oracles. They share
// no code with the library beyond data types and the codec definitions.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdepth/complexity.hpp"
#include "pdepth/fst.hpp"
#include "pdepth/pebble.hpp"
#include "pdepth/words.hpp"

namespace oracle {

using pdepth::BitWord;

inline BitWord word(const std::string& s) { return BitWord::parse(s); }

inline BitWord from_code(std::uint64_t v, unsigned len) {
  BitWord w;
  for (unsigned i = len; i-- > 0;) w.push_back(static_cast<std::uint8_t>((v >> i) & 1u));
  return w;
}

inline std::vector<BitWord> all_words(unsigned max_len) {
  std::vector<BitWord> out;
  for (unsigned len = 0; len <= max_len; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) out.push_back(from_code(v, len));
  }
  return out;
}

inline std::string pref_str(const std::string& x) {
  std::string out;
  for (std::size_t i = 1; i <= x.size(); ++i) out += x.substr(0, i);
  return out;
}

inline std::string repeat_str(const std::string& x, std::size_t times) {
  std::string out;
  for (std::size_t i = 0; i < times; ++i) out += x;
  return out;
}

inline std::string doubled_str(const std::string& x) {
  std::string out;
  for (char c : x) out += std::string(2, c);
  return out;
}

inline std::string reversed_str(const std::string& x) { return std::string(x.rbegin(), x.rend()); }

enum class Outcome { Halted, Stuck, Illegal, OutOfBudget };

struct NaiveRun {
  Outcome outcome = Outcome::OutOfBudget;
  std::string output;
};

/// Direct simulation of the configuration semantics with a step budget.
inline NaiveRun naive_pb(const pdepth::PebbleMachine& m, const BitWord& x, std::uint64_t budget) {
  using pdepth::PbAction;
  using pdepth::Sym;
  const std::size_t last = x.size() + 1;
  std::size_t head = 0;
  std::uint32_t q = 0;
  std::vector<std::int64_t> peb(m.pebbles(), -1);
  std::size_t placed = 0;
  NaiveRun r;
  for (std::uint64_t step = 0; step <= budget; ++step) {
    if (m.is_final(q)) {
      r.outcome = Outcome::Halted;
      return r;
    }
    if (step == budget) break;
    const Sym sym = head == 0 ? Sym::Left : head == last ? Sym::Right : (x[head - 1] ? Sym::One : Sym::Zero);
    std::uint32_t mask = 0;
    for (unsigned j = 0; j < m.pebbles(); ++j) {
      if (peb[j] == static_cast<std::int64_t>(head)) mask |= 1u << j;
    }
    const auto& t = m.at(q, sym, mask);
    if (!t.defined) {
      r.outcome = Outcome::Stuck;
      return r;
    }
    switch (t.action) {
      case PbAction::Right:
        if (head == last) return {Outcome::Illegal, r.output};
        ++head;
        break;
      case PbAction::Left:
        if (head == 0) return {Outcome::Illegal, r.output};
        --head;
        break;
      case PbAction::Push:
        if (placed == m.pebbles()) return {Outcome::Illegal, r.output};
        peb[placed++] = static_cast<std::int64_t>(head);
        break;
      case PbAction::Pop:
        if (placed == 0 || peb[placed - 1] != static_cast<std::int64_t>(head)) return {Outcome::Illegal, r.output};
        peb[--placed] = -1;
        break;
    }
    r.output += m.output_of(t).to_string();
    q = t.next;
  }
  r.outcome = Outcome::OutOfBudget;
  return r;
}

/// |Q| (|x|+2)^{k+1} (|x|+3): more steps than distinct (state, head, pebbles).
inline std::uint64_t naive_budget(const pdepth::PebbleMachine& m, const BitWord& x) {
  std::uint64_t b = m.num_states();
  for (unsigned i = 0; i <= m.pebbles(); ++i) b *= x.size() + 2;
  return b * (x.size() + 3);
}

/// Greedy LZ78 over a set of strings.
inline std::vector<std::string> naive_lz78(const std::string& x) {
  std::set<std::string> dict{""};
  std::vector<std::string> phrases;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t len = 0;
    while (i + len < x.size() && dict.count(x.substr(i, len + 1))) ++len;
    const std::string phrase = x.substr(i, std::min(len + 1, x.size() - i));
    phrases.push_back(phrase);
    dict.insert(phrase);
    i += phrase.size();
  }
  return phrases;
}

/// Every codeword of length <= k decoded; every input of each length tried
/// in turn up to |Q|(|x|+1) or the best value so far.
inline std::optional<std::size_t> naive_dk_fst(const BitWord& x, unsigned k) {
  std::optional<std::size_t> best;
  for (unsigned len = 0; len <= k; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const auto m = pdepth::fst_decode(from_code(v, len));
      if (!m) continue;
      const std::size_t bound = m->num_states() * (x.size() + 1);
      for (std::size_t ylen = 0; ylen <= bound && (!best || ylen < *best); ++ylen) {
        bool hit = false;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << ylen) && !hit; ++y) {
          hit = pdepth::fst_run(*m, from_code(y, static_cast<unsigned>(ylen))).output == x;
        }
        if (hit) {
          best = ylen;
          break;
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
