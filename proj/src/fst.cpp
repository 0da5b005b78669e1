#include "pdepth/fst.hpp"

#include <string>

#include "internal/il_search.hpp"
#include "pdepth/errors.hpp"

namespace pdepth {

FstMachine::FstMachine(std::size_t states) : next_(2 * states, 0), out_(2 * states) {
  require(states >= 1, "an FST needs at least one state");
}

FstMachine FstMachine::identity() {
  FstMachine m(1);
  m.set(0, 0, 0, BitWord::parse("0"));
  m.set(0, 1, 0, BitWord::parse("1"));
  return m;
}

FstMachine FstMachine::doubler() {
  FstMachine m(1);
  m.set(0, 0, 0, BitWord::parse("00"));
  m.set(0, 1, 0, BitWord::parse("11"));
  return m;
}

void FstMachine::set(StateId q, std::uint8_t bit, StateId next, BitWord output) {
  require(q < num_states() && next < num_states() && bit <= 1, "FST transition out of range");
  next_[2 * q + bit] = next;
  out_[2 * q + bit] = std::move(output);
}

FstRun fst_run_from(const FstMachine& machine, StateId from, const BitWord& x) {
  FstRun r;
  r.end_state = from;
  for (auto b : x.bits()) {
    r.output.append(machine.output(r.end_state, b));
    r.end_state = machine.next(r.end_state, b);
  }
  return r;
}

FstRun fst_run(const FstMachine& machine, const BitWord& x) { return fst_run_from(machine, 0, x); }

IlVerdict il_check(const FstMachine& machine, unsigned bound) {
  require(bound <= 20, "il_check bound must be at most 20");
  return detail::il_search(bound, [&](const BitWord& x) -> std::optional<std::pair<BitWord, std::uint32_t>> {
    auto r = fst_run(machine, x);
    return std::make_pair(std::move(r.output), r.end_state);
  });
}

namespace {

struct DecodeSearch {
  const FstMachine& machine;
  const BitWord& y;
  StateId q_end;
  unsigned bound;
  std::vector<BitWord> found;
  BitWord path;

  void visit(StateId q, std::size_t pos) {
    if (found.size() >= 2) return;
    if (pos == y.size() && q == q_end) found.push_back(path);
    if (path.size() == bound) return;
    for (std::uint8_t b = 0; b <= 1; ++b) {
      const BitWord& w = machine.output(q, b);
      if (!w.occurs_at(y, pos)) continue;
      path.push_back(b);
      visit(machine.next(q, b), pos + w.size());
      path.pop_back();
    }
  }
};

}  // namespace

BitWord il_decode(const FstMachine& machine, const BitWord& y, StateId q_end, unsigned bound) {
  require(q_end < machine.num_states(), "end state out of range");
  DecodeSearch search{machine, y, q_end, bound, {}, {}};
  search.visit(0, 0);
  if (search.found.empty()) fail(ErrorKind::NoPreimage, "no input of length <= " + std::to_string(bound) + " maps to the given output and state");
  if (search.found.size() > 1) {
    fail(ErrorKind::Ambiguous, "inputs " + search.found[0].to_string() + " and " + search.found[1].to_string() +
                                   " both map to the given output and state");
  }
  return search.found.front();
}

std::size_t fst_compress_len(const FstMachine& machine, const BitSource& source, std::size_t n) {
  const BitWord x = source.prefix(n);
  std::size_t total = 0;
  StateId q = 0;
  for (auto b : x.bits()) {
    total += machine.output(q, b).size();
    q = machine.next(q, b);
  }
  return total;
}

FstMachine cprime_fst_fragment(std::size_t m, std::size_t k) {
  require(k >= 1, "flag length must be positive");
  // s_0..s_{m-1}, then q0, f1_1..f1_{k-1}, f0_1..f0_{k-1}
  const std::size_t q0 = m;
  const std::size_t f1 = q0 + 1;
  const std::size_t f0 = f1 + (k - 1);
  FstMachine fst(f0 + (k - 1));
  const BitWord bit[2] = {BitWord::parse("0"), BitWord::parse("1")};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint8_t b = 0; b <= 1; ++b) fst.set(static_cast<StateId>(i), b, static_cast<StateId>(i + 1), bit[b]);
  }
  auto group_next = [&](std::size_t pos, bool all_ones, std::uint8_t b) -> StateId {
    // pos = number of bits of the current k-group already read
    if (pos + 1 == k) return static_cast<StateId>(q0);
    const bool ones = all_ones && b == 1;
    return static_cast<StateId>((ones ? f1 : f0) + pos);
  };
  for (std::uint8_t b = 0; b <= 1; ++b) {
    fst.set(static_cast<StateId>(q0), b, group_next(0, true, b), bit[b]);
    for (std::size_t i = 1; i < k; ++i) {
      fst.set(static_cast<StateId>(f1 + i - 1), b, group_next(i, true, b), bit[b]);
      fst.set(static_cast<StateId>(f0 + i - 1), b, group_next(i, false, b), bit[b]);
    }
  }
  return fst;
}

FstMachine zero_doubler_fst() {
  FstMachine m(2);
  for (StateId q = 0; q < 2; ++q) {
    m.set(q, 0, 0, BitWord::parse("00"));
    m.set(q, 1, 1, BitWord{});
  }
  return m;
}

FstMachine silent_fst() { return FstMachine(1); }

}  // namespace pdepth
