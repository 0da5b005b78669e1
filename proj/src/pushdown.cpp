#include "pdepth/pushdown.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "internal/il_search.hpp"
#include "pdepth/errors.hpp"

namespace pdepth {

PdcMachine::PdcMachine(std::size_t states, unsigned lambda_budget, bool unary)
    : budget_(lambda_budget), unary_(unary), table_(states * 9) {
  require(states >= 1, "a pushdown compressor needs at least one state");
}

void PdcMachine::set(StateId q, PdInput in, StackSym top, StateId next, std::vector<StackSym> push, BitWord output) {
  require(q < num_states() && next < num_states(), "state out of range");
  auto& t = table_[static_cast<std::size_t>(q) * 9 + static_cast<std::size_t>(in) * 3 + static_cast<std::size_t>(top)];
  t = PdTransition{true, next, std::move(push), std::move(output)};
}

void PdcMachine::set_keep(StateId q, PdInput in, StateId next, const std::vector<StackSym>& extra, const BitWord& output) {
  for (auto top : {StackSym::Zero, StackSym::One, StackSym::Bottom}) {
    if (unary_ && top == StackSym::One) continue;
    std::vector<StackSym> push = extra;
    push.push_back(top);
    set(q, in, top, next, std::move(push), output);
  }
}

namespace {

const char* sym_name(StackSym s) { return s == StackSym::Zero ? "0" : s == StackSym::One ? "1" : "z0"; }

// Longest lambda chain starting at node (q, top); -1 marks a cycle.
struct ChainSearch {
  const PdcMachine& m;
  std::vector<int> memo;   // -2 unvisited, -3 in progress
  int depth(StateId q, StackSym top) {
    const std::size_t id = static_cast<std::size_t>(q) * 3 + static_cast<std::size_t>(top);
    if (memo[id] == -3) return -1;
    if (memo[id] != -2) return memo[id];
    const auto& t = m.at(q, PdInput::Lambda, top);
    if (!t.defined) return memo[id] = 0;
    memo[id] = -3;
    std::vector<StackSym> tops;
    if (!t.push.empty()) {
      tops.push_back(t.push.front());
    } else {
      tops = {StackSym::Zero, StackSym::Bottom};
      if (!m.unary()) tops.push_back(StackSym::One);
    }
    int best = 0;
    for (auto s : tops) {
      const int d = depth(t.next, s);
      if (d < 0) return memo[id] = -1;
      best = std::max(best, d);
    }
    return memo[id] = best + 1;
  }
};

}  // namespace

void pdc_validate(const PdcMachine& m) {
  auto where = [](StateId q, PdInput in, StackSym top) {
    const char* input = in == PdInput::Lambda ? "lambda" : in == PdInput::One ? "1" : "0";
    return "(state " + std::to_string(q) + ", input " + input + ", top " + sym_name(top) + ")";
  };
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (auto top : {StackSym::Zero, StackSym::One, StackSym::Bottom}) {
      const bool has_lambda = m.at(q, PdInput::Lambda, top).defined;
      for (auto in : {PdInput::Zero, PdInput::One, PdInput::Lambda}) {
        const auto& t = m.at(q, in, top);
        if (!t.defined) continue;
        if (has_lambda && in != PdInput::Lambda) {
          fail(ErrorKind::Validation, "determinism: lambda and bit transitions both defined at " + where(q, in, top));
        }
        const auto bottoms = std::count(t.push.begin(), t.push.end(), StackSym::Bottom);
        if (top == StackSym::Bottom) {
          if (t.push.empty() || t.push.back() != StackSym::Bottom || bottoms != 1) {
            fail(ErrorKind::Validation, "bottom symbol: z0 must stay at the bottom at " + where(q, in, top));
          }
        } else if (bottoms != 0) {
          fail(ErrorKind::Validation, "bottom symbol: z0 pushed above the bottom at " + where(q, in, top));
        }
        if (m.unary()) {
          if (top == StackSym::One || std::count(t.push.begin(), t.push.end(), StackSym::One) != 0) {
            fail(ErrorKind::Validation, "unary stack: symbol 1 used at " + where(q, in, top));
          }
        }
      }
    }
  }
  ChainSearch chains{m, std::vector<int>(m.num_states() * 3, -2)};
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (auto top : {StackSym::Zero, StackSym::One, StackSym::Bottom}) {
      const int d = chains.depth(q, top);
      if (d < 0) fail(ErrorKind::Validation, "lambda budget: lambda cycle reachable from " + where(q, PdInput::Lambda, top));
      if (static_cast<unsigned>(d) > m.lambda_budget()) {
        fail(ErrorKind::Validation, "lambda budget: " + std::to_string(d) + " lambda steps possible from " +
                                        where(q, PdInput::Lambda, top) + " but c = " + std::to_string(m.lambda_budget()));
      }
    }
  }
}

namespace {

struct Runner {
  const PdcMachine& m;
  StateId q;
  std::vector<StackSym> stack;  // back is the top
  BitWord output;

  void fire(const PdTransition& t) {
    stack.pop_back();
    for (auto it = t.push.rbegin(); it != t.push.rend(); ++it) stack.push_back(*it);
    output.append(t.output);
    q = t.next;
  }

  void closure() {
    unsigned steps = 0;
    while (!stack.empty()) {
      const auto& t = m.at(q, PdInput::Lambda, stack.back());
      if (!t.defined) return;
      if (++steps > m.lambda_budget()) {
        fail(ErrorKind::LambdaBudgetExceeded,
             "more than " + std::to_string(m.lambda_budget()) + " lambda steps in a row in state " + std::to_string(q));
      }
      fire(t);
    }
  }

  void read(std::uint8_t bit) {
    if (stack.empty()) fail(ErrorKind::Stuck, "empty stack");
    const auto& t = m.at(q, bit ? PdInput::One : PdInput::Zero, stack.back());
    if (!t.defined) {
      fail(ErrorKind::Stuck, "no transition on bit " + std::to_string(bit) + " in state " + std::to_string(q) + " with top " +
                                 sym_name(stack.back()));
    }
    fire(t);
  }

  PdcRun finish() {
    PdcRun r;
    r.output = std::move(output);
    r.end_state = q;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      r.stack.push_back(*it == StackSym::Bottom ? 'Z' : *it == StackSym::One ? '1' : '0');
    }
    return r;
  }
};

}  // namespace

PdcRun pdc_run(const PdcMachine& machine, const BitWord& x) {
  Runner run{machine, machine.start(), {StackSym::Bottom}, {}};
  run.closure();
  for (auto b : x.bits()) {
    run.read(b);
    run.closure();
  }
  return run.finish();
}

PdcRun pdc_resume(const PdcMachine& machine, StateId q, std::vector<StackSym> stack, const BitWord& x) {
  require(q < machine.num_states(), "state out of range");
  require(!stack.empty() && stack.front() == StackSym::Bottom, "stack must start with z0");
  Runner run{machine, q, std::move(stack), {}};
  for (auto b : x.bits()) {
    run.read(b);
    run.closure();
  }
  return run.finish();
}

IlVerdict pdc_il_check(const PdcMachine& machine, unsigned bound) {
  require(bound <= 18, "pdc_il_check bound must be at most 18");
  return detail::il_search(bound, [&](const BitWord& x) -> std::optional<std::pair<BitWord, std::uint32_t>> {
    try {
      auto r = pdc_run(machine, x);
      return std::make_pair(std::move(r.output), r.end_state);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Stuck) return std::nullopt;
      throw;
    }
  });
}

BitWord pdc_il_decode(const PdcMachine& machine, const BitWord& y, StateId q_end, unsigned bound) {
  require(bound <= 18, "pdc_il_decode bound must be at most 18");
  std::vector<BitWord> found;
  BitWord x;
  Runner start{machine, machine.start(), {StackSym::Bottom}, {}};
  start.closure();
  std::function<void(const Runner&)> walk = [&](const Runner& at) {
    if (found.size() > 1) return;
    if (at.q == q_end && at.output == y) found.push_back(x);
    if (x.size() == bound) return;
    for (std::uint8_t b = 0; b < 2; ++b) {
      Runner next = at;
      try {
        next.read(b);
        next.closure();
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Stuck) continue;
        throw;
      }
      if (!next.output.is_prefix_of(y)) continue;
      x.push_back(b);
      walk(next);
      x.pop_back();
    }
  };
  if (start.output.is_prefix_of(y)) walk(start);
  if (found.empty()) fail(ErrorKind::NoPreimage, "no input of length <= " + std::to_string(bound) + " yields this output and state");
  if (found.size() > 1) fail(ErrorKind::Ambiguous, "inputs " + found[0].to_string() + " and " + found[1].to_string() + " collide");
  return found.front();
}

bool updc_height_invariance(const PdcMachine& machine, StateId q, const BitWord& x, std::size_t h1, std::size_t h2) {
  require(machine.unary(), "height invariance needs a unary-stack machine");
  require(q < machine.num_states() && !machine.at(q, PdInput::Lambda, StackSym::Zero).defined,
          "height invariance starts from a state with no lambda move on top 0");
  const std::size_t need = (static_cast<std::size_t>(machine.lambda_budget()) + 1) * x.size();
  require(h1 >= need && h2 >= need, "heights must be at least (c+1)|x| = " + std::to_string(need));
  auto run_at = [&](std::size_t h) {
    std::vector<StackSym> stack(h + 1, StackSym::Zero);
    stack.front() = StackSym::Bottom;
    return pdc_resume(machine, q, std::move(stack), x);
  };
  const PdcRun a = run_at(h1);
  const PdcRun b = run_at(h2);
  return a.output == b.output && a.end_state == b.end_state;
}

PdcMachine pdc_identity(bool unary) {
  PdcMachine m(1, 0, unary);
  m.set_keep(0, PdInput::Zero, 0, {}, BitWord::parse("0"));
  m.set_keep(0, PdInput::One, 0, {}, BitWord::parse("1"));
  return m;
}

PdcMachine random_updc(std::uint64_t seed, std::size_t states) {
  require(states >= 1, "need at least one state");
  std::seed_seq seq{seed, std::uint64_t{0x75706463}};
  std::mt19937_64 rng(seq);
  auto below = [&](std::uint64_t n) { return rng() % n; };
  auto random_word = [&](std::size_t max_len) {
    BitWord w;
    const std::size_t len = below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<std::uint8_t>(rng() & 1u));
    return w;
  };
  // Grows the chain budget after the fact; first collect transitions.
  PdcMachine draft(states, 0, true);
  std::vector<int> chain(states, 0);
  for (std::size_t qi = states; qi-- > 0;) {
    const auto q = static_cast<StateId>(qi);
    for (auto top : {StackSym::Zero, StackSym::Bottom}) {
      const bool lambda = qi + 1 < states && below(3) == 0;
      auto push_for = [&](std::size_t pushes, bool keep) {
        std::vector<StackSym> push(pushes, StackSym::Zero);
        if (keep || top == StackSym::Bottom) push.push_back(top);
        return push;
      };
      if (lambda) {
        const auto next = static_cast<StateId>(qi + 1 + below(states - qi - 1));
        const bool pop = top == StackSym::Zero && below(2) == 0;
        draft.set(q, PdInput::Lambda, top, next, pop ? std::vector<StackSym>{} : push_for(below(2), true), random_word(2));
        chain[qi] = std::max(chain[qi], chain[next] + 1);
        continue;
      }
      for (auto in : {PdInput::Zero, PdInput::One}) {
        const auto next = static_cast<StateId>(below(states));
        const bool pop = top == StackSym::Zero && below(3) == 0;
        draft.set(q, in, top, next, pop ? std::vector<StackSym>{} : push_for(below(3), true), random_word(3));
      }
    }
  }
  const int budget = *std::max_element(chain.begin(), chain.end());
  PdcMachine m(states, static_cast<unsigned>(budget), true);
  for (StateId q = 0; q < states; ++q) {
    for (auto in : {PdInput::Zero, PdInput::One, PdInput::Lambda}) {
      for (auto top : {StackSym::Zero, StackSym::Bottom}) {
        const auto& t = draft.at(q, in, top);
        if (t.defined) m.set(q, in, top, t.next, t.push, t.output);
      }
    }
  }
  return m;
}

}  // namespace pdepth
