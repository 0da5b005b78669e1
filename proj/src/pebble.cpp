#include "pdepth/pebble.hpp"

#include <algorithm>

#include "pdepth/errors.hpp"

namespace pdepth {

PebbleMachine::PebbleMachine(std::size_t states, unsigned pebbles) : pebbles_(pebbles), finals_(states, 0) {
  require(states >= 1, "a pebble transducer needs at least one state");
  require(pebbles <= kMaxPebbles, "at most 4 pebbles are supported");
  table_.resize((states * 4) << pebbles);
  outputs_.emplace_back();
}

void PebbleMachine::set_final(StateId q, bool final) {
  require(q < num_states(), "state out of range");
  finals_[q] = final ? 1 : 0;
  if (final) {
    for (std::uint32_t s = 0; s < 4; ++s) {
      for (std::uint32_t mask = 0; mask < (1u << pebbles_); ++mask) table_[index(q, s, mask)] = PbTransition{};
    }
  }
}

std::uint32_t PebbleMachine::intern(const BitWord& w) {
  if (w.empty()) return 0;
  for (std::size_t i = outputs_.size(); i-- > 1;) {
    if (outputs_[i] == w) return static_cast<std::uint32_t>(i);
  }
  outputs_.push_back(w);
  return static_cast<std::uint32_t>(outputs_.size() - 1);
}

void PebbleMachine::set(StateId q, Sym sym, std::uint32_t mask, StateId next, PbAction action, const BitWord& output) {
  require(q < num_states() && next < num_states(), "state out of range");
  require(mask < (1u << pebbles_), "pebble mask out of range");
  require(!is_final(q), "final states have no transitions");
  table_[index(q, static_cast<std::uint32_t>(sym), mask)] = PbTransition{next, action, intern(output), true};
}

void PebbleMachine::clear(StateId q, Sym sym, std::uint32_t mask) {
  table_[index(q, static_cast<std::uint32_t>(sym), mask)] = PbTransition{};
}

void PebbleMachine::set_all_masks(StateId q, Sym sym, StateId next, PbAction action, const BitWord& output) {
  for (std::uint32_t mask = 0; mask < (1u << pebbles_); ++mask) set(q, sym, mask, next, action, output);
}

std::size_t PebbleMachine::defined_count() const {
  return static_cast<std::size_t>(std::count_if(table_.begin(), table_.end(), [](const PbTransition& t) { return t.defined; }));
}

bool operator==(const PebbleMachine& a, const PebbleMachine& b) {
  if (a.pebbles_ != b.pebbles_ || a.finals_ != b.finals_ || a.table_.size() != b.table_.size()) return false;
  for (std::size_t i = 0; i < a.table_.size(); ++i) {
    const auto& ta = a.table_[i];
    const auto& tb = b.table_[i];
    if (ta.defined != tb.defined) return false;
    if (!ta.defined) continue;
    if (ta.next != tb.next || ta.action != tb.action || a.outputs_[ta.output] != b.outputs_[tb.output]) return false;
  }
  return true;
}

std::size_t PbConfig::placed() const {
  return static_cast<std::size_t>(std::find(pebbles.begin(), pebbles.end(), kNoPebble) - pebbles.begin());
}

PbConfig pb_initial(const PebbleMachine& machine) {
  PbConfig c;
  c.state = machine.start();
  c.pebbles.assign(machine.pebbles(), kNoPebble);
  return c;
}

Sym tape_symbol(const BitWord& x, std::size_t i) {
  if (i == 0) return Sym::Left;
  if (i == x.size() + 1) return Sym::Right;
  return x[i - 1] ? Sym::One : Sym::Zero;
}

std::uint32_t presence_mask(const PbConfig& config) {
  std::uint32_t mask = 0;
  for (std::size_t j = 0; j < config.pebbles.size(); ++j) {
    if (config.pebbles[j] == static_cast<std::int64_t>(config.head)) mask |= 1u << j;
  }
  return mask;
}

namespace {

// Applies an action in place; returns false (with a reason) when illegal.
bool apply(PbAction action, Sym sym, std::size_t& head, std::int64_t* pebbles, std::size_t k, std::size_t& placed,
           const char*& why) {
  switch (action) {
    case PbAction::Right:
      if (sym == Sym::Right) {
        why = "+1 on the right end marker";
        return false;
      }
      ++head;
      return true;
    case PbAction::Left:
      if (sym == Sym::Left) {
        why = "-1 on the left end marker";
        return false;
      }
      --head;
      return true;
    case PbAction::Push:
      if (placed == k) {
        why = "push with every pebble placed";
        return false;
      }
      pebbles[placed++] = static_cast<std::int64_t>(head);
      return true;
    case PbAction::Pop:
      if (placed == 0 || pebbles[placed - 1] != static_cast<std::int64_t>(head)) {
        why = "pop of a pebble that is not on the current square";
        return false;
      }
      pebbles[--placed] = kNoPebble;
      return true;
  }
  return false;
}

}  // namespace

PbConfig pb_step(const PebbleMachine& machine, const BitWord& x, const PbConfig& config) {
  require(config.head <= x.size() + 1, "head outside the tape");
  require(config.pebbles.size() == machine.pebbles(), "pebble vector has the wrong length");
  if (machine.is_final(config.state)) fail(ErrorKind::Stuck, "no transitions leave a final state");
  const Sym sym = tape_symbol(x, config.head);
  const std::uint32_t mask = presence_mask(config);
  const PbTransition& t = machine.at(config.state, sym, mask);
  if (!t.defined) fail(ErrorKind::Stuck, "undefined transition in state " + std::to_string(config.state));
  PbConfig next = config;
  std::size_t placed = config.placed();
  const char* why = "";
  if (!apply(t.action, sym, next.head, next.pebbles.data(), next.pebbles.size(), placed, why)) {
    fail(ErrorKind::IllegalMove, why);
  }
  next.state = t.next;
  next.output.append(machine.output_of(t));
  return next;
}

const char* to_string(PbStatus status) noexcept {
  switch (status) {
    case PbStatus::Halted: return "halted";
    case PbStatus::Divergent: return "divergent";
    case PbStatus::Stuck: return "stuck";
    case PbStatus::IllegalMove: return "illegal-move";
    case PbStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

namespace {

struct Position {
  StateId state = 0;
  std::size_t head = 0;
  std::size_t placed = 0;
  std::int64_t pebbles[PebbleMachine::kMaxPebbles] = {kNoPebble, kNoPebble, kNoPebble, kNoPebble};

  bool operator==(const Position& o) const {
    return state == o.state && head == o.head && placed == o.placed && std::equal(pebbles, pebbles + placed, o.pebbles);
  }
};

}  // namespace

PbRunResult pb_execute(const PebbleMachine& machine, const BitWord& x, const PbRunOptions& options) {
  PbRunResult result;
  const std::size_t k = machine.pebbles();
  Position cur;
  Position saved = cur;
  std::uint64_t power = 1;
  std::uint64_t since_saved = 0;

  while (true) {
    if (machine.is_final(cur.state)) {
      result.status = PbStatus::Halted;
      break;
    }
    if (options.step_budget != 0 && result.steps >= options.step_budget) {
      result.status = PbStatus::BudgetExceeded;
      result.detail = "step budget of " + std::to_string(options.step_budget) + " exhausted";
      break;
    }
    const Sym sym = tape_symbol(x, cur.head);
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < cur.placed; ++j) {
      if (cur.pebbles[j] == static_cast<std::int64_t>(cur.head)) mask |= 1u << j;
    }
    const PbTransition& t = machine.at(cur.state, sym, mask);
    if (!t.defined) {
      result.status = PbStatus::Stuck;
      result.detail = "undefined transition in state " + std::to_string(cur.state) + " at square " + std::to_string(cur.head);
      break;
    }
    const char* why = "";
    if (!apply(t.action, sym, cur.head, cur.pebbles, k, cur.placed, why)) {
      result.status = PbStatus::IllegalMove;
      result.detail = why;
      break;
    }
    cur.state = t.next;
    result.output.append(machine.output_of(t));
    ++result.steps;

    // Brent: compare against a snapshot refreshed at powers of two.
    if (cur == saved) {
      result.status = PbStatus::Divergent;
      result.detail = "configuration repeated after " + std::to_string(result.steps) + " steps";
      break;
    }
    if (++since_saved == power) {
      saved = cur;
      power *= 2;
      since_saved = 0;
    }
  }
  result.end_state = cur.state;
  return result;
}

BitWord pb_run(const PebbleMachine& machine, const BitWord& x, const PbRunOptions& options) {
  PbRunResult r = pb_execute(machine, x, options);
  switch (r.status) {
    case PbStatus::Halted: return std::move(r.output);
    case PbStatus::Divergent: fail(ErrorKind::Divergent, r.detail);
    case PbStatus::Stuck: fail(ErrorKind::Stuck, r.detail);
    case PbStatus::IllegalMove: fail(ErrorKind::IllegalMove, r.detail);
    case PbStatus::BudgetExceeded: fail(ErrorKind::BudgetExceeded, r.detail);
  }
  fail(ErrorKind::Stuck, "unknown run status");
}

BitWord pb_pipeline(const std::vector<const PebbleMachine*>& stages, const BitWord& x, const PbRunOptions& options) {
  BitWord current = x;
  for (const PebbleMachine* stage : stages) current = pb_run(*stage, current, options);
  return current;
}

PebbleMachine fst_to_pb(const FstMachine& fst) {
  // 0: start on the left marker, 1..n: FST states, n+1: final
  const std::size_t n = fst.num_states();
  PebbleMachine pb(n + 2, 0);
  const auto final_state = static_cast<StateId>(n + 1);
  pb.set(0, Sym::Left, 0, 1, PbAction::Right);
  for (StateId q = 0; q < n; ++q) {
    for (std::uint8_t b = 0; b <= 1; ++b) {
      pb.set(q + 1, b ? Sym::One : Sym::Zero, 0, fst.next(q, b) + 1, PbAction::Right, fst.output(q, b));
    }
    pb.set(q + 1, Sym::Right, 0, final_state, PbAction::Left);
  }
  pb.set_final(final_state);
  return pb;
}

PebbleMachine pb_identity() { return fst_to_pb(FstMachine::identity()); }

}  // namespace pdepth
