#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pdepth/fst.hpp"
#include "pdepth/words.hpp"

namespace pdepth {

/// Stack symbols. Bottom is z0.
enum class StackSym : std::uint8_t { Zero = 0, One = 1, Bottom = 2 };
/// Input column of the transition table; Lambda reads nothing.
enum class PdInput : std::uint8_t { Zero = 0, One = 1, Lambda = 2 };

struct PdTransition {
  bool defined = false;
  StateId next = 0;
  /// Replaces the top symbol; element 0 ends up on top.
  std::vector<StackSym> push;
  BitWord output;
};

/// Bounded pushdown compressor. Unary machines use the stack alphabet {0, z0}.
class PdcMachine {
 public:
  PdcMachine(std::size_t states, unsigned lambda_budget, bool unary = false);

  std::size_t num_states() const noexcept { return table_.size() / 9; }
  unsigned lambda_budget() const noexcept { return budget_; }
  bool unary() const noexcept { return unary_; }
  StateId start() const noexcept { return 0; }

  void set(StateId q, PdInput in, StackSym top, StateId next, std::vector<StackSym> push, BitWord output = {});
  /// Same transition for every top symbol, pushing the top back followed by
  /// `extra` above it (so extra[0] is the new top).
  void set_keep(StateId q, PdInput in, StateId next, const std::vector<StackSym>& extra = {}, const BitWord& output = {});
  const PdTransition& at(StateId q, PdInput in, StackSym top) const {
    return table_[static_cast<std::size_t>(q) * 9 + static_cast<std::size_t>(in) * 3 + static_cast<std::size_t>(top)];
  }

 private:
  unsigned budget_;
  bool unary_;
  std::vector<PdTransition> table_;
};

/// Raises Validation naming the first violated invariant.
void pdc_validate(const PdcMachine& machine);

struct PdcRun {
  BitWord output;
  StateId end_state = 0;
  /// Stack contents, top first, over the characters '0', '1', 'Z'.
  std::string stack;
};

/// lambda-closures are taken before the first bit and after every bit. More
/// than c lambda-steps in a row raises LambdaBudgetExceeded; a missing bit
/// transition raises Stuck.
PdcRun pdc_run(const PdcMachine& machine, const BitWord& x);

/// Continues from state q with the given stack (bottom first, including z0)
/// on input x. No closure is taken before the first bit.
PdcRun pdc_resume(const PdcMachine& machine, StateId q, std::vector<StackSym> stack, const BitWord& x);

IlVerdict pdc_il_check(const PdcMachine& machine, unsigned bound = 10);

/// Unique x with |x| <= bound, C(x) = y and end state q_end; throws
/// NoPreimage or Ambiguous.
BitWord pdc_il_decode(const PdcMachine& machine, const BitWord& y, StateId q_end, unsigned bound = 10);

/// Compares C(q, x, 0^h1 z0) with C(q, x, 0^h2 z0). Requires a unary machine
/// and h1, h2 >= (c+1)|x|, and q must have no lambda move on top 0.
bool updc_height_invariance(const PdcMachine& machine, StateId q, const BitWord& x, std::size_t h1, std::size_t h2);

/// Identity compressor (one state, stack untouched).
PdcMachine pdc_identity(bool unary = false);

/// Random valid unary machine: lambda edges only go to higher states, so the
/// budget equals the longest lambda chain.
PdcMachine random_updc(std::uint64_t seed, std::size_t states);

}  // namespace pdepth
