#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pdepth/fst.hpp"
#include "pdepth/words.hpp"

namespace pdepth {

/// Tape symbols. Left is the left end marker, Right the right one.
enum class Sym : std::uint8_t { Zero = 0, One = 1, Left = 2, Right = 3 };

enum class PbAction : std::uint8_t { Right = 0, Left = 1, Push = 2, Pop = 3 };

struct PbTransition {
  StateId next = 0;
  PbAction action = PbAction::Right;
  std::uint32_t output = 0;  // index into the machine's output table
  bool defined = false;
};

/// Deterministic k-pebble transducer. delta/nu are partial maps over
/// (non-final state, symbol, pebble-presence mask).
class PebbleMachine {
 public:
  static constexpr unsigned kMaxPebbles = 4;

  PebbleMachine(std::size_t states, unsigned pebbles);

  std::size_t num_states() const noexcept { return finals_.size(); }
  unsigned pebbles() const noexcept { return pebbles_; }
  StateId start() const noexcept { return 0; }
  bool is_final(StateId q) const { return finals_[q] != 0; }
  void set_final(StateId q, bool final = true);

  void set(StateId q, Sym sym, std::uint32_t mask, StateId next, PbAction action, const BitWord& output = {});
  void clear(StateId q, Sym sym, std::uint32_t mask);
  /// Defines the transition for every mask.
  void set_all_masks(StateId q, Sym sym, StateId next, PbAction action, const BitWord& output = {});

  const PbTransition& at(StateId q, Sym sym, std::uint32_t mask) const {
    return table_[index(q, static_cast<std::uint32_t>(sym), mask)];
  }
  const BitWord& output_of(const PbTransition& t) const { return outputs_[t.output]; }
  std::size_t defined_count() const;

  friend bool operator==(const PebbleMachine& a, const PebbleMachine& b);

 private:
  std::size_t index(StateId q, std::uint32_t sym, std::uint32_t mask) const {
    return ((static_cast<std::size_t>(q) * 4 + sym) << pebbles_) | mask;
  }
  std::uint32_t intern(const BitWord& w);

  unsigned pebbles_;
  std::vector<std::uint8_t> finals_;
  std::vector<PbTransition> table_;
  std::vector<BitWord> outputs_;
};

inline constexpr std::int64_t kNoPebble = -1;

/// (state, head, pebble positions, output). pebbles[j] == kNoPebble is bottom.
struct PbConfig {
  StateId state = 0;
  std::size_t head = 0;
  std::vector<std::int64_t> pebbles;
  BitWord output;

  std::size_t placed() const;
  friend bool operator==(const PbConfig&, const PbConfig&) = default;
};

PbConfig pb_initial(const PebbleMachine& machine);
/// Symbol on tape square i of the tape for x (0 = left marker).
Sym tape_symbol(const BitWord& x, std::size_t i);
std::uint32_t presence_mask(const PbConfig& config);

/// One successor step. Throws Stuck for undefined transitions (or a final
/// state) and IllegalMove for impossible actions.
PbConfig pb_step(const PebbleMachine& machine, const BitWord& x, const PbConfig& config);

enum class PbStatus { Halted, Divergent, Stuck, IllegalMove, BudgetExceeded };
const char* to_string(PbStatus status) noexcept;

struct PbRunOptions {
  /// 0 means unlimited; divergence is still detected exactly.
  std::uint64_t step_budget = 0;
};

struct PbRunResult {
  PbStatus status = PbStatus::Halted;
  BitWord output;
  StateId end_state = 0;
  std::uint64_t steps = 0;
  std::string detail;
};

/// Runs from (q0, 0, bottom^k, lambda). A repeated (state, head, pebbles)
/// triple is reported as Divergent; it is found with Brent's cycle finder,
/// so no configuration set is kept.
PbRunResult pb_execute(const PebbleMachine& machine, const BitWord& x, const PbRunOptions& options = {});

/// Output of a halting run; throws Divergent / Stuck / IllegalMove /
/// BudgetExceeded otherwise.
BitWord pb_run(const PebbleMachine& machine, const BitWord& x, const PbRunOptions& options = {});

BitWord pb_pipeline(const std::vector<const PebbleMachine*>& stages, const BitWord& x,
                    const PbRunOptions& options = {});

/// 0-pebble transducer computing the same function as the FST.
PebbleMachine fst_to_pb(const FstMachine& fst);
PebbleMachine pb_identity();

}  // namespace pdepth
