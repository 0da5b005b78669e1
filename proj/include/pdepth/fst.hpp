#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pdepth/words.hpp"

namespace pdepth {

using StateId = std::uint32_t;

/// Deterministic one-way transducer. State 0 is the start state; delta and nu
/// are total.
class FstMachine {
 public:
  /// All transitions loop on state 0 with empty output.
  explicit FstMachine(std::size_t states);

  static FstMachine identity();
  /// nu(q, b) = bb
  static FstMachine doubler();

  std::size_t num_states() const noexcept { return next_.size() / 2; }
  StateId next(StateId q, std::uint8_t bit) const { return next_[2 * q + bit]; }
  const BitWord& output(StateId q, std::uint8_t bit) const { return out_[2 * q + bit]; }
  void set(StateId q, std::uint8_t bit, StateId next, BitWord output);

  friend bool operator==(const FstMachine&, const FstMachine&) = default;

 private:
  std::vector<StateId> next_;
  std::vector<BitWord> out_;
};

struct FstRun {
  BitWord output;
  StateId end_state = 0;
};

FstRun fst_run(const FstMachine& machine, const BitWord& x);
/// State and output after x when starting in `from`.
FstRun fst_run_from(const FstMachine& machine, StateId from, const BitWord& x);

/// Result of an exhaustive losslessness check up to a length bound.
struct IlVerdict {
  bool lossless = true;
  unsigned bound = 0;
  /// First colliding pair (earlier word first) when not lossless.
  std::optional<std::pair<BitWord, BitWord>> counterexample;
};

/// Checks x -> (T(x), end state) for injectivity over all |x| <= bound.
/// Words are scanned by length; inside one length, collisions among words of
/// that length are reported before collisions with shorter words.
IlVerdict il_check(const FstMachine& machine, unsigned bound = 12);

/// The unique x with |x| <= bound, T(x) = y and end state q_end. Throws
/// NoPreimage or Ambiguous.
BitWord il_decode(const FstMachine& machine, const BitWord& y, StateId q_end, unsigned bound = 12);

std::size_t fst_compress_len(const FstMachine& machine, const BitSource& source, std::size_t n);

/// Copies its input while counting m bits, then cycles through k flag-group
/// positions. The finite-state skeleton of the pushdown compressor C'.
FstMachine cprime_fst_fragment(std::size_t m, std::size_t k);

/// Two states tracking the last bit; nu(q,0) = 00, nu(q,1) = lambda.
FstMachine zero_doubler_fst();

/// One state with every output empty.
FstMachine silent_fst();

}  // namespace pdepth
