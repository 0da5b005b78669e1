#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdepth/fst.hpp"
#include "pdepth/pebble.hpp"
#include "pdepth/words.hpp"

namespace pdepth {

// FST representation: 1^|Q| 0, then per (state, bit) in row-major order the
// next state in ceil(log2 |Q|) bits followed by the output as 1^|w| 0 w.
BitWord fst_encode(const FstMachine& machine);
/// nullopt unless the whole word is one valid codeword.
std::optional<FstMachine> fst_decode(const BitWord& code);
std::size_t fst_sigma_size(const FstMachine& machine);
/// Relabeling (state 0 fixed) with the lexicographically least codeword.
FstMachine fst_canonical(const FstMachine& machine);

// PB representation: 1^|Q| 0, 1^k 0, the finals bitmask, then for every
// non-final state, symbol (0,1,L,R) and pebble mask a defined bit, and when
// set the next state, a 2-bit action and the output as 1^|w| 0 w.
BitWord pb_encode(const PebbleMachine& machine);
std::optional<PebbleMachine> pb_decode(const BitWord& code);
std::size_t pb_sigma_size(const PebbleMachine& machine);
PebbleMachine pb_canonical(const PebbleMachine& machine);

inline constexpr unsigned kMaxFstEnumeration = 24;
inline constexpr unsigned kMaxPbEnumeration = 18;

struct EnumeratedFst {
  FstMachine machine;
  BitWord code;
};
struct EnumeratedPb {
  PebbleMachine machine;
  BitWord code;
};

/// Every FST with |T| <= k once, as its canonical codeword, ordered by
/// (length, codeword). Throws InvalidArgument for k > 24.
const std::vector<EnumeratedFst>& enumerate_fst(unsigned k);
/// Same for pebble transducers, k <= 18.
std::vector<EnumeratedPb> enumerate_pb(unsigned k);

/// "len:hex" with the bits packed most significant first.
std::string code_to_hex(const BitWord& code);
BitWord code_from_hex(const std::string& text);

struct ComplexityResult {
  std::optional<std::size_t> value;  // nullopt is infinity
  BitWord input;                     // witness input
  std::string machine;               // witness machine, text format
  std::string label;
  bool exact = false;
};

/// Shortest y with T(y) = x (any end state); exact search over
/// (state, output position) pairs.
std::optional<BitWord> fst_shortest_preimage(const FstMachine& machine, const BitWord& x);

/// Exact D^k over the FST enumeration.
ComplexityResult dk_fst(const BitWord& x, unsigned k);

/// Same value by decoding every codeword of length <= k and trying every
/// input up to |Q|(|x|+1) bits. Slow; k <= 20.
ComplexityResult dk_fst_bruteforce(const BitWord& x, unsigned k);

struct PbPoolEntry {
  std::string label;
  const PebbleMachine* machine = nullptr;
  std::size_t size = 0;
  /// Optional witness builder; its answer is verified by running.
  std::function<std::optional<BitWord>(const BitWord&)> builder;
};

/// Upper bound from a machine pool: exhaustive inputs up to `cap` bits per
/// machine plus builder witnesses. Never exact.
ComplexityResult dk_pb_upper(const BitWord& x, const std::vector<PbPoolEntry>& pool, unsigned cap,
                             std::uint64_t step_budget = 200000);

/// (min, max) of the last `tail` ratios. Needs at least two values.
std::pair<double, double> density_curves(const std::vector<double>& ratios, std::size_t tail = 3);

}  // namespace pdepth
