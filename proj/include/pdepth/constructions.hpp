#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pdepth/complexity.hpp"
#include "pdepth/machine_text.hpp"
#include "pdepth/pebble.hpp"
#include "pdepth/pushdown.hpp"
#include "pdepth/sequences.hpp"
#include "pdepth/words.hpp"

namespace pdepth {

/// 1-pebble machine mapping d(x) 01 z to pref(x) z.
PebbleMachine build_T_pref();

/// 1-pebble machine printing its input, except that after a 1^{2k} flag
/// "0 0 X 1^F 0" prints X 1^F X^{-1} and "0 1" resumes plain printing.
/// States q_{i,w}, q_{r,w}, q_{s,w} carry the last 2k bits as a register.
PebbleMachine build_T_printreverse(unsigned k);

/// Pushdown compressor that copies the first m bits, then copies R 1^k and
/// replaces the following reverse zone by one 0 per v checked bits.
PdcMachine build_Cprime(std::size_t m, unsigned k, unsigned v);

/// 1-pebble machine: "10" d(x) prints x^{|x|}, "01" d(x) prints x.
PebbleMachine build_T_powprint();

/// Builds by name: tpref, tpowprint, tprintreverse:K, cprime:M,K,V,
/// identity, doubler, zerodoubler.
AnyMachine build_named(const std::string& name);

struct Witness {
  BitWord input;
  BitWord expected;
  std::string machine;  // name accepted by build_named
};

/// d(x) 01 z
Witness witness_pref(const BitWord& x, const BitWord& z);
/// Witness for the first p bits of pref_sequence(base).
Witness witness_pref_sequence(const BitSource& base, std::size_t p);
Witness witness_thm4(const Thm4Sequence& seq, std::size_t p);
Witness witness_remark1(const Remark1Sequence& seq, std::size_t p);

/// Identity and T_pref (with a pref(u) z builder) for dk_pb_upper.
const std::vector<PbPoolEntry>& default_pb_pool();

/// Input for build_T_printreverse(k) printing the concatenated segments.
BitWord encode_printreverse(const std::vector<Segment>& segments, unsigned k);
/// Input for build_T_powprint() printing the concatenated segments.
BitWord encode_powprint(const std::vector<Segment>& segments);

}  // namespace pdepth
