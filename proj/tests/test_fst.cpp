#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pdepth/errors.hpp"
#include "pdepth/fst.hpp"
#include "pdepth/sequences.hpp"

using namespace pdepth;
using oracle::word;

namespace {

FstMachine random_fst(std::mt19937_64& rng, std::size_t states, std::size_t max_out) {
  FstMachine m(states);
  for (StateId q = 0; q < states; ++q) {
    for (std::uint8_t b = 0; b < 2; ++b) {
      m.set(q, b, static_cast<StateId>(rng() % states), random_word(rng(), rng() % (max_out + 1)));
    }
  }
  return m;
}

// T(xb) = T(x) nu(delta^(x), b), unrolled by hand
FstRun unrolled(const FstMachine& m, const BitWord& x) {
  FstRun r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.output.append(m.output(r.end_state, x[i]));
    r.end_state = m.next(r.end_state, x[i]);
  }
  return r;
}

}  // namespace

TEST_CASE("run examples") {
  const auto id = fst_run(FstMachine::identity(), word("0110"));
  CHECK(id.output == word("0110"));
  CHECK(id.end_state == 0);

  std::mt19937_64 rng(5);
  const auto m = random_fst(rng, 4, 3);
  const auto e = fst_run(m, BitWord{});
  CHECK(e.output.empty());
  CHECK(e.end_state == 0);

  const auto zd = zero_doubler_fst();
  const auto r = fst_run(zd, word("010"));
  CHECK(r.output == word("0000"));
  CHECK(r.end_state == zd.next(zd.next(zd.next(0, 0), 1), 0));
}

TEST_CASE("run matches the recursion and is monotone") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_fst(rng, 1 + rng() % 4, 3);
    for (unsigned len = 0; len <= 12; ++len) {
      const BitWord x = random_word(rng(), len);
      const auto r = fst_run(m, x);
      REQUIRE(r.output == unrolled(m, x).output);
      REQUIRE(r.end_state == unrolled(m, x).end_state);
      for (std::uint8_t b = 0; b < 2; ++b) {
        BitWord xb = x;
        xb.push_back(b);
        REQUIRE(r.output.is_prefix_of(fst_run(m, xb).output));
      }
    }
  }
}

TEST_CASE("il_check examples") {
  const auto id = il_check(FstMachine::identity(), 10);
  CHECK(id.lossless);
  CHECK(id.bound == 10);
  CHECK_FALSE(id.counterexample);

  const auto silent = il_check(silent_fst(), 2);
  CHECK_FALSE(silent.lossless);
  REQUIRE(silent.counterexample);
  CHECK(silent.counterexample->first == word("0"));
  CHECK(silent.counterexample->second == word("1"));

  CHECK(il_check(cprime_fst_fragment(4, 3), 8).lossless);
  CHECK(il_check(FstMachine::doubler(), 12).lossless);
  CHECK_FALSE(il_check(zero_doubler_fst(), 12).lossless);
}

TEST_CASE("il_check agrees with a map over all inputs") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const auto m = random_fst(rng, 1 + rng() % 3, 2);
    const unsigned bound = 7;
    std::set<std::pair<std::string, StateId>> seen;
    bool lossless = true;
    for (const auto& x : oracle::all_words(bound)) {
      const auto r = unrolled(m, x);
      lossless &= seen.insert({r.output.to_string(), r.end_state}).second;
    }
    const auto v = il_check(m, bound);
    REQUIRE(v.lossless == lossless);
    if (!v.lossless) {
      REQUIRE(v.counterexample);
      const auto a = fst_run(m, v.counterexample->first);
      const auto b = fst_run(m, v.counterexample->second);
      REQUIRE(v.counterexample->first != v.counterexample->second);
      REQUIRE(a.output == b.output);
      REQUIRE(a.end_state == b.end_state);
    }
  }
}

TEST_CASE("il_decode examples") {
  CHECK(il_decode(FstMachine::identity(), word("101"), 0, 8) == word("101"));
  CHECK(il_decode(FstMachine::identity(), BitWord{}, 0, 8).empty());
  CHECK(il_decode(FstMachine::doubler(), word("0011"), 0, 8) == word("01"));
  CHECK_THROWS_AS(il_decode(FstMachine::doubler(), word("01"), 0, 8), Error);
  try {
    il_decode(silent_fst(), BitWord{}, 0, 3);
    FAIL("expected an ambiguity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Ambiguous);
  }
  try {
    il_decode(FstMachine::identity(), word("11"), 0, 1);
    FAIL("expected no preimage");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoPreimage);
  }
}

TEST_CASE("decode roundtrip on lossless machines") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 25; ++t) {
    const auto m = random_fst(rng, 1 + rng() % 3, 2);
    if (!il_check(m, 8).lossless) continue;
    ++checked;
    for (const auto& x : oracle::all_words(8)) {
      const auto r = fst_run(m, x);
      REQUIRE(il_decode(m, r.output, r.end_state, 8) == x);
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("compress length") {
  const ChampernowneSource s;
  CHECK(fst_compress_len(FstMachine::identity(), s, 100) == 100);
  CHECK(fst_compress_len(FstMachine::doubler(), s, 50) == 100);
  CHECK(fst_compress_len(FstMachine::identity(), s, 0) == 0);
  // the fragment copies every bit, so the frozen baseline is n itself
  const Thm4Sequence thm4(Thm4Params{});
  CHECK(fst_compress_len(cprime_fst_fragment(4, 3), thm4, 10000) == 10000);
}

TEST_CASE("set validates its arguments") {
  FstMachine m(2);
  CHECK_THROWS_AS(m.set(2, 0, 0, {}), Error);
  CHECK_THROWS_AS(m.set(0, 0, 5, {}), Error);
  CHECK_THROWS_AS(FstMachine(0), Error);
}
