#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pdepth/constructions.hpp"
#include "pdepth/errors.hpp"
#include "pdepth/pushdown.hpp"

using namespace pdepth;
using oracle::word;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Mismatch;
}

std::vector<StateId> resting_states(const PdcMachine& m) {
  std::vector<StateId> out;
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (!m.at(q, PdInput::Lambda, StackSym::Zero).defined) out.push_back(q);
  }
  return out;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(pdc_validate(pdc_identity()));
  CHECK_NOTHROW(pdc_validate(pdc_identity(true)));

  PdcMachine both(1, 1);
  both.set(0, PdInput::Lambda, StackSym::Zero, 0, {});
  both.set(0, PdInput::One, StackSym::Zero, 0, {StackSym::Zero});
  CHECK(kind_of([&] { pdc_validate(both); }) == ErrorKind::Validation);

  PdcMachine pops(1, 0);
  pops.set(0, PdInput::Zero, StackSym::Bottom, 0, {});
  CHECK(kind_of([&] { pdc_validate(pops); }) == ErrorKind::Validation);

  PdcMachine unary_one(1, 0, true);
  unary_one.set(0, PdInput::Zero, StackSym::Bottom, 0, {StackSym::One, StackSym::Bottom});
  CHECK(kind_of([&] { pdc_validate(unary_one); }) == ErrorKind::Validation);

  PdcMachine cycle(2, 5);
  cycle.set_keep(0, PdInput::Lambda, 1);
  cycle.set_keep(1, PdInput::Lambda, 0);
  CHECK(kind_of([&] { pdc_validate(cycle); }) == ErrorKind::Validation);

  PdcMachine chain(3, 1);
  chain.set_keep(0, PdInput::Lambda, 1);
  chain.set_keep(1, PdInput::Lambda, 2);
  CHECK(kind_of([&] { pdc_validate(chain); }) == ErrorKind::Validation);

  CHECK_NOTHROW(pdc_validate(build_Cprime(0, 2, 2)));
  CHECK_NOTHROW(pdc_validate(build_Cprime(5, 4, 3)));
  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK_NOTHROW(pdc_validate(random_updc(seed, 5)));
}

TEST_CASE("identity runs") {
  const auto r = pdc_run(pdc_identity(), word("0101"));
  CHECK(r.output == word("0101"));
  CHECK(r.end_state == 0);
  CHECK(r.stack == "Z");
  const auto e = pdc_run(pdc_identity(), BitWord{});
  CHECK(e.output.empty());
  CHECK(e.stack == "Z");
}

TEST_CASE("C' trace with m = 0, k = 2, v = 2") {
  // s0 = 0, q0 = 1, f1 = 2..3, f0 = 4..5, F = 6..8, c = 9..11, qe = 12
  const auto c = build_Cprime(0, 2, 2);
  const auto empty = pdc_run(c, BitWord{});
  CHECK(empty.end_state == 1);
  CHECK(empty.output.empty());

  // group 01 is copied and pushed; flag 11 pops itself; 10 matches R^{-1}
  const auto zone = pdc_run(c, word("011110"));
  CHECK(zone.output == word("01110"));
  CHECK(zone.end_state == 9);
  CHECK(zone.stack == "Z");

  // back in c_1 on z0: the next group 01 is copied, then flag 11 again
  const auto ten = pdc_run(c, word("0111100111"));
  CHECK(ten.output == word("011100111"));
  CHECK(ten.end_state == 9);
  CHECK(ten.stack == "10Z");

  // a mismatch in the reverse zone raises the flag 1^{3m+i} 0 x
  const auto bad = pdc_run(c, word("0111000"));
  CHECK(bad.output == word("011110000"));
  CHECK(bad.end_state == 12);
  CHECK(bad.stack == "10Z");
}

TEST_CASE("stuck and lambda budget") {
  PdcMachine partial(1, 0);
  partial.set_keep(0, PdInput::Zero, 0, {}, word("0"));
  CHECK(kind_of([&] { pdc_run(partial, word("01")); }) == ErrorKind::Stuck);

  PdcMachine over(3, 1);
  over.set_keep(0, PdInput::Lambda, 1);
  over.set_keep(1, PdInput::Lambda, 2);
  CHECK(kind_of([&] { pdc_run(over, BitWord{}); }) == ErrorKind::LambdaBudgetExceeded);
}

TEST_CASE("bottom stays last and lambda runs stay bounded") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = random_updc(seed, 1 + seed % 6);
    std::mt19937_64 rng(seed);
    const BitWord x = random_word(rng(), rng() % 40);
    try {
      const auto r = pdc_run(m, x);
      REQUIRE(!r.stack.empty());
      REQUIRE(r.stack.back() == 'Z');
      REQUIRE(r.stack.find('Z') == r.stack.size() - 1);
      REQUIRE(r.stack.find('1') == std::string::npos);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::Stuck);
    }
  }
}

TEST_CASE("il_check") {
  CHECK(pdc_il_check(pdc_identity(), 10).lossless);
  PdcMachine quiet(1, 0);
  quiet.set_keep(0, PdInput::Zero, 0);
  quiet.set_keep(0, PdInput::One, 0);
  const auto v = pdc_il_check(quiet, 2);
  CHECK_FALSE(v.lossless);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->first == word("0"));
  CHECK(v.counterexample->second == word("1"));
  CHECK(pdc_il_check(build_Cprime(0, 2, 2), 10).lossless);
  CHECK(pdc_il_check(build_Cprime(2, 3, 3), 10).lossless);
  CHECK_THROWS_AS(pdc_il_check(pdc_identity(), 19), Error);
}

TEST_CASE("il_check agrees with a map over all inputs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto m = random_updc(seed, 1 + seed % 3);
    std::map<std::pair<std::string, StateId>, int> seen;
    bool lossless = true;
    bool complete = true;
    for (const auto& x : oracle::all_words(7)) {
      try {
        const auto r = pdc_run(m, x);
        lossless &= ++seen[{r.output.to_string(), r.end_state}] == 1;
      } catch (const Error&) {
        complete = false;
      }
    }
    if (!complete) continue;
    REQUIRE(pdc_il_check(m, 7).lossless == lossless);
  }
}

TEST_CASE("il_decode") {
  const auto c = build_Cprime(0, 2, 2);
  for (const auto& x : oracle::all_words(10)) {
    const auto r = pdc_run(c, x);
    REQUIRE(pdc_il_decode(c, r.output, r.end_state, 10) == x);
  }
  CHECK(pdc_il_decode(pdc_identity(), word("0110"), 0) == word("0110"));
  CHECK(kind_of([&] { pdc_il_decode(pdc_identity(), word("0110"), 0, 3); }) == ErrorKind::NoPreimage);
  PdcMachine quiet(1, 0);
  quiet.set_keep(0, PdInput::Zero, 0);
  quiet.set_keep(0, PdInput::One, 0);
  CHECK(kind_of([&] { pdc_il_decode(quiet, BitWord{}, 0, 2); }) == ErrorKind::Ambiguous);
}

TEST_CASE("height invariance") {
  const auto id = pdc_identity(true);
  CHECK(updc_height_invariance(id, 0, word("0110"), 4, 11));
  CHECK(updc_height_invariance(id, 0, word("0110"), 4, 4));
  CHECK_THROWS_AS(updc_height_invariance(id, 0, word("0110"), 3, 11), Error);
  CHECK_THROWS_AS(updc_height_invariance(pdc_identity(false), 0, word("0"), 4, 4), Error);

  std::mt19937_64 rng(61);
  int trials = 0;
  for (std::uint64_t seed = 0; trials < 1000; ++seed) {
    const auto m = random_updc(seed, 2 + seed % 5);
    const auto qs = resting_states(m);
    const StateId q = qs[rng() % qs.size()];
    const BitWord x = random_word(rng(), rng() % 24);
    const std::size_t need = (m.lambda_budget() + 1) * x.size();
    const std::size_t h1 = need + rng() % 5;
    const std::size_t h2 = need + rng() % 40;
    try {
      REQUIRE(updc_height_invariance(m, q, x, h1, h2));
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::Stuck);
    }
    ++trials;
  }
}
