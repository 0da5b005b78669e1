#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pdepth/constructions.hpp"
#include "pdepth/errors.hpp"
#include "pdepth/pebble.hpp"

using namespace pdepth;
using oracle::Outcome;
using oracle::word;

namespace {

constexpr Sym kSyms[] = {Sym::Zero, Sym::One, Sym::Left, Sym::Right};

PebbleMachine random_pb(std::mt19937_64& rng, std::size_t states, unsigned pebbles, double density) {
  PebbleMachine m(states, pebbles);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (StateId q = 1; q < states; ++q) {
    if (coin(rng) < 0.3) m.set_final(q);
  }
  for (StateId q = 0; q < states; ++q) {
    if (m.is_final(q)) continue;
    for (Sym s : kSyms) {
      for (std::uint32_t mask = 0; mask < (1u << pebbles); ++mask) {
        if (coin(rng) >= density) continue;
        const auto act = static_cast<PbAction>(pebbles ? rng() % 4 : rng() % 2);
        m.set(q, s, mask, static_cast<StateId>(rng() % states), act, random_word(rng(), rng() % 3));
      }
    }
  }
  return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Mismatch;
}

bool no_gaps(const PbConfig& c) {
  const std::size_t placed = c.placed();
  for (std::size_t j = placed; j < c.pebbles.size(); ++j) {
    if (c.pebbles[j] != kNoPebble) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("push and pop follow the successor rule") {
  PebbleMachine m(3, 2);
  m.set(0, Sym::Left, 0, 0, PbAction::Right);
  m.set_all_masks(0, Sym::Zero, 0, PbAction::Right);
  m.set(0, Sym::One, 0, 1, PbAction::Push, word("1"));
  m.set(1, Sym::One, 1, 2, PbAction::Pop, word("0"));
  const BitWord x = word("001");
  PbConfig c = pb_initial(m);
  for (int i = 0; i < 3; ++i) c = pb_step(m, x, c);
  CHECK(c.head == 3);
  c = pb_step(m, x, c);
  CHECK(c.pebbles == std::vector<std::int64_t>{3, kNoPebble});
  CHECK(c.state == 1);
  CHECK(presence_mask(c) == 1);
  c = pb_step(m, x, c);
  CHECK(c.pebbles == std::vector<std::int64_t>{kNoPebble, kNoPebble});
  CHECK(c.output == word("10"));
  CHECK(c.state == 2);
}

TEST_CASE("illegal moves") {
  PebbleMachine right(1, 0);
  right.set(0, Sym::Right, 0, 0, PbAction::Right);
  PbConfig c = pb_initial(right);
  c.head = 2;
  CHECK(kind_of([&] { pb_step(right, word("0"), c); }) == ErrorKind::IllegalMove);

  PebbleMachine left(1, 0);
  left.set(0, Sym::Left, 0, 0, PbAction::Left);
  CHECK(kind_of([&] { pb_step(left, word("0"), pb_initial(left)); }) == ErrorKind::IllegalMove);

  PebbleMachine full(1, 1);
  full.set(0, Sym::Left, 1, 0, PbAction::Push);
  PbConfig placed = pb_initial(full);
  placed.pebbles = {0};
  CHECK(kind_of([&] { pb_step(full, word("0"), placed); }) == ErrorKind::IllegalMove);

  PebbleMachine pop(1, 1);
  pop.set(0, Sym::Left, 0, 0, PbAction::Pop);
  CHECK(kind_of([&] { pb_step(pop, word("0"), pb_initial(pop)); }) == ErrorKind::IllegalMove);
  PbConfig elsewhere = pb_initial(pop);
  elsewhere.pebbles = {1};
  CHECK(kind_of([&] { pb_step(pop, word("0"), elsewhere); }) == ErrorKind::IllegalMove);

  PebbleMachine none(1, 0);
  CHECK(kind_of([&] { pb_step(none, word("0"), pb_initial(none)); }) == ErrorKind::Stuck);
}

TEST_CASE("run examples") {
  CHECK(pb_run(build_T_pref(), word("0011011")) == word("0011"));

  PebbleMachine loop(1, 0);
  loop.set(0, Sym::Left, 0, 0, PbAction::Right);
  loop.set(0, Sym::Zero, 0, 0, PbAction::Right);
  loop.set(0, Sym::One, 0, 0, PbAction::Right);
  loop.set(0, Sym::Right, 0, 0, PbAction::Left);
  const auto d = pb_execute(loop, word("0"));
  CHECK(d.status == PbStatus::Divergent);
  CHECK(kind_of([&] { pb_run(loop, word("0")); }) == ErrorKind::Divergent);

  PebbleMachine accept(1, 0);
  accept.set_final(0);
  CHECK(pb_run(accept, word("0110")).empty());
  CHECK(pb_execute(accept, word("1")).steps == 0);

  PebbleMachine stuck(2, 0);
  stuck.set(0, Sym::Left, 0, 0, PbAction::Right);
  stuck.set_final(1);
  CHECK(pb_execute(stuck, word("1")).status == PbStatus::Stuck);

  const auto budget = pb_execute(loop, word("0101"), PbRunOptions{3});
  CHECK(budget.status == PbStatus::BudgetExceeded);
  CHECK(kind_of([&] { pb_run(loop, word("0101"), PbRunOptions{3}); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("final states reject transitions") {
  PebbleMachine m(2, 0);
  m.set_final(1);
  CHECK_THROWS_AS(m.set(1, Sym::Zero, 0, 0, PbAction::Right), Error);
  CHECK_THROWS_AS(PebbleMachine(1, 5), Error);
  CHECK_THROWS_AS(m.set(0, Sym::Zero, 1, 0, PbAction::Right), Error);
}

TEST_CASE("stack discipline on random walks") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    const unsigned k = 1 + static_cast<unsigned>(rng() % 3);
    // dense, final-free machines keep walking
    PebbleMachine m(3, k);
    for (StateId q = 0; q < 3; ++q) {
      for (Sym s : kSyms) {
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
          m.set(q, s, mask, static_cast<StateId>(rng() % 3), static_cast<PbAction>(rng() % 4));
        }
      }
    }
    const BitWord x = random_word(rng(), 1 + rng() % 8);
    PbConfig c = pb_initial(m);
    for (int step = 0; step < 10000; ++step) {
      try {
        c = pb_step(m, x, c);
      } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::IllegalMove);
        break;
      }
      REQUIRE(no_gaps(c));
      REQUIRE(c.head <= x.size() + 1);
    }
  }
}

TEST_CASE("outcomes partition small runs and match the naive simulator") {
  std::mt19937_64 rng(43);
  std::size_t halted = 0, divergent = 0, stuck = 0, illegal = 0;
  for (int t = 0; t < 3000; ++t) {
    const auto m = random_pb(rng, 1 + rng() % 3, static_cast<unsigned>(rng() % 2), 0.8);
    const BitWord x = random_word(rng(), rng() % 5);
    const auto r = pb_execute(m, x);
    const auto n = oracle::naive_pb(m, x, oracle::naive_budget(m, x));
    switch (r.status) {
      case PbStatus::Halted:
        ++halted;
        REQUIRE(n.outcome == Outcome::Halted);
        REQUIRE(r.output.to_string() == n.output);
        break;
      case PbStatus::Divergent:
        ++divergent;
        REQUIRE(n.outcome == Outcome::OutOfBudget);
        break;
      case PbStatus::Stuck:
        ++stuck;
        REQUIRE(n.outcome == Outcome::Stuck);
        break;
      case PbStatus::IllegalMove:
        ++illegal;
        REQUIRE(n.outcome == Outcome::Illegal);
        break;
      case PbStatus::BudgetExceeded:
        FAIL("no budget was set");
    }
  }
  CHECK(halted > 0);
  CHECK(divergent > 0);
  CHECK(stuck > 0);
  CHECK(illegal > 0);
}

TEST_CASE("naive agreement with more pebbles") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 500; ++t) {
    const auto m = random_pb(rng, 2 + rng() % 3, 2 + static_cast<unsigned>(rng() % 2), 0.9);
    const BitWord x = random_word(rng(), rng() % 6);
    const auto r = pb_execute(m, x);
    const auto n = oracle::naive_pb(m, x, oracle::naive_budget(m, x));
    REQUIRE((r.status == PbStatus::Halted) == (n.outcome == Outcome::Halted));
    if (r.status == PbStatus::Halted) REQUIRE(r.output.to_string() == n.output);
  }
}

TEST_CASE("pipeline") {
  const auto id = pb_identity();
  const BitWord x = word("0110100");
  CHECK(pb_pipeline({&id}, x) == x);
  CHECK(pb_pipeline({}, x) == x);

  const auto tp = build_T_pref();
  for (const auto& u : oracle::all_words(4)) {
    for (const auto& w : oracle::all_words(2)) {
      // stage one has x = lambda, so it copies d(u) 01 w to stage two
      const BitWord in = word("01") + doubled(u) + word("01") + w;
      REQUIRE(pb_pipeline({&tp, &tp}, in).to_string() == oracle::pref_str(u.to_string()) + w.to_string());
    }
  }

  const auto dbl = fst_to_pb(FstMachine::doubler());
  CHECK(pb_pipeline({&dbl, &dbl}, word("01")) == word("00001111"));
  PebbleMachine dead(1, 0);
  CHECK_THROWS_AS(pb_pipeline({&id, &dead}, x), Error);
}

TEST_CASE("fst conversion preserves the function") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 50; ++t) {
    FstMachine f(1 + rng() % 4);
    for (StateId q = 0; q < f.num_states(); ++q) {
      for (std::uint8_t b = 0; b < 2; ++b) {
        f.set(q, b, static_cast<StateId>(rng() % f.num_states()), random_word(rng(), rng() % 3));
      }
    }
    const auto pb = fst_to_pb(f);
    for (int i = 0; i < 20; ++i) {
      const BitWord x = random_word(rng(), rng() % 30);
      REQUIRE(pb_run(pb, x) == fst_run(f, x).output);
    }
  }
}
