#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pdepth/complexity.hpp"
#include "pdepth/constructions.hpp"
#include "pdepth/errors.hpp"
#include "pdepth/machine_text.hpp"

using namespace pdepth;
using oracle::word;

namespace {

constexpr std::size_t kN0 = 8;

FstMachine random_fst(std::mt19937_64& rng) {
  FstMachine m(1 + rng() % 5);
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::uint8_t b = 0; b < 2; ++b) {
      m.set(q, b, static_cast<StateId>(rng() % m.num_states()), random_word(rng(), rng() % 4));
    }
  }
  return m;
}

PebbleMachine random_pb(std::mt19937_64& rng) {
  const unsigned k = static_cast<unsigned>(rng() % 3);
  PebbleMachine m(1 + rng() % 4, k);
  for (StateId q = 1; q < m.num_states(); ++q) {
    if (rng() % 3 == 0) m.set_final(q);
  }
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (m.is_final(q)) continue;
    for (Sym s : {Sym::Zero, Sym::One, Sym::Left, Sym::Right}) {
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (rng() % 2) m.set(q, s, mask, static_cast<StateId>(rng() % m.num_states()), static_cast<PbAction>(rng() % 4), random_word(rng(), rng() % 3));
      }
    }
  }
  return m;
}

}  // namespace

TEST_CASE("sigma sizes") {
  // header 10, then per bit an empty next-state field and 1 0 b
  CHECK(fst_encode(FstMachine::identity()) == word("10100101"));
  CHECK(fst_sigma_size(FstMachine::identity()) == kN0);
  CHECK(code_to_hex(fst_encode(FstMachine::identity())) == "8:a5");
  CHECK(fst_sigma_size(FstMachine::identity()) == fst_sigma_size(FstMachine::identity()));

  std::mt19937_64 rng(71);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_fst(rng);
    FstMachine bigger(m.num_states() + 1);
    for (StateId q = 0; q < m.num_states(); ++q) {
      for (std::uint8_t b = 0; b < 2; ++b) bigger.set(q, b, m.next(q, b), m.output(q, b));
    }
    REQUIRE(fst_sigma_size(bigger) > fst_sigma_size(m));
  }
}

TEST_CASE("hex codes") {
  CHECK(code_from_hex("8:a5") == word("10100101"));
  CHECK(code_to_hex(word("101")) == "3:a");
  CHECK(code_from_hex("3:a") == word("101"));
  CHECK(code_to_hex(BitWord{}) == "0:");
  CHECK_THROWS_AS(code_from_hex("9:a5"), Error);
  CHECK_THROWS_AS(code_from_hex("zz"), Error);
}

TEST_CASE("codec roundtrip") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 1000; ++t) {
    const auto f = random_fst(rng);
    const auto fd = fst_decode(fst_encode(f));
    REQUIRE(fd);
    REQUIRE(*fd == f);
    REQUIRE(fst_encode(fst_canonical(f)).size() == fst_sigma_size(f));

    const auto p = random_pb(rng);
    const auto pd = pb_decode(pb_encode(p));
    REQUIRE(pd);
    REQUIRE(*pd == p);
    REQUIRE(pb_encode(pb_canonical(p)).size() == pb_sigma_size(p));
  }
  CHECK_FALSE(fst_decode(word("1010010")));
  CHECK_FALSE(fst_decode(word("101001011")));
  CHECK_FALSE(fst_decode(BitWord{}));
}

TEST_CASE("canonical form keeps behaviour") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 200; ++t) {
    const auto f = random_fst(rng);
    const auto c = fst_canonical(f);
    REQUIRE(fst_encode(c) <= fst_encode(f));
    for (int i = 0; i < 10; ++i) {
      const BitWord x = random_word(rng(), rng() % 12);
      REQUIRE(fst_run(c, x).output == fst_run(f, x).output);
    }
  }
}

TEST_CASE("enumeration") {
  CHECK(enumerate_fst(3).empty());
  const auto& at_n0 = enumerate_fst(kN0);
  bool has_identity = false;
  for (const auto& e : at_n0) has_identity |= e.machine == FstMachine::identity();
  CHECK(has_identity);
  CHECK(enumerate_fst(kN0 + 2).size() == 49);

  // every codeword of length <= 12 that decodes, reduced to canonical form
  std::set<BitWord> canon;
  for (unsigned len = 0; len <= 12; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const auto m = fst_decode(oracle::from_code(v, len));
      if (m) canon.insert(fst_encode(fst_canonical(*m)));
    }
  }
  const auto& e12 = enumerate_fst(12);
  CHECK(e12.size() == canon.size());
  std::set<BitWord> listed;
  for (const auto& e : e12) listed.insert(e.code);
  CHECK(listed == canon);
  CHECK_THROWS_AS(enumerate_fst(25), Error);
  CHECK_THROWS_AS(enumerate_pb(19), Error);

  const auto pbs = enumerate_pb(10);
  CHECK(!pbs.empty());
  for (const auto& e : pbs) {
    REQUIRE(e.code.size() <= 10);
    REQUIRE(pb_encode(e.machine) == e.code);
  }
}

TEST_CASE("dk examples") {
  const auto zeros = dk_fst(word("0000"), kN0);
  REQUIRE(zeros.value);
  CHECK(*zeros.value == 2);
  const auto m = std::get<FstMachine>(parse_machine(zeros.machine));
  CHECK(fst_run(m, zeros.input).output == word("0000"));
  CHECK(zeros.exact);

  const auto empty = dk_fst(BitWord{}, kN0);
  REQUIRE(empty.value);
  CHECK(*empty.value == 0);

  CHECK_FALSE(dk_fst(word("1"), 4).value);

  std::mt19937_64 rng(83);
  for (int t = 0; t < 30; ++t) {
    const BitWord x = random_word(rng(), rng() % 12);
    const auto r = dk_fst(x, kN0);
    REQUIRE(r.value);
    REQUIRE(*r.value <= x.size());
  }
}

TEST_CASE("dk matches the naive brute force") {
  for (const auto& x : oracle::all_words(6)) {
    for (unsigned k = kN0 - 1; k <= kN0 + 4; ++k) {
      const auto fast = dk_fst(x, k);
      const auto naive = oracle::naive_dk_fst(x, k);
      REQUIRE(fast.value == naive);
      if (k <= kN0 + 1) REQUIRE(dk_fst_bruteforce(x, k).value == naive);
    }
  }
}

TEST_CASE("dk is antimonotone in k") {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 40; ++t) {
    const BitWord x = random_word(rng(), 1 + rng() % 10);
    std::optional<std::size_t> prev;
    for (unsigned k = kN0; k <= 16; ++k) {
      const auto v = dk_fst(x, k).value;
      REQUIRE(v);
      if (prev) REQUIRE(*v <= *prev);
      prev = v;
    }
  }
}

TEST_CASE("shortest preimage") {
  const auto y = fst_shortest_preimage(FstMachine::doubler(), word("001111"));
  REQUIRE(y);
  CHECK(*y == word("011"));
  CHECK_FALSE(fst_shortest_preimage(FstMachine::doubler(), word("01")));
  CHECK(fst_shortest_preimage(silent_fst(), BitWord{}) == BitWord{});
}

TEST_CASE("pb upper bound") {
  const auto& pool = default_pb_pool();
  std::mt19937_64 rng(97);
  for (unsigned n = 5; n <= 10; ++n) {
    const BitWord x = random_word(rng(), n);
    const auto r = dk_pb_upper(pref(x), pool, 8);
    REQUIRE(r.value);
    CHECK(*r.value == 2 * n + 2);
    CHECK_FALSE(r.exact);
    CHECK(r.label == "tpref");
    const auto m = std::get<PebbleMachine>(build_named("tpref"));
    CHECK(pb_run(m, r.input) == pref(x));
  }

  const std::vector<PbPoolEntry> id_only(pool.begin(), pool.begin() + 1);
  const BitWord x = random_word(5, 40);
  const auto r = dk_pb_upper(x, id_only, 4);
  REQUIRE(r.value);
  CHECK(*r.value == 40);
  CHECK_FALSE(dk_pb_upper(x, {}, 4).value);
}

TEST_CASE("density curves") {
  CHECK(density_curves({1.0, 1.0, 1.0}) == std::pair<double, double>{1.0, 1.0});
  CHECK(density_curves({0.9, 0.6, 0.55, 0.52}, 3) == std::pair<double, double>{0.52, 0.6});
  CHECK(density_curves({0.5, 0.7}, 5) == std::pair<double, double>{0.5, 0.7});
  CHECK_THROWS_AS(density_curves({1.0}), Error);

  const ChampernowneSource s;
  std::vector<double> ratios;
  for (std::size_t n : {100, 1000, 10000}) {
    ratios.push_back(static_cast<double>(fst_compress_len(FstMachine::identity(), s, n)) / static_cast<double>(n));
  }
  CHECK(density_curves(ratios) == std::pair<double, double>{1.0, 1.0});
}
