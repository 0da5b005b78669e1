#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pdepth/constructions.hpp"
#include "pdepth/errors.hpp"
#include "pdepth/machine_text.hpp"
#include "pdepth/pushdown.hpp"

using namespace pdepth;
using oracle::word;

namespace {

std::string run_str(const PebbleMachine& m, const BitWord& x) { return pb_run(m, x).to_string(); }

}  // namespace

TEST_CASE("T_pref examples") {
  const auto t = build_T_pref();
  CHECK(run_str(t, doubled(word("01")) + word("01") + word("1")) == "0011");
  CHECK(run_str(t, word("01")).empty());
  CHECK(run_str(t, doubled(word("1")) + word("010")) == "10");
}

TEST_CASE("T_pref on all small inputs") {
  const auto t = build_T_pref();
  for (const auto& x : oracle::all_words(6)) {
    for (const auto& z : oracle::all_words(3)) {
      REQUIRE(run_str(t, doubled(x) + word("01") + z) == oracle::pref_str(x.to_string()) + z.to_string());
    }
  }
}

TEST_CASE("T_pref on arbitrary inputs") {
  // the transition list treats any unequal pair as the separator and stops
  // cleanly when the input ends inside d(x)
  const auto t = build_T_pref();
  for (const auto& w : oracle::all_words(10)) {
    const std::string s = w.to_string();
    std::size_t i = 0;
    std::string x;
    while (i + 1 < s.size() && s[i] == s[i + 1]) {
      x += s[i];
      i += 2;
    }
    const std::string z = i + 2 <= s.size() ? s.substr(i + 2) : "";
    const auto r = pb_execute(t, w);
    REQUIRE(r.status == PbStatus::Halted);
    REQUIRE(r.output.to_string() == oracle::pref_str(x) + z);
  }
}

TEST_CASE("T_powprint examples") {
  const auto t = build_T_powprint();
  CHECK(run_str(t, word("10") + doubled(word("01")) + word("01") + doubled(word("1"))) == "01011");
  CHECK(run_str(t, word("01") + doubled(word("110"))) == "110");
  CHECK(run_str(t, word("01")).empty());
}

TEST_CASE("T_powprint on all small inputs") {
  const auto t = build_T_powprint();
  for (const auto& x : oracle::all_words(4)) {
    if (x.empty()) continue;
    const std::string xs = x.to_string();
    for (const auto& y : oracle::all_words(3)) {
      REQUIRE(run_str(t, word("10") + doubled(x) + word("01") + doubled(y)) == oracle::repeat_str(xs, xs.size()) + y.to_string());
    }
  }
}

TEST_CASE("T_powprint chains squares") {
  const auto t = build_T_powprint();
  const BitWord in = word("10") + doubled(word("011")) + word("01") + doubled(word("11")) + word("10") + doubled(word("10")) + word("01");
  CHECK(run_str(t, in) == "011011011" "11" "1010");
}

TEST_CASE("T_printreverse") {
  for (unsigned k = 3; k <= 4; ++k) {
    const auto t = build_T_printreverse(k);
    std::mt19937_64 rng(k);
    for (int i = 0; i < 100; ++i) {
      // plain printing copies words that never hold 1^{2k} 0
      BitWord x = random_word(rng(), rng() % 40);
      if (contains_run_of_ones(x, 2 * k)) continue;
      REQUIRE(pb_run(t, x) == x);
    }
    const BitWord flag(2 * k, 1);
    const BitWord body = word("0100110");
    const std::vector<Segment> segs{{Segment::Kind::Literal, flag, 0},
                                    {Segment::Kind::Reverse, body, 2 * k + 1},
                                    {Segment::Kind::Reverse, word("00"), 2 * k + 2},
                                    {Segment::Kind::Literal, word("0110"), 0}};
    BitWord expected;
    for (const auto& s : segs) expected.append(s.expand());
    REQUIRE(pb_run(t, encode_printreverse(segs, k)) == expected);
  }
  CHECK_THROWS_AS(build_T_printreverse(2), Error);
  CHECK_THROWS_AS(build_T_printreverse(9), Error);
}

TEST_CASE("T(y0) = y for the opening of the thm4 sequence") {
  const Thm4Sequence s(Thm4Params{3, 1});
  const BitWord y = s.prefix(s.length_through(2));
  CHECK(y.size() == 22);
  CHECK(pb_run(build_T_printreverse(3), y + word("0")) == y);
}

TEST_CASE("thm4 witnesses") {
  const Thm4Sequence s(Thm4Params{3, 1});
  const auto t = build_T_printreverse(3);
  for (std::size_t p : {0, 1, 10, 22, 40, 100, 257, 1000, 2000}) {
    const Witness w = witness_thm4(s, p);
    REQUIRE(w.machine == "tprintreverse:3");
    REQUIRE(w.expected == s.prefix(p));
    REQUIRE(pb_run(t, w.input) == w.expected);
  }
  // full blocks compress: the reverse zones cost half
  const std::size_t end6 = s.length_through(s.block_index(6));
  CHECK(witness_thm4(s, end6).input.size() < end6);
}

TEST_CASE("truncated witnesses never print a wrong prefix") {
  const Thm4Sequence s(Thm4Params{3, 1});
  const auto t = build_T_printreverse(3);
  const std::size_t p = s.length_through(s.block_index(5));
  const Witness w = witness_thm4(s, p);
  std::mt19937_64 rng(109);
  for (int i = 0; i < 1000; ++i) {
    const BitWord cut = w.input.prefix(rng() % (w.input.size() + 1));
    const auto r = pb_execute(t, cut);
    if (r.status == PbStatus::Halted) REQUIRE(r.output.is_prefix_of(w.expected));
  }
}

TEST_CASE("remark1 witnesses") {
  const Remark1Sequence s(Remark1Params{9});
  const auto t = build_T_powprint();
  for (std::size_t p : {std::size_t{0}, std::size_t{5}, std::size_t{90}, std::size_t{171}, std::size_t{200},
                        s.length_through(2)}) {
    const Witness w = witness_remark1(s, p);
    REQUIRE(w.machine == "tpowprint");
    REQUIRE(w.expected == s.prefix(p));
    REQUIRE(pb_run(t, w.input) == w.expected);
  }
  CHECK(witness_remark1(s, s.length_through(2)).input.size() < s.length_through(2) / 10);
}

TEST_CASE("pref witnesses") {
  const Witness w = witness_pref(word("01"), word("1"));
  CHECK(w.input == word("0011011"));
  CHECK(w.expected == word("0011"));
  CHECK(w.machine == "tpref");

  const auto base = std::make_shared<ChampernowneSource>();
  const auto seq = pref_sequence(base);
  const auto t = build_T_pref();
  for (std::size_t p : {0, 1, 2, 3, 7, 55, 300}) {
    const Witness pw = witness_pref_sequence(*base, p);
    REQUIRE(pw.expected == seq->prefix(p));
    REQUIRE(pb_run(t, pw.input) == pw.expected);
  }
}

TEST_CASE("C' compresses a square block") {
  // S = R^{|R|} 1^k (R^{-1})^{|R|} prints |R|^2 + k + |R|^2 / v bits
  const BitWord r = word("0010");
  const std::string rs = r.to_string();
  const std::string block =
      oracle::repeat_str(rs, 4) + "1111" + oracle::repeat_str(oracle::reversed_str(rs), 4);
  const auto c = build_Cprime(0, 4, 2);
  const auto out = pdc_run(c, word(block));
  CHECK(out.output.size() == 16 + 4 + 8);
  CHECK(out.output.to_string() == oracle::repeat_str(rs, 4) + "1111" + std::string(8, '0'));

  const Remark1Sequence s(Remark1Params{16, 8});
  const auto c16 = build_Cprime(0, 16, 8);
  const std::size_t n = s.length_through(1);
  CHECK(pdc_run(c16, s.prefix(n)).output.size() == 256 + 16 + 32);
}

TEST_CASE("C' flags a corrupted reverse zone") {
  const std::string rs = "0010";
  const std::string head = oracle::repeat_str(rs, 4) + "1111";
  const std::string tail = oracle::repeat_str("0100", 3);
  const auto c = build_Cprime(0, 4, 2);
  // first checked bit flipped: flag 1^{3m+1} 0 and the bit, then a raw copy
  CHECK(pdc_run(c, word(head + "1100" + tail)).output.to_string() == oracle::repeat_str(rs, 4) + "1111" + "101" + "100" + tail);
  // second checked bit flipped: flag 1^{3m+2} 0
  CHECK(pdc_run(c, word(head + "0000" + tail)).output.to_string() == oracle::repeat_str(rs, 4) + "1111" + "1100" + "00" + tail);

  const auto c3 = build_Cprime(3, 4, 2);
  CHECK(pdc_run(c3, word("101" + head + "1100")).output.to_string() == "101" + oracle::repeat_str(rs, 4) + "1111" + std::string(10, '1') + "01" + "100");
}

TEST_CASE("C' is lossless at small parameters") {
  for (auto [m, k, v] : {std::tuple{0u, 2u, 2u}, std::tuple{1u, 2u, 2u}, std::tuple{2u, 3u, 3u}, std::tuple{1u, 3u, 9u}}) {
    const auto c = build_Cprime(m, k, v);
    CHECK_NOTHROW(pdc_validate(c));
    REQUIRE(pdc_il_check(c, 10).lossless);
    for (const auto& x : oracle::all_words(10)) {
      const auto r = pdc_run(c, x);
      REQUIRE(pdc_il_decode(c, r.output, r.end_state, 10) == x);
    }
  }
}

TEST_CASE("named builds") {
  CHECK(std::holds_alternative<PebbleMachine>(build_named("tpref")));
  CHECK(std::holds_alternative<PebbleMachine>(build_named("tpowprint")));
  CHECK(std::holds_alternative<PebbleMachine>(build_named("tprintreverse:3")));
  CHECK(std::holds_alternative<PdcMachine>(build_named("cprime:0,2,2")));
  CHECK(std::get<FstMachine>(build_named("identity")) == FstMachine::identity());
  CHECK(std::get<FstMachine>(build_named("doubler")) == FstMachine::doubler());
  CHECK(std::holds_alternative<FstMachine>(build_named("zerodoubler")));
  CHECK_THROWS_AS(build_named("nope"), Error);
  CHECK_THROWS_AS(build_named("cprime:1,2"), Error);
}
