#include "pdepth/constructions.hpp"

#include <charconv>

#include "pdepth/errors.hpp"

namespace pdepth {

namespace {

constexpr Sym kBits[2] = {Sym::Zero, Sym::One};

BitWord bit_word(int b) { return BitWord(1, static_cast<std::uint8_t>(b)); }

// Every transition left undefined on a non-final state goes to `junk`,
// which walks the tape forever.
void route_to_junk(PebbleMachine& m, StateId junk) {
  const std::uint32_t masks = 1u << m.pebbles();
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (m.is_final(q)) continue;
    for (auto sym : {Sym::Zero, Sym::One, Sym::Left, Sym::Right}) {
      for (std::uint32_t mask = 0; mask < masks; ++mask) {
        if (q != junk && m.at(q, sym, mask).defined) continue;
        m.set(q, sym, mask, junk, sym == Sym::Right ? PbAction::Left : PbAction::Right);
      }
    }
  }
}

unsigned parse_unsigned(std::string_view s) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail(ErrorKind::InvalidArgument, "bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

PebbleMachine build_T_pref() {
  enum : StateId { qs, qp, q0b, q1b, ql, q1, q2, q3, qi, qf, junk, count };
  PebbleMachine m(count, 1);
  m.set_final(qf);
  m.set(qs, Sym::Left, 0, qp, PbAction::Right);
  for (int b = 0; b < 2; ++b) {
    const StateId qb = b ? q1b : q0b;
    m.set(qp, kBits[b], 0, qb, PbAction::Right);
    for (int a = 0; a < 2; ++a) {
      if (a == b) m.set(qb, kBits[a], 0, ql, PbAction::Push);
      else m.set(qb, kBits[a], 0, qi, PbAction::Right);
    }
    m.set_all_masks(ql, kBits[b], ql, PbAction::Left);
    m.set(q1, kBits[b], 0, q2, PbAction::Right);
    m.set(q2, kBits[b], 0, q1, PbAction::Right, bit_word(b));
    m.set(q2, kBits[b], 1, q3, PbAction::Pop, bit_word(b));
    m.set(q3, kBits[b], 0, qp, PbAction::Right);
    m.set(qi, kBits[b], 0, qi, PbAction::Right, bit_word(b));
  }
  m.set(ql, Sym::Left, 0, q1, PbAction::Right);
  for (StateId q : {qp, q0b, q1b, qi}) m.set(q, Sym::Right, 0, qf, PbAction::Left);
  route_to_junk(m, junk);
  return m;
}

PebbleMachine build_T_printreverse(unsigned k) {
  require(k >= 3 && k <= 8, "T_printreverse needs 3 <= k <= 8");
  const StateId regs = 1u << (2 * k);
  const std::uint32_t full = regs - 1;  // register value of 1^{2k}
  const StateId q0 = 0;
  const StateId i_base = 1;
  const StateId q1 = i_base + regs;
  const StateId qp = q1 + 1;
  const StateId r_base = qp + 1;
  const StateId qf = r_base + regs;
  const StateId ql = qf + 1;
  const StateId s_base = ql + 1;
  const StateId qF = s_base + regs;
  const StateId junk = qF + 1;
  PebbleMachine m(junk + 1, 1);
  m.set_final(qF);

  m.set(q0, Sym::Left, 0, i_base, PbAction::Right);
  for (std::uint32_t w = 0; w < regs; ++w) {
    for (int b = 0; b < 2; ++b) {
      const std::uint32_t shifted = ((w << 1) | static_cast<std::uint32_t>(b)) & full;
      const bool flag_end = w == full && b == 0;
      if (flag_end) m.set(i_base + w, kBits[b], 0, q1, PbAction::Right);
      else m.set(i_base + w, kBits[b], 0, i_base + shifted, PbAction::Right, bit_word(b));
      for (std::uint32_t c = 0; c < 2; ++c) {
        if (flag_end) m.set(r_base + w, kBits[b], c, qf, PbAction::Left);
        else m.set(r_base + w, kBits[b], c, r_base + shifted, PbAction::Right, bit_word(b));
      }
      if (flag_end) m.set(s_base + w, kBits[b], 0, q1, PbAction::Right);
      else m.set(s_base + w, kBits[b], 0, s_base + shifted, PbAction::Right);
    }
    m.set(i_base + w, Sym::Right, 0, qF, PbAction::Left);
  }
  m.set(q1, Sym::Zero, 0, qp, PbAction::Right);
  m.set(q1, Sym::One, 0, i_base, PbAction::Right);
  m.set(q1, Sym::Right, 0, qF, PbAction::Left);
  for (int b = 0; b < 2; ++b) {
    m.set(qp, kBits[b], 0, r_base, PbAction::Push);
    m.set(ql, kBits[b], 0, ql, PbAction::Left, bit_word(b));
    m.set(ql, kBits[b], 1, s_base, PbAction::Pop, bit_word(b));
  }
  m.set(qf, Sym::One, 0, qf, PbAction::Left);
  m.set(qf, Sym::Zero, 0, ql, PbAction::Left, bit_word(0));
  route_to_junk(m, junk);
  return m;
}

PdcMachine build_Cprime(std::size_t m, unsigned k, unsigned v) {
  require(k >= 1, "C' needs k >= 1");
  require(v >= 1, "C' needs v >= 1");
  // s_0..s_m, q0, f1_1..f1_k, f0_1..f0_k, F_0..F_k, c_1..c_{v+1}, q_e
  const auto s = [](std::size_t i) { return static_cast<StateId>(i); };
  const StateId q0 = s(m + 1);
  const auto f1 = [&](unsigned i) { return q0 + i; };
  const auto f0 = [&](unsigned i) { return q0 + k + i; };
  const auto big_f = [&](unsigned i) { return q0 + 2 * k + 1 + i; };
  const auto c = [&](unsigned i) { return q0 + 3 * k + 1 + i; };
  const StateId qe = c(v + 1) + 1;
  PdcMachine pdc(qe + 1, k + 2);

  const PdInput in[2] = {PdInput::Zero, PdInput::One};
  const StackSym st[2] = {StackSym::Zero, StackSym::One};
  const StackSym tops[3] = {StackSym::Zero, StackSym::One, StackSym::Bottom};

  for (std::size_t i = 0; i < m; ++i) {
    for (int x = 0; x < 2; ++x) pdc.set_keep(s(i), in[x], s(i + 1), {}, bit_word(x));
  }
  pdc.set_keep(s(m), PdInput::Lambda, q0);

  // read one bit of a k-group, push it and copy it
  const auto group_step = [&](StateId from, StackSym y, int x, StateId to) {
    pdc.set(from, in[x], y, to, {st[x], y}, bit_word(x));
  };
  for (auto y : tops) {
    for (int x = 0; x < 2; ++x) {
      group_step(q0, y, x, x ? f1(1) : f0(1));
      for (unsigned i = 1; i < k; ++i) {
        group_step(f0(i), y, x, f0(i + 1));
        group_step(f1(i), y, x, x ? f1(i + 1) : f0(i + 1));
      }
    }
  }
  pdc.set_keep(f0(k), PdInput::Lambda, q0);
  pdc.set_keep(f1(k), PdInput::Lambda, big_f(0));
  for (unsigned i = 0; i < k; ++i) {
    for (int y = 0; y < 2; ++y) pdc.set(big_f(i), PdInput::Lambda, st[y], big_f(i + 1), {});
  }
  pdc.set_keep(big_f(k), PdInput::Lambda, c(1));

  for (unsigned i = 1; i <= v; ++i) {
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        if (x == y) {
          pdc.set(c(i), in[x], st[y], c(i + 1), {}, i == v ? bit_word(0) : BitWord{});
        } else {
          BitWord flag(3 * m + i, 1);
          flag.push_back(0);
          flag.push_back(static_cast<std::uint8_t>(x));
          pdc.set(c(i), in[x], st[y], qe, {st[y]}, flag);
        }
      }
      group_step(c(i), StackSym::Bottom, x, x ? f1(1) : f0(1));
    }
  }
  pdc.set_keep(c(v + 1), PdInput::Lambda, c(1));
  for (int x = 0; x < 2; ++x) pdc.set_keep(qe, in[x], qe, {}, bit_word(x));
  return pdc;
}

PebbleMachine build_T_powprint() {
  enum : StateId {
    qs, qa, qd, qis, qs0, qs1, qp, qp0, qp1, qr, qr0, qr1, ql, ql0, ql1, qim1, qi, qi0, qi1, qf, qf2, junk, count
  };
  PebbleMachine m(count, 1);
  m.set_final(qa);
  const StateId qs_b[2] = {qs0, qs1};
  const StateId qp_b[2] = {qp0, qp1};
  const StateId qr_b[2] = {qr0, qr1};
  const StateId ql_b[2] = {ql0, ql1};
  const StateId qi_b[2] = {qi0, qi1};

  m.set(qs, Sym::Left, 0, qis, PbAction::Right);
  m.set_all_masks(qis, Sym::Left, qd, PbAction::Right);
  m.set_all_masks(qis, Sym::Right, qd, PbAction::Left);
  m.set_all_masks(qp, Sym::Right, qa, PbAction::Left);
  m.set(qr, Sym::Right, 0, qd, PbAction::Left);
  m.set_all_masks(qi, Sym::Right, qd, PbAction::Left);
  m.set_all_masks(qf, Sym::Left, qd, PbAction::Right);
  for (int b = 0; b < 2; ++b) {
    m.set_all_masks(qis, kBits[b], qs_b[b], PbAction::Right);
    m.set_all_masks(qs_b[b], Sym::Right, qd, PbAction::Left);
    m.set_all_masks(qp, kBits[b], qp_b[b], PbAction::Right);
    m.set_all_masks(qp_b[b], Sym::Right, qa, PbAction::Left);
    m.set(qr, kBits[b], 0, qr_b[b], PbAction::Right);
    m.set(qr_b[b], Sym::Right, 0, qd, PbAction::Left);
    m.set_all_masks(ql, kBits[b], ql_b[b], PbAction::Left);
    m.set_all_masks(ql_b[b], Sym::Left, qd, PbAction::Right);
    m.set_all_masks(qim1, kBits[b], qi, PbAction::Right);
    m.set_all_masks(qi, kBits[b], qi_b[b], PbAction::Right);
    m.set_all_masks(qi_b[b], Sym::Right, qd, PbAction::Left);
    m.set(qf, kBits[b], 0, qf, PbAction::Left);
    m.set(qf, kBits[b], 1, qf2, PbAction::Pop);
    m.set_all_masks(qf2, kBits[b], qr, PbAction::Right);
    for (int b2 = 0; b2 < 2; ++b2) {
      const bool same = b == b2;
      m.set_all_masks(qs_b[b], kBits[b2], same ? qd : (b == 0 ? qp : qr), same ? PbAction::Left : PbAction::Right);
      m.set_all_masks(qp_b[b], kBits[b2], b == 0 || same ? qp : qr, PbAction::Right, same ? bit_word(b) : BitWord{});
      if (same) m.set(qr_b[b], kBits[b2], 0, ql, PbAction::Push);
      else m.set(qr_b[b], kBits[b2], 0, b == 1 ? qr : qp, PbAction::Right);
      // q_l^b reads b' to the left of b
      if (same) m.set_all_masks(ql_b[b], kBits[b2], ql, PbAction::Left);
      else if (b2 == 1) m.set_all_masks(ql_b[b], kBits[b2], qim1, PbAction::Right);
      else m.set_all_masks(ql_b[b], kBits[b2], qd, PbAction::Right);
      if (same) m.set_all_masks(qi_b[b], kBits[b2], qi, PbAction::Right, bit_word(b));
      else m.set_all_masks(qi_b[b], kBits[b2], qf, PbAction::Left);
    }
  }
  for (auto sym : {Sym::Zero, Sym::One, Sym::Left}) m.set_all_masks(qd, sym, qd, PbAction::Right);
  m.set_all_masks(qd, Sym::Right, qd, PbAction::Left);
  route_to_junk(m, junk);
  return m;
}

AnyMachine build_named(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "tpref") return build_T_pref();
  if (head == "tpowprint") return build_T_powprint();
  if (head == "tprintreverse") return build_T_printreverse(parse_unsigned(args));
  if (head == "identity") return FstMachine::identity();
  if (head == "doubler") return FstMachine::doubler();
  if (head == "zerodoubler") return zero_doubler_fst();
  if (head == "cprime") {
    std::vector<unsigned> v;
    std::size_t from = 0;
    while (from <= args.size()) {
      const auto comma = args.find(',', from);
      const auto end = comma == std::string::npos ? args.size() : comma;
      v.push_back(parse_unsigned(std::string_view(args).substr(from, end - from)));
      from = end + 1;
    }
    require(v.size() == 3, "cprime needs m,k,v");
    return build_Cprime(v[0], v[1], v[2]);
  }
  fail(ErrorKind::InvalidArgument, "unknown machine '" + name + "'");
}

// ---------------------------------------------------------------------------

Witness witness_pref(const BitWord& x, const BitWord& z) {
  Witness w;
  w.input = doubled(x) + BitWord::parse("01") + z;
  w.expected = pref(x) + z;
  w.machine = "tpref";
  return w;
}

Witness witness_pref_sequence(const BitSource& base, std::size_t p) {
  std::size_t j = 0;
  while ((j + 1) * (j + 2) / 2 <= p) ++j;
  return witness_pref(base.prefix(j), base.prefix(p - j * (j + 1) / 2));
}

const std::vector<PbPoolEntry>& default_pb_pool() {
  static const PebbleMachine identity = pb_identity();
  static const PebbleMachine tpref = build_T_pref();
  static const std::vector<PbPoolEntry> pool = [] {
    std::vector<PbPoolEntry> p;
    p.push_back({"identity", &identity, pb_sigma_size(identity),
                 [](const BitWord& t) { return std::optional<BitWord>(t); }});
    PbPoolEntry e{"tpref", &tpref, pb_sigma_size(tpref), {}};
    // shortest d(u) 01 z with pref(u) z = target
    e.builder = [](const BitWord& t) -> std::optional<BitWord> {
      std::optional<BitWord> best;
      for (std::size_t j = 0; j * (j + 1) / 2 <= t.size(); ++j) {
        const BitWord u = t.substr(j * (j + 1) / 2 - j, j);
        if (!pref(u).is_prefix_of(t)) continue;
        BitWord in = witness_pref(u, t.substr(j * (j + 1) / 2, t.size())).input;
        if (!best || in.size() < best->size()) best = std::move(in);
      }
      return best;
    };
    p.push_back(std::move(e));
    return p;
  }();
  return pool;
}

BitWord encode_printreverse(const std::vector<Segment>& segments, unsigned k) {
  const std::size_t flag = 2 * static_cast<std::size_t>(k);
  BitWord in;
  bool checking = false;  // in q_1 right after "1^{2k} 0"
  std::size_t run = 0;    // trailing ones printed since the register was cleared
  const auto literal = [&](const BitWord& body) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (checking) {
        in.push_back(1);
        checking = false;
        run = 0;
      }
      const auto b = body[i];
      if (b == 0 && run >= flag) {
        in.push_back(0);
        in.push_back(1);
        run = 0;
      }
      in.push_back(b);
      run = b ? run + 1 : 0;
    }
  };
  for (const auto& seg : segments) {
    if (seg.kind != Segment::Kind::Reverse) {
      literal(seg.expand());
      continue;
    }
    const auto& x = seg.body;
    const bool fits = x.size() >= 2 && x.back() == 0 && !contains_run_of_ones(x, flag) && seg.flag >= flag;
    if (!fits || !(checking || run >= flag)) {
      literal(seg.expand());
      continue;
    }
    if (!checking) in.push_back(0);
    in.push_back(0);
    in.append(x);
    in.append_repeated(1, seg.flag);
    in.push_back(0);
    checking = true;
  }
  return in;
}

BitWord encode_powprint(const std::vector<Segment>& segments) {
  BitWord in;
  bool last_square = true;
  for (const auto& seg : segments) {
    last_square = seg.kind == Segment::Kind::Square;
    in.append(BitWord::parse(last_square ? "10" : "01"));
    in.append(doubled(last_square ? seg.body : seg.expand()));
  }
  if (last_square) in.append(BitWord::parse("01"));
  return in;
}

Witness witness_thm4(const Thm4Sequence& seq, std::size_t p) {
  Witness w;
  w.input = encode_printreverse(seq.segments(p), seq.params().k);
  w.expected = seq.prefix(p);
  w.machine = "tprintreverse:" + std::to_string(seq.params().k);
  return w;
}

Witness witness_remark1(const Remark1Sequence& seq, std::size_t p) {
  Witness w;
  w.input = encode_powprint(seq.segments(p));
  w.expected = seq.prefix(p);
  w.machine = "tpowprint";
  return w;
}

}  // namespace pdepth
