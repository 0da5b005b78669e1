#include "pdepth/complexity.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "pdepth/errors.hpp"
#include "pdepth/machine_text.hpp"

namespace pdepth {

namespace {

unsigned state_bits(std::size_t states) {
  return states <= 1 ? 0u : static_cast<unsigned>(std::bit_width(states - 1));
}

void put_unary(BitWord& out, std::size_t n) {
  out.append_repeated(1, n);
  out.push_back(0);
}

void put_number(BitWord& out, std::size_t value, unsigned bits) {
  for (unsigned i = bits; i-- > 0;) out.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
}

void put_word(BitWord& out, const BitWord& w) {
  put_unary(out, w.size());
  out.append(w);
}

struct Reader {
  const BitWord& code;
  std::size_t pos = 0;

  bool done() const { return pos == code.size(); }
  std::optional<std::size_t> unary() {
    std::size_t n = 0;
    while (pos < code.size() && code[pos] == 1) {
      ++n;
      ++pos;
    }
    if (pos == code.size()) return std::nullopt;
    ++pos;
    return n;
  }
  std::optional<std::size_t> number(unsigned bits) {
    if (code.size() - pos < bits) return std::nullopt;
    std::size_t v = 0;
    for (unsigned i = 0; i < bits; ++i) v = (v << 1) | code[pos++];
    return v;
  }
  std::optional<BitWord> word() {
    auto n = unary();
    if (!n || code.size() - pos < *n) return std::nullopt;
    BitWord w = code.substr(pos, *n);
    pos += *n;
    return w;
  }
};

// Permutations of 1..n-1 with 0 fixed.
template <class Visit>
void for_each_relabeling(std::size_t n, Visit&& visit) {
  std::vector<StateId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    visit(perm);
  } while (n > 1 && std::next_permutation(perm.begin() + 1, perm.end()));
}

FstMachine relabel(const FstMachine& m, const std::vector<StateId>& perm) {
  FstMachine out(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::uint8_t b = 0; b <= 1; ++b) out.set(perm[q], b, perm[m.next(q, b)], m.output(q, b));
  }
  return out;
}

PebbleMachine relabel(const PebbleMachine& m, const std::vector<StateId>& perm) {
  PebbleMachine out(m.num_states(), m.pebbles());
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (m.is_final(q)) out.set_final(perm[q]);
  }
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::uint32_t s = 0; s < 4; ++s) {
      for (std::uint32_t mask = 0; mask < (1u << m.pebbles()); ++mask) {
        const auto& t = m.at(q, static_cast<Sym>(s), mask);
        if (t.defined) out.set(perm[q], static_cast<Sym>(s), mask, perm[t.next], t.action, m.output_of(t));
      }
    }
  }
  return out;
}

}  // namespace

BitWord fst_encode(const FstMachine& m) {
  BitWord out;
  put_unary(out, m.num_states());
  const unsigned bits = state_bits(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::uint8_t b = 0; b <= 1; ++b) {
      put_number(out, m.next(q, b), bits);
      put_word(out, m.output(q, b));
    }
  }
  return out;
}

std::optional<FstMachine> fst_decode(const BitWord& code) {
  Reader r{code};
  auto n = r.unary();
  if (!n || *n == 0) return std::nullopt;
  FstMachine m(*n);
  const unsigned bits = state_bits(*n);
  for (StateId q = 0; q < *n; ++q) {
    for (std::uint8_t b = 0; b <= 1; ++b) {
      auto next = r.number(bits);
      if (!next || *next >= *n) return std::nullopt;
      auto w = r.word();
      if (!w) return std::nullopt;
      m.set(q, b, static_cast<StateId>(*next), std::move(*w));
    }
  }
  if (!r.done()) return std::nullopt;
  return m;
}

std::size_t fst_sigma_size(const FstMachine& m) { return fst_encode(m).size(); }

FstMachine fst_canonical(const FstMachine& m) {
  std::optional<FstMachine> best;
  BitWord best_code;
  for_each_relabeling(m.num_states(), [&](const std::vector<StateId>& perm) {
    FstMachine r = relabel(m, perm);
    BitWord code = fst_encode(r);
    if (!best || code < best_code) {
      best = std::move(r);
      best_code = std::move(code);
    }
  });
  return *best;
}

BitWord pb_encode(const PebbleMachine& m) {
  BitWord out;
  put_unary(out, m.num_states());
  put_unary(out, m.pebbles());
  for (StateId q = 0; q < m.num_states(); ++q) out.push_back(m.is_final(q) ? 1 : 0);
  const unsigned bits = state_bits(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (m.is_final(q)) continue;
    for (std::uint32_t s = 0; s < 4; ++s) {
      for (std::uint32_t mask = 0; mask < (1u << m.pebbles()); ++mask) {
        const auto& t = m.at(q, static_cast<Sym>(s), mask);
        out.push_back(t.defined ? 1 : 0);
        if (!t.defined) continue;
        put_number(out, t.next, bits);
        put_number(out, static_cast<std::size_t>(t.action), 2);
        put_word(out, m.output_of(t));
      }
    }
  }
  return out;
}

std::optional<PebbleMachine> pb_decode(const BitWord& code) {
  Reader r{code};
  auto n = r.unary();
  if (!n || *n == 0) return std::nullopt;
  auto k = r.unary();
  if (!k || *k > PebbleMachine::kMaxPebbles) return std::nullopt;
  auto finals = r.number(static_cast<unsigned>(*n));
  if (!finals) return std::nullopt;
  PebbleMachine m(*n, static_cast<unsigned>(*k));
  for (StateId q = 0; q < *n; ++q) {
    if ((*finals >> (*n - 1 - q)) & 1u) m.set_final(q);
  }
  const unsigned bits = state_bits(*n);
  for (StateId q = 0; q < *n; ++q) {
    if (m.is_final(q)) continue;
    for (std::uint32_t s = 0; s < 4; ++s) {
      for (std::uint32_t mask = 0; mask < (1u << *k); ++mask) {
        auto defined = r.number(1);
        if (!defined) return std::nullopt;
        if (*defined == 0) continue;
        auto next = r.number(bits);
        if (!next || *next >= *n) return std::nullopt;
        auto act = r.number(2);
        auto w = r.word();
        if (!act || !w) return std::nullopt;
        m.set(q, static_cast<Sym>(s), mask, static_cast<StateId>(*next), static_cast<PbAction>(*act), *w);
      }
    }
  }
  if (!r.done()) return std::nullopt;
  return m;
}

std::size_t pb_sigma_size(const PebbleMachine& m) { return pb_encode(m).size(); }

PebbleMachine pb_canonical(const PebbleMachine& m) {
  std::optional<PebbleMachine> best;
  BitWord best_code;
  for_each_relabeling(m.num_states(), [&](const std::vector<StateId>& perm) {
    PebbleMachine r = relabel(m, perm);
    BitWord code = pb_encode(r);
    if (!best || code < best_code) {
      best = std::move(r);
      best_code = std::move(code);
    }
  });
  return *best;
}

namespace {

bool code_less(const BitWord& a, const BitWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Fills every output slot with words whose total length is at most budget.
void fill_outputs(FstMachine& m, std::size_t slot, std::size_t budget, const std::function<void()>& done) {
  if (slot == 2 * m.num_states()) {
    done();
    return;
  }
  const auto q = static_cast<StateId>(slot / 2);
  const auto b = static_cast<std::uint8_t>(slot % 2);
  const StateId next = m.next(q, b);
  for (std::size_t len = 0; len <= budget; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      BitWord w;
      for (std::size_t i = len; i-- > 0;) w.push_back(static_cast<std::uint8_t>((v >> i) & 1u));
      m.set(q, b, next, std::move(w));
      fill_outputs(m, slot + 1, budget - len, done);
    }
  }
}

std::vector<EnumeratedFst> build_fst_enumeration(unsigned k) {
  std::vector<EnumeratedFst> out;
  for (std::size_t n = 1;; ++n) {
    const unsigned bits = state_bits(n);
    const std::size_t base = (n + 1) + 2 * n * (bits + 1);
    if (base > k) break;
    const std::size_t budget = (k - base) / 2;
    std::vector<StateId> nexts(2 * n, 0);
    while (true) {
      FstMachine m(n);
      for (std::size_t slot = 0; slot < 2 * n; ++slot) {
        m.set(static_cast<StateId>(slot / 2), static_cast<std::uint8_t>(slot % 2), nexts[slot], {});
      }
      fill_outputs(m, 0, budget, [&] {
        BitWord code = fst_encode(m);
        if (code.size() > k) return;
        if (fst_encode(fst_canonical(m)) != code) return;
        out.push_back({m, std::move(code)});
      });
      std::size_t i = 0;
      while (i < nexts.size() && ++nexts[i] == n) nexts[i++] = 0;
      if (i == nexts.size()) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return code_less(a.code, b.code); });
  return out;
}

}  // namespace

const std::vector<EnumeratedFst>& enumerate_fst(unsigned k) {
  require(k <= kMaxFstEnumeration, "FST enumeration bound must be at most 24");
  static std::mutex mutex;
  static std::map<unsigned, std::vector<EnumeratedFst>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, build_fst_enumeration(k)).first;
  return it->second;
}

std::vector<EnumeratedPb> enumerate_pb(unsigned k) {
  require(k <= kMaxPbEnumeration, "PB enumeration bound must be at most 18");
  std::vector<EnumeratedPb> out;
  for (unsigned len = 1; len <= k; ++len) {
    for (std::uint32_t v = 0; v < (1u << len); ++v) {
      BitWord code;
      for (unsigned i = len; i-- > 0;) code.push_back(static_cast<std::uint8_t>((v >> i) & 1u));
      auto m = pb_decode(code);
      if (!m) continue;
      if (pb_encode(pb_canonical(*m)) != code) continue;
      out.push_back({std::move(*m), std::move(code)});
    }
  }
  return out;
}

std::string code_to_hex(const BitWord& code) {
  static const char digits[] = "0123456789abcdef";
  std::string hex;
  for (std::size_t i = 0; i < code.size(); i += 4) {
    unsigned nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) nibble = (nibble << 1) | (i + j < code.size() ? code[i + j] : 0u);
    hex.push_back(digits[nibble]);
  }
  return std::to_string(code.size()) + ":" + hex;
}

BitWord code_from_hex(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorKind::Parse, "expected len:hex");
  std::size_t len = 0;
  try {
    len = std::stoul(text.substr(0, colon));
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "bad length in '" + text + "'");
  }
  const std::string hex = text.substr(colon + 1);
  if (hex.size() != (len + 3) / 4) fail(ErrorKind::Parse, "hex digits do not match the length");
  BitWord code;
  for (char c : hex) {
    unsigned v;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
    else fail(ErrorKind::Parse, "bad hex digit");
    for (int j = 3; j >= 0; --j) code.push_back(static_cast<std::uint8_t>((v >> j) & 1u));
  }
  code.truncate(len);
  return code;
}

std::optional<BitWord> fst_shortest_preimage(const FstMachine& m, const BitWord& x) {
  // BFS over (state, matched output length); any node at |x| is a witness.
  const std::size_t width = x.size() + 1;
  const std::size_t nodes = m.num_states() * width;
  std::vector<std::int64_t> parent(nodes, -1);
  std::vector<std::uint8_t> via(nodes, 0);
  std::vector<std::uint8_t> seen(nodes, 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t node = queue[head];
    const auto q = static_cast<StateId>(node / width);
    const std::size_t pos = node % width;
    if (pos == x.size()) {
      BitWord y;
      for (std::size_t cur = node; parent[cur] >= 0; cur = static_cast<std::size_t>(parent[cur])) y.push_back(via[cur]);
      return reversed(y);
    }
    for (std::uint8_t b = 0; b <= 1; ++b) {
      const BitWord& w = m.output(q, b);
      if (!w.occurs_at(x, pos)) continue;
      const std::size_t next = m.next(q, b) * width + pos + w.size();
      if (seen[next]) continue;
      seen[next] = 1;
      parent[next] = static_cast<std::int64_t>(node);
      via[next] = b;
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

ComplexityResult dk_fst(const BitWord& x, unsigned k) {
  ComplexityResult result;
  result.exact = true;
  for (const auto& entry : enumerate_fst(k)) {
    auto y = fst_shortest_preimage(entry.machine, x);
    if (!y) continue;
    if (!result.value || y->size() < *result.value) {
      result.value = y->size();
      result.input = std::move(*y);
      result.machine = to_text(entry.machine);
      result.label = code_to_hex(entry.code);
      if (*result.value == 0) break;
    }
  }
  return result;
}

ComplexityResult dk_fst_bruteforce(const BitWord& x, unsigned k) {
  require(k <= 20, "brute-force D^k needs k <= 20");
  ComplexityResult result;
  result.exact = true;
  BitWord y;
  for (unsigned len = 0; len <= k; ++len) {
    for (std::uint32_t v = 0; v < (1u << len); ++v) {
      BitWord code;
      for (unsigned i = len; i-- > 0;) code.push_back(static_cast<std::uint8_t>((v >> i) & 1u));
      const auto m = fst_decode(code);
      if (!m) continue;
      const std::size_t bound = m->num_states() * (x.size() + 1);
      // every input up to the bound whose output stays a prefix of x
      std::function<void(StateId, std::size_t)> walk = [&](StateId q, std::size_t produced) {
        if (result.value && y.size() >= *result.value) return;
        if (produced == x.size()) {
          result.value = y.size();
          result.input = y;
          result.machine = to_text(*m);
          result.label = code_to_hex(code);
          return;
        }
        if (y.size() == bound) return;
        for (std::uint8_t b = 0; b < 2; ++b) {
          const BitWord& out = m->output(q, b);
          if (!out.occurs_at(x, produced)) continue;
          y.push_back(b);
          walk(m->next(q, b), produced + out.size());
          y.pop_back();
        }
      };
      walk(0, 0);
    }
  }
  return result;
}

ComplexityResult dk_pb_upper(const BitWord& x, const std::vector<PbPoolEntry>& pool, unsigned cap,
                             std::uint64_t step_budget) {
  require(cap <= 24, "witness cap must be at most 24");
  ComplexityResult result;
  PbRunOptions options;
  options.step_budget = step_budget;
  auto offer = [&](const PbPoolEntry& entry, const BitWord& y) {
    if (result.value && y.size() >= *result.value) return;
    result.value = y.size();
    result.input = y;
    result.label = entry.label;
    result.machine = to_text(*entry.machine);
  };
  for (const auto& entry : pool) {
    if (entry.builder) {
      if (auto y = entry.builder(x)) {
        auto r = pb_execute(*entry.machine, *y, options);
        if (r.status == PbStatus::Halted && r.output == x) offer(entry, *y);
      }
    }
    const unsigned limit = result.value ? std::min<unsigned>(cap, static_cast<unsigned>(*result.value)) : cap;
    bool found = false;
    for (unsigned len = 0; len <= limit && !found; ++len) {
      for (std::uint32_t v = 0; v < (1u << len); ++v) {
        BitWord y;
        for (unsigned i = len; i-- > 0;) y.push_back(static_cast<std::uint8_t>((v >> i) & 1u));
        auto r = pb_execute(*entry.machine, y, options);
        if (r.status == PbStatus::Halted && r.output == x) {
          offer(entry, y);
          found = true;
          break;
        }
      }
    }
  }
  return result;
}

std::pair<double, double> density_curves(const std::vector<double>& ratios, std::size_t tail) {
  require(ratios.size() >= 2, "density curves need at least two sample points");
  require(tail >= 1, "tail window must be positive");
  const std::size_t from = ratios.size() > tail ? ratios.size() - tail : 0;
  const auto [lo, hi] = std::minmax_element(ratios.begin() + static_cast<std::ptrdiff_t>(from), ratios.end());
  return {*lo, *hi};
}

}  // namespace pdepth
