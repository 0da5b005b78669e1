#include "pdepth/sequences.hpp"

#include <optional>
#include <random>
#include <sstream>

#include "pdepth/errors.hpp"
#include "pdepth/lz78.hpp"

namespace pdepth {

namespace {

void t_set_fill(std::vector<BitWord>& out, BitWord& cur, unsigned n, unsigned k, unsigned run) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  cur.push_back(0);
  t_set_fill(out, cur, n, k, 0);
  cur.pop_back();
  if (run + 1 < k) {
    cur.push_back(1);
    t_set_fill(out, cur, n, k, run + 1);
    cur.pop_back();
  }
}

BitWord concat(const std::vector<BitWord>& words) {
  BitWord out;
  for (const auto& w : words) out.append(w);
  return out;
}

BitWord ones(std::size_t n) { return BitWord(n, 1); }

}  // namespace

std::vector<BitWord> t_set(unsigned n, unsigned k) {
  require(n <= 26, "t_set materializes words of length at most 26");
  require(k >= 1, "forbidden run length must be positive");
  std::vector<BitWord> out;
  BitWord cur;
  t_set_fill(out, cur, n, k, 0);
  return out;
}

std::size_t Segment::length() const {
  switch (kind) {
    case Kind::Literal: return body.size();
    case Kind::Reverse: return 2 * body.size() + flag;
    case Kind::Square: return body.size() * body.size();
  }
  return 0;
}

BitWord Segment::expand() const {
  switch (kind) {
    case Kind::Literal: return body;
    case Kind::Reverse: {
      BitWord out = body;
      out.append_repeated(1, flag);
      out.append(reversed(body));
      return out;
    }
    case Kind::Square: return repeat(body, body.size());
  }
  return {};
}

// ---------------------------------------------------------------------------

std::vector<Segment> Thm4Block::segments() const {
  using K = Segment::Kind;
  std::vector<Segment> out;
  if (extra_flags || zones.empty()) {
    out.push_back({K::Literal, extra_flags ? BitWord{} : concat(words), 0});
    if (extra_flags) {
      // 1^k 1^{k+1} ... 1^{2k-1}, stored as one run of ones
      out.back().body = ones(length);
    }
    return out;
  }
  BitWord head = concat(words);
  head.append_repeated(1, f);
  out.push_back({K::Literal, std::move(head), 0});
  for (std::size_t i = 0; i < zones.size(); ++i) {
    const std::size_t flag = f + i + 1;
    if (zones[i].xs.empty()) {
      out.push_back({K::Literal, ones(flag), 0});
    } else {
      out.push_back({K::Reverse, concat(zones[i].xs), flag});
    }
  }
  return out;
}

Thm4Sequence::Thm4Sequence(Thm4Params params) : params_(params) {
  require(params_.k > 2, "thm4 sequence needs k > 2");
  require(params_.v >= 1, "thm4 sequence needs v >= 1");
}

std::string Thm4Sequence::label() const {
  return "thm4(k=" + std::to_string(params_.k) + ",v=" + std::to_string(params_.v) + ")";
}

std::size_t Thm4Sequence::flag_length(unsigned n) const {
  require(n >= params_.k, "f(n) is defined for n >= k");
  return 2 * params_.k + static_cast<std::size_t>(n - params_.k) * (params_.v + 2);
}

std::size_t Thm4Sequence::block_index(unsigned n) const {
  require(n >= 1, "blocks start at S_1");
  return n < params_.k ? n - 1 : n;
}

const Thm4Block& Thm4Sequence::block(std::size_t index) const {
  std::lock_guard lock(memo_mutex_);
  while (blocks_.size() <= index) blocks_.push_back(std::make_unique<Thm4Block>(make_block(blocks_.size())));
  return *blocks_[index];
}

Thm4Block Thm4Sequence::make_block(std::size_t index) const {
  const unsigned k = params_.k;
  const unsigned v = params_.v;
  Thm4Block b;
  if (index + 1 < k) {
    b.n = static_cast<unsigned>(index + 1);
    for (std::uint32_t code = 0; code < (1u << b.n); ++code) {
      BitWord w;
      for (unsigned i = b.n; i-- > 0;) w.push_back(static_cast<std::uint8_t>((code >> i) & 1u));
      b.words.push_back(std::move(w));
    }
    b.length = static_cast<std::size_t>(b.n) << b.n;
    return b;
  }
  if (index + 1 == k) {
    b.extra_flags = true;
    for (unsigned j = k; j < 2 * k; ++j) b.length += j;
    return b;
  }
  b.n = static_cast<unsigned>(index);
  const unsigned n = b.n;
  b.f = flag_length(n);

  // Pairs {w, w^-1} keyed by the smaller word: type 0 = 0..0, 1 = 0..1, 2 = 1..1.
  std::vector<BitWord> pairs;
  std::vector<int> type;
  for (auto& w : t_set(n, k)) {
    if (is_palindrome(w)) {
      b.words.push_back(std::move(w));
      continue;
    }
    BitWord r = reversed(w);
    if (!(w < r)) continue;
    type.push_back(w[0] == 1 ? 2 : (w.back() == 0 ? 0 : 1));
    pairs.push_back(std::move(w));
  }
  const std::size_t total = pairs.size();
  const std::size_t per_zone = total / v;
  std::vector<std::size_t> sizes(v + 1, per_zone);
  sizes[v] = total - per_zone * v;

  std::vector<std::uint8_t> used(total, 0);
  std::size_t cursor[3] = {0, 0, 0};
  auto take = [&](int t) -> std::optional<std::size_t> {
    for (std::size_t& i = cursor[t]; i < total; ++i) {
      if (!used[i] && type[i] == t) {
        used[i] = 1;
        return i++;
      }
    }
    return std::nullopt;
  };
  struct Plan {
    std::optional<BitWord> head, tail;
  };
  std::vector<Plan> plans(v + 1);
  for (std::size_t z = 0; z <= v; ++z) {
    if (sizes[z] == 1) {
      if (auto i = take(0)) plans[z].head = pairs[*i];
    } else if (sizes[z] >= 2) {
      if (auto i = take(1)) plans[z].head = pairs[*i];
      else if (auto j = take(0)) plans[z].head = pairs[*j];
      if (auto i = take(1)) plans[z].tail = reversed(pairs[*i]);
      else if (auto j = take(0)) plans[z].tail = pairs[*j];
    }
  }
  std::size_t rest = 0;
  b.zones.resize(v + 1);
  for (std::size_t z = 0; z <= v; ++z) {
    auto& xs = b.zones[z].xs;
    b.zones[z].flag = b.f + z + 1;
    const std::size_t anchors = (plans[z].head ? 1 : 0) + (plans[z].tail ? 1 : 0);
    if (plans[z].head) xs.push_back(*plans[z].head);
    for (std::size_t filled = anchors; filled < sizes[z]; ++filled) {
      while (used[rest]) ++rest;
      used[rest] = 1;
      xs.push_back(pairs[rest]);
    }
    if (plans[z].tail) xs.push_back(*plans[z].tail);
    if (!xs.empty() && (xs.front()[0] != 0 || xs.back().back() != 0)) ++b.anchor_misses;
  }

  b.length = b.words.size() * n + b.f;
  for (const auto& zone : b.zones) b.length += 2 * n * zone.xs.size() + zone.flag;
  return b;
}

std::size_t Thm4Sequence::length_through(std::size_t index) const {
  std::size_t total = 0;
  for (std::size_t i = 0; i <= index; ++i) total += block(i).length;
  return total;
}

void Thm4Sequence::extend(BitWord& buffer) const {
  const Thm4Block& b = block(emitted_++);
  for (const auto& s : b.segments()) buffer.append(s.expand());
}

namespace {

template <class Next>
std::vector<Segment> cover(std::size_t p, Next&& next_block_segments) {
  std::vector<Segment> out;
  std::size_t covered = 0;
  while (covered < p) {
    for (auto& s : next_block_segments()) {
      if (covered >= p) break;
      const std::size_t len = s.length();
      if (covered + len <= p) {
        covered += len;
        out.push_back(std::move(s));
      } else {
        out.push_back({Segment::Kind::Literal, s.expand().prefix(p - covered), 0});
        covered = p;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Segment> Thm4Sequence::segments(std::size_t p) const {
  std::size_t index = 0;
  return cover(p, [&] { return block(index++).segments(); });
}

std::string Thm4Sequence::meta_csv(std::size_t n) const {
  std::ostringstream os;
  os << "block,stage,kind,offset,length,flag,palindromes,zone_sizes,anchor_misses\n";
  std::size_t offset = 0;
  for (std::size_t i = 0; offset < n; ++i) {
    const auto& b = block(i);
    os << i << ',' << (b.extra_flags ? 0u : b.n) << ',' << (b.extra_flags ? "flags" : b.zones.empty() ? "all" : "zones")
       << ',' << offset << ',' << b.length << ',' << b.f << ',' << (b.zones.empty() ? 0 : b.words.size()) << ',';
    for (std::size_t z = 0; z < b.zones.size(); ++z) os << (z ? ";" : "") << b.zones[z].xs.size();
    os << ',' << b.anchor_misses << '\n';
    offset += b.length;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Remark1Sequence::Remark1Sequence(Remark1Params params) : params_(params) {
  require(params_.k > 8, "remark1 sequence needs k > 8");
  require(params_.samples >= 1, "selector needs at least one sample");
}

std::string Remark1Sequence::label() const {
  return "remark1(k=" + std::to_string(params_.k) + ",v=" + std::to_string(modulus()) +
         ",seed=" + std::to_string(params_.seed) + ")";
}

std::size_t Remark1Sequence::t(std::size_t j) const {
  require(j >= 1, "blocks start at S_1");
  std::size_t p = 1;
  while (p < j) p *= params_.k;
  return p;
}

BitWord Remark1Sequence::select(std::size_t j) const {
  const std::size_t len = params_.k * t(j);
  std::seed_seq seq{params_.seed, static_cast<std::uint64_t>(j)};
  std::mt19937_64 rng(seq);
  auto draw = [&] {
    while (true) {
      BitWord w;
      w.reserve(len);
      std::uint64_t bits = 0;
      for (std::size_t i = 0; i < len; ++i) {
        if (i % 64 == 0) bits = rng();
        w.push_back(static_cast<std::uint8_t>((bits >> (i % 64)) & 1u));
      }
      // R R must avoid 1^k too, so no aligned group of R^|R| reads as a flag
      if (!contains_run_of_ones(w + w, params_.k)) return w;
    }
  };
  BitWord best = draw();
  if (params_.selector == Remark1Selector::FixedSeed) return best;
  std::size_t best_len = lz78_plain_len(best);
  for (unsigned s = 1; s < params_.samples; ++s) {
    BitWord w = draw();
    const std::size_t len_w = lz78_plain_len(w);
    if (len_w > best_len) {
      best = std::move(w);
      best_len = len_w;
    }
  }
  return best;
}

const BitWord& Remark1Sequence::r(std::size_t j) const {
  std::lock_guard lock(memo_mutex_);
  auto it = rs_.find(j);
  if (it == rs_.end()) it = rs_.emplace(j, select(j)).first;
  return it->second;
}

std::size_t Remark1Sequence::block_length(std::size_t j) const {
  const std::size_t len = params_.k * t(j);
  return 2 * len * len + params_.k;
}

std::size_t Remark1Sequence::length_through(std::size_t j) const {
  std::size_t total = 0;
  for (std::size_t i = 1; i <= j; ++i) total += block_length(i);
  return total;
}

std::size_t Remark1Sequence::threshold() const {
  for (std::size_t j = 1; j <= 256; ++j) {
    if ((params_.k * t(j)) % modulus() == 0) return j;
  }
  fail(ErrorKind::InvalidArgument, "v = " + std::to_string(modulus()) + " never divides |R_j| for k = " + std::to_string(params_.k));
}

std::size_t Remark1Sequence::counting_prefix() const { return length_through(threshold() - 1); }

void Remark1Sequence::extend(BitWord& buffer) const {
  const std::size_t j = ++emitted_;
  const BitWord& rj = r(j);
  buffer.append(repeat(rj, rj.size()));
  buffer.append_repeated(1, params_.k);
  buffer.append(repeat(reversed(rj), rj.size()));
}

std::vector<Segment> Remark1Sequence::segments(std::size_t p) const {
  using K = Segment::Kind;
  std::vector<Segment> out;
  std::size_t covered = 0;
  for (std::size_t j = 1; covered < p; ++j) {
    const BitWord& rj = r(j);
    const std::size_t len = block_length(j);
    if (covered + len <= p) {
      out.push_back({K::Square, rj, 0});
      out.push_back({K::Literal, ones(params_.k), 0});
      out.push_back({K::Square, reversed(rj), 0});
      covered += len;
      continue;
    }
    const std::size_t need = p - covered;
    BitWord block = repeat(rj, rj.size());
    block.append_repeated(1, params_.k);
    block.append(repeat(reversed(rj), rj.size()));
    const std::size_t square = rj.size() * rj.size();
    if (need >= square) {
      out.push_back({K::Square, rj, 0});
      if (need > square) out.push_back({K::Literal, block.substr(square, need - square), 0});
    } else {
      out.push_back({K::Literal, block.prefix(need), 0});
    }
    covered = p;
  }
  return out;
}

std::string Remark1Sequence::meta_csv(std::size_t n) const {
  std::ostringstream os;
  os << "block,t,r_length,offset,length,r\n";
  std::size_t offset = 0;
  for (std::size_t j = 1; offset < n; ++j) {
    os << j << ',' << t(j) << ',' << r(j).size() << ',' << offset << ',' << block_length(j) << ',' << r(j).to_string()
       << '\n';
    offset += block_length(j);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

PrefSequence::PrefSequence(std::shared_ptr<const BitSource> base) : base_(std::move(base)) {
  require(base_ != nullptr, "pref sequence needs a base source");
}

std::string PrefSequence::label() const { return "pref(" + base_->label() + ")"; }

void PrefSequence::extend(BitWord& buffer) const {
  buffer.append(base_->prefix(next_));
  ++next_;
}

std::shared_ptr<BitSource> pref_sequence(std::shared_ptr<const BitSource> base) {
  return std::make_shared<PrefSequence>(std::move(base));
}

}  // namespace pdepth
