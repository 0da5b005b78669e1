#include "pdepth/words.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "pdepth/errors.hpp"

namespace pdepth {

BitWord::BitWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

BitWord BitWord::parse(std::string_view text) {
  BitWord out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
      continue;
    } else {
      fail(ErrorKind::Parse, std::string("not a binary digit: '") + c + "'");
    }
  }
  return out;
}

void BitWord::append(const BitWord& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitWord::append_repeated(std::uint8_t bit, std::size_t count) {
  bits_.insert(bits_.end(), count, bit ? 1 : 0);
}

BitWord BitWord::substr(std::size_t from, std::size_t count) const {
  BitWord out;
  if (from >= bits_.size()) return out;
  const std::size_t end = from + std::min(count, bits_.size() - from);
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(from),
                   bits_.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

bool BitWord::is_prefix_of(const BitWord& other) const noexcept { return occurs_at(other, 0); }

bool BitWord::occurs_at(const BitWord& other, std::size_t offset) const noexcept {
  if (offset > other.size() || other.size() - offset < size()) return false;
  return std::equal(bits_.begin(), bits_.end(),
                    other.bits_.begin() + static_cast<std::ptrdiff_t>(offset));
}

std::string BitWord::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

std::size_t BitWordHash::operator()(const BitWord& w) const noexcept {
  // FNV-1a over bits plus length.
  std::uint64_t h = 1469598103934665603ull ^ w.size();
  for (auto b : w.bits()) {
    h ^= b + 1u;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

BitWord doubled(const BitWord& x) {
  std::vector<std::uint8_t> out;
  out.reserve(2 * x.size());
  for (auto b : x.bits()) {
    out.push_back(b);
    out.push_back(b);
  }
  return BitWord(std::move(out));
}

BitWord reversed(const BitWord& x) {
  std::vector<std::uint8_t> out(x.bits().rbegin(), x.bits().rend());
  return BitWord(std::move(out));
}

BitWord repeat(const BitWord& x, std::size_t times) {
  BitWord out;
  out.reserve(x.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.append(x);
  return out;
}

BitWord pow_k(const BitWord& x, unsigned k) {
  std::size_t copies = 1;
  for (unsigned i = 0; i < k; ++i) copies *= x.size();
  return repeat(x, x.empty() ? 0 : copies);
}

BitWord pref(const BitWord& x) {
  BitWord out;
  out.reserve(x.size() * (x.size() + 1) / 2);
  for (std::size_t i = 1; i <= x.size(); ++i) out.append(x.prefix(i));
  return out;
}

bool is_palindrome(const BitWord& x) {
  return std::equal(x.bits().begin(), x.bits().begin() + static_cast<std::ptrdiff_t>(x.size() / 2),
                    x.bits().rbegin());
}

bool contains_run_of_ones(const BitWord& x, std::size_t run) {
  if (run == 0) return true;
  std::size_t current = 0;
  for (auto b : x.bits()) {
    current = b ? current + 1 : 0;
    if (current >= run) return true;
  }
  return false;
}

BitWord BufferedSource::prefix(std::size_t n) const {
  std::lock_guard lock(mutex_);
  while (buffer_.size() < n) extend(buffer_);
  return buffer_.prefix(n);
}

std::string ConstantSource::label() const { return bit_ ? "ones" : "zeros"; }

void ConstantSource::extend(BitWord& buffer) const {
  buffer.append_repeated(bit_, std::max<std::size_t>(1024, buffer.size()));
}

PeriodicSource::PeriodicSource(BitWord pattern) : pattern_(std::move(pattern)) {
  require(!pattern_.empty(), "periodic source needs a nonempty pattern");
}

std::string PeriodicSource::label() const { return "periodic(" + pattern_.to_string() + ")"; }

void PeriodicSource::extend(BitWord& buffer) const {
  const std::size_t copies = std::max<std::size_t>(1, 4096 / pattern_.size());
  for (std::size_t i = 0; i < copies; ++i) buffer.append(pattern_);
}

void ChampernowneSource::extend(BitWord& buffer) const {
  ++length_;
  require(length_ < 40, "champernowne source exhausted");
  const std::uint64_t count = std::uint64_t{1} << length_;
  for (std::uint64_t v = 0; v < count; ++v) {
    for (std::size_t i = length_; i-- > 0;) buffer.push_back(static_cast<std::uint8_t>((v >> i) & 1u));
  }
}

struct RandomSource::Engine {
  std::mt19937_64 rng;
};

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(std::make_unique<Engine>()) {
  engine_->rng.seed(seed);
}

RandomSource::~RandomSource() = default;

std::string RandomSource::label() const { return "random(seed=" + std::to_string(seed_) + ")"; }

void RandomSource::extend(BitWord& buffer) const {
  for (int block = 0; block < 64; ++block) {
    const std::uint64_t word = engine_->rng();
    for (int i = 0; i < 64; ++i) buffer.push_back(static_cast<std::uint8_t>((word >> i) & 1u));
  }
}

BitWord random_word(std::uint64_t seed, std::size_t length) { return RandomSource(seed).prefix(length); }

Rational block_frequency_deviation(const BitWord& prefix, unsigned block) {
  require(block >= 1 && block <= 16, "block length must be in 1..16");
  const std::size_t n = prefix.size();
  require(n >= (std::size_t{1} << block), "prefix too short for block length");
  const std::size_t windows = n - block + 1;
  std::vector<std::int64_t> counts(std::size_t{1} << block, 0);
  const std::uint32_t mask = (1u << block) - 1u;
  std::uint32_t window = 0;
  for (std::size_t i = 0; i < n; ++i) {
    window = ((window << 1) | prefix[i]) & mask;
    if (i + 1 >= block) ++counts[window];
  }
  // |count/W - 2^-b| = |count * 2^b - W| / (W * 2^b)
  const std::int64_t scale = std::int64_t{1} << block;
  const auto total = static_cast<std::int64_t>(windows);
  std::int64_t worst = 0;
  for (auto c : counts) worst = std::max(worst, std::abs(c * scale - total));
  std::int64_t den = total * scale;
  const std::int64_t g = std::gcd(worst, den);
  if (g > 1) {
    worst /= g;
    den /= g;
  }
  return Rational{worst, den};
}

Rational block_frequency_deviation(const BitSource& source, std::size_t n, unsigned block) {
  return block_frequency_deviation(source.prefix(n), block);
}

}  // namespace pdepth
