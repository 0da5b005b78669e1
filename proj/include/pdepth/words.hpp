#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace pdepth {

/// Finite binary string. Index 0 is the leftmost bit.
class BitWord {
 public:
  BitWord() = default;
  explicit BitWord(std::vector<std::uint8_t> bits);
  BitWord(std::size_t count, std::uint8_t bit) : bits_(count, bit ? 1 : 0) {}

  /// Parses ASCII '0'/'1'. Whitespace is skipped; anything else throws.
  static BitWord parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
  std::uint8_t back() const noexcept { return bits_.back(); }

  void push_back(std::uint8_t bit) { bits_.push_back(bit ? 1 : 0); }
  void pop_back() { bits_.pop_back(); }
  void append(const BitWord& other);
  void append_repeated(std::uint8_t bit, std::size_t count);
  void reserve(std::size_t n) { bits_.reserve(n); }
  void truncate(std::size_t n) {
    if (n < bits_.size()) bits_.resize(n);
  }

  /// x[from .. from+count-1], clamped to the word.
  BitWord substr(std::size_t from, std::size_t count) const;
  BitWord prefix(std::size_t n) const { return substr(0, n); }
  bool is_prefix_of(const BitWord& other) const noexcept;
  /// True iff other[offset ..] starts with this word.
  bool occurs_at(const BitWord& other, std::size_t offset) const noexcept;

  std::string to_string() const;
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  friend BitWord operator+(BitWord lhs, const BitWord& rhs) {
    lhs.append(rhs);
    return lhs;
  }
  friend bool operator==(const BitWord&, const BitWord&) = default;
  friend auto operator<=>(const BitWord& a, const BitWord& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

struct BitWordHash {
  std::size_t operator()(const BitWord& w) const noexcept;
};

/// d(x): every bit written twice.
BitWord doubled(const BitWord& x);
/// x^{-1}
BitWord reversed(const BitWord& x);
/// x repeated |x|^k times.
BitWord pow_k(const BitWord& x, unsigned k);
/// x repeated `times` times.
BitWord repeat(const BitWord& x, std::size_t times);
/// x|1 x|2 ... x
BitWord pref(const BitWord& x);
bool is_palindrome(const BitWord& x);
/// True iff x contains `run` consecutive ones.
bool contains_run_of_ones(const BitWord& x, std::size_t run);

/// Source of an infinite binary sequence, materialized by prefix.
///
/// prefix(m) is a prefix of prefix(n) whenever m <= n. Implementations
/// memoize internally and are safe to call concurrently.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual BitWord prefix(std::size_t n) const = 0;
  virtual std::string label() const = 0;
};

/// Base for sources that extend one growing buffer. Subclasses append at
/// least one bit per extend() call.
class BufferedSource : public BitSource {
 public:
  BitWord prefix(std::size_t n) const final;

 protected:
  /// Appends more bits to `buffer`; called under the instance lock.
  virtual void extend(BitWord& buffer) const = 0;

 private:
  mutable std::mutex mutex_;
  mutable BitWord buffer_;
};

/// b^omega
class ConstantSource final : public BufferedSource {
 public:
  explicit ConstantSource(std::uint8_t bit) : bit_(bit ? 1 : 0) {}
  std::string label() const override;

 protected:
  void extend(BitWord& buffer) const override;

 private:
  std::uint8_t bit_;
};

/// pattern^omega
class PeriodicSource final : public BufferedSource {
 public:
  explicit PeriodicSource(BitWord pattern);
  std::string label() const override;

 protected:
  void extend(BitWord& buffer) const override;

 private:
  BitWord pattern_;
};

/// Every binary word of length 1, 2, 3, ... in lexicographic order.
class ChampernowneSource final : public BufferedSource {
 public:
  std::string label() const override { return "champernowne"; }

 protected:
  void extend(BitWord& buffer) const override;

 private:
  mutable std::size_t length_ = 0;
};

/// Uniform bits from a seeded mt19937_64 (raw output bits, so the stream is
/// identical on every conforming standard library).
class RandomSource final : public BufferedSource {
 public:
  explicit RandomSource(std::uint64_t seed);
  ~RandomSource() override;
  std::string label() const override;

 protected:
  void extend(BitWord& buffer) const override;

 private:
  struct Engine;
  std::uint64_t seed_;
  std::unique_ptr<Engine> engine_;
};

/// Seeded uniform random word of the given length.
BitWord random_word(std::uint64_t seed, std::size_t length);

/// Exact rational p/q with q > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
};

/// max over w in {0,1}^b of |freq(w) - 2^-b| in S|n, counting overlapping
/// windows. Requires b <= 16 and n >= 2^b.
Rational block_frequency_deviation(const BitSource& source, std::size_t n, unsigned block);
Rational block_frequency_deviation(const BitWord& prefix, unsigned block);

}  // namespace pdepth
