#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pdepth/words.hpp"

namespace pdepth {

/// All length-n words without a run of k ones, in lexicographic order.
std::vector<BitWord> t_set(unsigned n, unsigned k);

/// A piece of a constructed prefix as the witness builders see it.
/// Literal prints `body`; Reverse prints body 1^flag reverse(body).
struct Segment {
  enum class Kind { Literal, Reverse, Square } kind = Kind::Literal;
  BitWord body;
  std::size_t flag = 0;

  std::size_t length() const;
  BitWord expand() const;
};

struct Thm4Params {
  unsigned k = 8;
  unsigned v = 4;
};

struct Thm4Zone {
  std::vector<BitWord> xs;  // X zone; the Y zone is its reverse
  std::size_t flag = 0;
};

/// One block of the sequence: S_n, or the run of flags 1^k ... 1^{2k-1}
/// between S_{k-1} and S_k.
struct Thm4Block {
  unsigned n = 0;
  bool extra_flags = false;
  std::size_t f = 0;                 // f(n) when n >= k
  std::vector<BitWord> words;        // all n-bit words (n < k) or palindromes
  std::vector<Thm4Zone> zones;       // v + 1 zones when n >= k
  std::size_t length = 0;
  std::size_t anchor_misses = 0;     // zones whose boundary bits could not be met

  std::vector<Segment> segments() const;
};

class Thm4Sequence final : public BufferedSource {
 public:
  explicit Thm4Sequence(Thm4Params params);
  std::string label() const override;
  const Thm4Params& params() const noexcept { return params_; }

  /// f(n) = 2k + (n - k)(v + 2)
  std::size_t flag_length(unsigned n) const;
  /// Blocks in sequence order: S_1..S_{k-1}, flags, S_k, S_{k+1}, ...
  const Thm4Block& block(std::size_t index) const;
  /// Index of the block holding S_n.
  std::size_t block_index(unsigned n) const;
  /// Total length of blocks [0, index].
  std::size_t length_through(std::size_t index) const;
  /// Segments covering exactly the first p bits (the last one cut to a literal).
  std::vector<Segment> segments(std::size_t p) const;
  std::string meta_csv(std::size_t n) const;

 protected:
  void extend(BitWord& buffer) const override;

 private:
  Thm4Block make_block(std::size_t index) const;

  Thm4Params params_;
  mutable std::mutex memo_mutex_;
  mutable std::vector<std::unique_ptr<Thm4Block>> blocks_;
  mutable std::size_t emitted_ = 0;
};

enum class Remark1Selector { SampleMaxLz, FixedSeed };

struct Remark1Params {
  unsigned k = 9;
  unsigned v = 0;  // 0 means v = k
  std::uint64_t seed = 1;
  Remark1Selector selector = Remark1Selector::SampleMaxLz;
  unsigned samples = 64;
};

/// S = S_1 S_2 ... with S_j = R_j^{|R_j|} 1^k (R_j^{-1})^{|R_j|}.
class Remark1Sequence final : public BufferedSource {
 public:
  explicit Remark1Sequence(Remark1Params params);
  std::string label() const override;
  const Remark1Params& params() const noexcept { return params_; }
  unsigned modulus() const noexcept { return params_.v == 0 ? params_.k : params_.v; }

  /// Least power of k that is >= j.
  std::size_t t(std::size_t j) const;
  const BitWord& r(std::size_t j) const;
  std::size_t block_length(std::size_t j) const;
  /// |S_1 ... S_j|
  std::size_t length_through(std::size_t j) const;
  /// First j with v dividing |R_j| (it then divides every later |R_j|).
  std::size_t threshold() const;
  /// |S_1 ... S_{p-1}| for p = threshold().
  std::size_t counting_prefix() const;
  /// Segments covering exactly the first p bits.
  std::vector<Segment> segments(std::size_t p) const;
  std::string meta_csv(std::size_t n) const;

 protected:
  void extend(BitWord& buffer) const override;

 private:
  BitWord select(std::size_t j) const;

  Remark1Params params_;
  mutable std::mutex memo_mutex_;
  mutable std::map<std::size_t, BitWord> rs_;
  mutable std::size_t emitted_ = 0;
};

/// x_1 x_2 x_3 ... with x_i = S|i.
class PrefSequence final : public BufferedSource {
 public:
  explicit PrefSequence(std::shared_ptr<const BitSource> base);
  std::string label() const override;

 protected:
  void extend(BitWord& buffer) const override;

 private:
  std::shared_ptr<const BitSource> base_;
  mutable std::size_t next_ = 1;
};

std::shared_ptr<BitSource> pref_sequence(std::shared_ptr<const BitSource> base);

}  // namespace pdepth
