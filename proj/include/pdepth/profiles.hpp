#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdepth/constructions.hpp"
#include "pdepth/fst.hpp"
#include "pdepth/pushdown.hpp"
#include "pdepth/words.hpp"

namespace pdepth {

struct DepthProfileRow {
  std::size_t n = 0;
  std::size_t len_identity = 0;
  std::size_t len_lz78_plain = 0;
  std::size_t len_lz78_gamma = 0;
  std::optional<std::size_t> len_cprime;
  std::optional<std::size_t> len_updc_best;
  std::optional<std::size_t> dk_fst;
  std::size_t pb_ub = 0;
  double gap_fs_pb = 0.0;
  std::optional<double> normality_dev;

  friend bool operator==(const DepthProfileRow&, const DepthProfileRow&) = default;
};

using WitnessFn = std::function<Witness(std::size_t)>;

struct CprimeParams {
  std::size_t m = 0;
  unsigned k = 0;
  unsigned v = 0;
};

struct ProfileConfig {
  std::optional<unsigned> dk_k;
  /// dk_fst is attempted only for n up to this length.
  std::size_t dk_max_n = 12;
  std::optional<CprimeParams> cprime;
  /// Extra IL FST compressors for the FS measure; identity is always used.
  std::vector<FstMachine> fs_pool;
  /// UPDC pool for len_updc_best; the unary identity is always used.
  std::vector<PdcMachine> updc_pool;
  /// Witness builder for pb_ub; without one pb_ub = n (identity PB).
  WitnessFn witness;
  /// Run every witness through its machine and compare.
  bool verify_witness = true;
  /// Block length for normality_dev; 0 leaves the column empty.
  unsigned normality_block = 0;
};

/// One row per n; n_list must be ascending.
std::vector<DepthProfileRow> profile(const BitSource& source, const std::vector<std::size_t>& n_list,
                                     const ProfileConfig& config);

std::string emit_csv(const std::vector<DepthProfileRow>& rows);
std::vector<DepthProfileRow> parse_csv(const std::string& text);

/// M applied to a source: prefix(n) is the first n bits of M(S).
class FstImageSource final : public BitSource {
 public:
  FstImageSource(std::shared_ptr<const BitSource> base, FstMachine machine);
  BitWord prefix(std::size_t n) const override;
  std::string label() const override;
  /// Largest m with |M(S|m)| <= n, and |M(S|m)|.
  std::pair<std::size_t, std::size_t> preimage_length(std::size_t n) const;

 private:
  std::shared_ptr<const BitSource> base_;
  FstMachine machine_;
};

struct SglReport {
  std::vector<DepthProfileRow> base;
  std::vector<DepthProfileRow> image;
  std::size_t max_output = 0;   // longest output of one transition
  std::size_t stall = 0;        // longest run of silent transitions
  double beta = 0.0;            // 1 / max_output
  double base_tail_gap = 0.0;   // min gap over the last three rows
  double image_tail_gap = 0.0;
  bool retained = false;        // image gap > 0 implies base gap >= beta * image gap
};

/// Profiles S and M(S). M must pass il_check at bound 12 and must not have
/// a silent cycle. The image's FS measure is min(n, m_n + leftover) with m_n
/// from preimage_length, and its pb_ub is the base witness for S|m_n run
/// through M plus the leftover bits.
SglReport sgl_experiment(std::shared_ptr<const BitSource> source, const FstMachine& machine,
                         const std::vector<std::size_t>& n_list, const ProfileConfig& config);

struct SourceSpec {
  std::string kind = "champernowne";  // thm4 remark1 prefseq champernowne periodic zero one random
  unsigned k = 0;                     // 0 picks the kind's default
  unsigned v = 0;
  std::uint64_t seed = 1;
  std::string pattern = "01";
  std::string base = "champernowne";  // prefseq base kind
  unsigned samples = 64;
  bool fixed_seed = false;
};

struct SourceBundle {
  std::shared_ptr<BitSource> source;
  WitnessFn witness;                   // empty when no construction applies
  std::optional<CprimeParams> cprime;  // remark1 only
  std::function<std::string(std::size_t)> meta;
};

SourceBundle make_source(const SourceSpec& spec);

}  // namespace pdepth
