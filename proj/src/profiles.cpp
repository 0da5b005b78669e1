#include "pdepth/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "pdepth/complexity.hpp"
#include "pdepth/errors.hpp"
#include "pdepth/lz78.hpp"
#include "pdepth/sequences.hpp"

namespace pdepth {

namespace {

constexpr const char* kHeader =
    "n,len_identity,len_lz78_plain,len_lz78_gamma,len_cprime,len_updc_best,dk_fst,pb_ub,gap_fs_pb,normality_dev";

class WitnessChecker {
 public:
  void check(const Witness& w, const BitWord& x) {
    if (w.expected != x) fail(ErrorKind::Mismatch, "witness expectation differs from the source prefix");
    const BitWord out = pb_run(machine(w.machine), w.input);
    if (out != x) fail(ErrorKind::Mismatch, "witness run differs from the source prefix (" + w.machine + ")");
  }

  const PebbleMachine& machine(const std::string& name) {
    auto it = cache_.find(name);
    if (it == cache_.end()) {
      AnyMachine built = build_named(name);
      PebbleMachine pb = std::holds_alternative<PebbleMachine>(built) ? std::get<PebbleMachine>(built)
                                                                      : fst_to_pb(std::get<FstMachine>(built));
      it = cache_.emplace(name, std::move(pb)).first;
    }
    return it->second;
  }

 private:
  std::map<std::string, PebbleMachine> cache_;
};

struct RowWork {
  DepthProfileRow row;
  std::size_t fs = 0;
};

RowWork measure(const BitWord& x, const BitSource& source, const ProfileConfig& config,
                const std::optional<PdcMachine>& cprime) {
  RowWork w;
  auto& row = w.row;
  const std::size_t n = x.size();
  row.n = n;
  row.len_identity = n;
  const Lz78Parse parse = lz78_parse(x);
  row.len_lz78_plain = parse.encoded_len_plain;
  row.len_lz78_gamma = parse.encoded_len_gamma;
  if (cprime) {
    try {
      row.len_cprime = pdc_run(*cprime, x).output.size();
    } catch (const Error&) {
      row.len_cprime.reset();
    }
  }
  std::size_t updc = pdc_run(pdc_identity(true), x).output.size();
  for (const auto& m : config.updc_pool) {
    try {
      updc = std::min(updc, pdc_run(m, x).output.size());
    } catch (const Error&) {
    }
  }
  row.len_updc_best = updc;
  if (config.dk_k && n <= config.dk_max_n) row.dk_fst = dk_fst(x, *config.dk_k).value;

  w.fs = n;
  for (const auto& m : config.fs_pool) w.fs = std::min(w.fs, fst_compress_len(m, source, n));
  if (row.dk_fst) w.fs = *row.dk_fst;

  if (config.normality_block > 0 && n >= (std::size_t{1} << config.normality_block)) {
    row.normality_dev = block_frequency_deviation(x, config.normality_block).to_double();
  }
  return w;
}

double gap(std::size_t fs, std::size_t pb, std::size_t n) {
  if (n == 0) return 0.0;
  return (static_cast<double>(fs) - static_cast<double>(pb)) / static_cast<double>(n);
}

void require_ascending(const std::vector<std::size_t>& n_list) {
  for (std::size_t i = 1; i < n_list.size(); ++i) require(n_list[i - 1] < n_list[i], "n list must be ascending");
}

std::optional<PdcMachine> cprime_of(const ProfileConfig& config) {
  if (!config.cprime) return std::nullopt;
  return build_Cprime(config.cprime->m, config.cprime->k, config.cprime->v);
}

template <class T>
void put(std::ostringstream& os, const std::optional<T>& v) {
  if (v) os << *v;
}

std::string format_double(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, ptr);
}

template <class T>
T parse_field(std::string_view s, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ErrorKind::Parse, "line " + std::to_string(line) + ": bad field '" + std::string(s) + "'");
  }
  return v;
}

template <class T>
std::optional<T> parse_optional(std::string_view s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return parse_field<T>(s, line);
}

}  // namespace

std::vector<DepthProfileRow> profile(const BitSource& source, const std::vector<std::size_t>& n_list,
                                     const ProfileConfig& config) {
  require_ascending(n_list);
  std::vector<DepthProfileRow> rows;
  if (n_list.empty()) return rows;
  const BitWord full = source.prefix(n_list.back());
  const auto cprime = cprime_of(config);
  WitnessChecker checker;
  for (std::size_t n : n_list) {
    const BitWord x = full.prefix(n);
    RowWork w = measure(x, source, config, cprime);
    if (config.witness) {
      const Witness wit = config.witness(n);
      if (config.verify_witness) checker.check(wit, x);
      w.row.pb_ub = wit.input.size();
    } else {
      w.row.pb_ub = n;
    }
    w.row.gap_fs_pb = gap(w.fs, w.row.pb_ub, n);
    rows.push_back(std::move(w.row));
  }
  return rows;
}

std::string emit_csv(const std::vector<DepthProfileRow>& rows) {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.len_identity << ',' << r.len_lz78_plain << ',' << r.len_lz78_gamma << ',';
    put(os, r.len_cprime);
    os << ',';
    put(os, r.len_updc_best);
    os << ',';
    put(os, r.dk_fst);
    os << ',' << r.pb_ub << ',' << format_double(r.gap_fs_pb) << ',';
    if (r.normality_dev) os << format_double(*r.normality_dev);
    os << '\n';
  }
  return os.str();
}

std::vector<DepthProfileRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<DepthProfileRow> rows;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kHeader) fail(ErrorKind::Parse, "unexpected CSV header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 10) fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 10 fields");
    DepthProfileRow r;
    r.n = parse_field<std::size_t>(f[0], line_no);
    r.len_identity = parse_field<std::size_t>(f[1], line_no);
    r.len_lz78_plain = parse_field<std::size_t>(f[2], line_no);
    r.len_lz78_gamma = parse_field<std::size_t>(f[3], line_no);
    r.len_cprime = parse_optional<std::size_t>(f[4], line_no);
    r.len_updc_best = parse_optional<std::size_t>(f[5], line_no);
    r.dk_fst = parse_optional<std::size_t>(f[6], line_no);
    r.pb_ub = parse_field<std::size_t>(f[7], line_no);
    r.gap_fs_pb = parse_field<double>(f[8], line_no);
    r.normality_dev = parse_optional<double>(f[9], line_no);
    rows.push_back(r);
  }
  if (line_no == 0) fail(ErrorKind::Parse, "missing CSV header");
  return rows;
}

// ---------------------------------------------------------------------------

FstImageSource::FstImageSource(std::shared_ptr<const BitSource> base, FstMachine machine)
    : base_(std::move(base)), machine_(std::move(machine)) {
  require(base_ != nullptr, "image source needs a base");
}

std::string FstImageSource::label() const { return "fst-image(" + base_->label() + ")"; }

std::pair<std::size_t, std::size_t> FstImageSource::preimage_length(std::size_t n) const {
  std::size_t want = n + 16;
  while (true) {
    const BitWord x = base_->prefix(want);
    StateId q = 0;
    std::size_t out = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto step = machine_.output(q, x[i]).size();
      if (out + step > n) return {i, out};
      out += step;
      q = machine_.next(q, x[i]);
    }
    require(want < 64 * n + 4096, "transducer output does not grow");
    want *= 2;
  }
}

BitWord FstImageSource::prefix(std::size_t n) const {
  std::size_t want = n + 16;
  while (true) {
    BitWord out = fst_run(machine_, base_->prefix(want)).output;
    if (out.size() >= n) return out.prefix(n);
    require(want < 64 * n + 4096, "transducer output does not grow");
    want *= 2;
  }
}

SglReport sgl_experiment(std::shared_ptr<const BitSource> source, const FstMachine& machine,
                         const std::vector<std::size_t>& n_list, const ProfileConfig& config) {
  require_ascending(n_list);
  const IlVerdict verdict = il_check(machine, 12);
  if (!verdict.lossless) fail(ErrorKind::Validation, "SGL transducer is not IL up to length 12");

  // Silent edges among reachable states must form a DAG; its longest path is the stall.
  const std::size_t states = machine.num_states();
  std::vector<std::uint8_t> reach(states, 0);
  std::vector<StateId> stack{0};
  reach[0] = 1;
  SglReport report;
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (std::uint8_t b = 0; b < 2; ++b) {
      report.max_output = std::max(report.max_output, machine.output(q, b).size());
      const StateId r = machine.next(q, b);
      if (!reach[r]) {
        reach[r] = 1;
        stack.push_back(r);
      }
    }
  }
  std::vector<int> mark(states, 0);
  std::vector<std::size_t> depth(states, 0);
  std::function<std::size_t(StateId)> longest = [&](StateId q) -> std::size_t {
    if (mark[q] == 2) return depth[q];
    if (mark[q] == 1) fail(ErrorKind::Validation, "transducer has a cycle without output");
    mark[q] = 1;
    std::size_t best = 0;
    for (std::uint8_t b = 0; b < 2; ++b) {
      if (machine.output(q, b).empty()) best = std::max(best, 1 + longest(machine.next(q, b)));
    }
    mark[q] = 2;
    return depth[q] = best;
  };
  for (StateId q = 0; q < states; ++q) {
    if (reach[q]) report.stall = std::max(report.stall, longest(q));
  }
  require(report.max_output > 0, "transducer never outputs");
  report.beta = 1.0 / static_cast<double>(report.max_output);

  report.base = profile(*source, n_list, config);

  const auto image = std::make_shared<FstImageSource>(source, machine);
  const PebbleMachine as_pb = fst_to_pb(machine);
  const auto cprime = cprime_of(config);
  WitnessChecker checker;
  const BitWord full = n_list.empty() ? BitWord{} : image->prefix(n_list.back());
  for (std::size_t n : n_list) {
    const BitWord y = full.prefix(n);
    RowWork w = measure(y, *image, config, cprime);
    const auto [m, out_len] = image->preimage_length(n);
    const std::size_t leftover = n - out_len;
    w.fs = std::min(w.fs, m + leftover);
    std::size_t pb = m;
    if (config.witness) {
      const Witness wit = config.witness(m);
      if (config.verify_witness) {
        const BitWord mid = pb_pipeline({&checker.machine(wit.machine), &as_pb}, wit.input);
        if (mid != y.prefix(out_len)) fail(ErrorKind::Mismatch, "composed witness run differs from M(S)");
      }
      pb = wit.input.size();
    }
    w.row.pb_ub = pb + leftover;
    w.row.gap_fs_pb = gap(w.fs, w.row.pb_ub, n);
    report.image.push_back(std::move(w.row));
  }

  const auto tail_min = [](const std::vector<DepthProfileRow>& rows) {
    double best = rows.empty() ? 0.0 : rows.back().gap_fs_pb;
    for (std::size_t i = rows.size() > 3 ? rows.size() - 3 : 0; i < rows.size(); ++i) best = std::min(best, rows[i].gap_fs_pb);
    return best;
  };
  report.base_tail_gap = tail_min(report.base);
  report.image_tail_gap = tail_min(report.image);
  report.retained = report.image_tail_gap <= 0 || report.base_tail_gap >= report.beta * report.image_tail_gap;
  return report;
}

// ---------------------------------------------------------------------------

SourceBundle make_source(const SourceSpec& spec) {
  SourceBundle b;
  const std::string& kind = spec.kind;
  if (kind == "thm4") {
    auto seq = std::make_shared<Thm4Sequence>(Thm4Params{spec.k ? spec.k : 8, spec.v ? spec.v : 4});
    b.witness = [seq](std::size_t p) { return witness_thm4(*seq, p); };
    b.meta = [seq](std::size_t n) { return seq->meta_csv(n); };
    b.source = seq;
  } else if (kind == "remark1") {
    Remark1Params p;
    p.k = spec.k ? spec.k : 9;
    p.v = spec.v;
    p.seed = spec.seed;
    p.samples = spec.samples;
    p.selector = spec.fixed_seed ? Remark1Selector::FixedSeed : Remark1Selector::SampleMaxLz;
    auto seq = std::make_shared<Remark1Sequence>(p);
    b.witness = [seq](std::size_t n) { return witness_remark1(*seq, n); };
    b.meta = [seq](std::size_t n) { return seq->meta_csv(n); };
    b.cprime = CprimeParams{seq->counting_prefix(), p.k, seq->modulus()};
    b.source = seq;
  } else if (kind == "prefseq") {
    require(spec.base != "prefseq", "prefseq base cannot be prefseq");
    SourceSpec inner = spec;
    inner.kind = spec.base;
    std::shared_ptr<const BitSource> base = make_source(inner).source;
    b.witness = [base](std::size_t p) { return witness_pref_sequence(*base, p); };
    b.source = pref_sequence(base);
  } else if (kind == "champernowne") {
    b.source = std::make_shared<ChampernowneSource>();
  } else if (kind == "periodic") {
    b.source = std::make_shared<PeriodicSource>(BitWord::parse(spec.pattern));
  } else if (kind == "zero" || kind == "one") {
    b.source = std::make_shared<ConstantSource>(kind == "one" ? 1 : 0);
  } else if (kind == "random") {
    b.source = std::make_shared<RandomSource>(spec.seed);
  } else {
    fail(ErrorKind::InvalidArgument, "unknown sequence '" + kind + "'");
  }
  if (!b.meta) b.meta = [](std::size_t) { return std::string{}; };
  return b;
}

}  // namespace pdepth
