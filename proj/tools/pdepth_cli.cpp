#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdepth/pebble_depth.h"

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct Failure {
  int code;
  std::string message;
};

struct CStr {
  char* p = nullptr;
  ~CStr() { pd_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

void check(pd_status s) {
  if (s == PD_OK) return;
  const int code = (s == PD_ERR_INVALID_ARGUMENT || s == PD_ERR_PARSE) ? kUsageError : kDomainError;
  throw Failure{code, std::string(pd_status_name(s)) + ": " + pd_last_error()};
}

std::string read_file(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsageError, "cannot read " + path};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kDomainError, "cannot write " + path};
  out << text;
}

struct MachineDeleter {
  void operator()(pd_machine* m) const { pd_machine_free(m); }
};
using Machine = std::unique_ptr<pd_machine, MachineDeleter>;

struct SourceDeleter {
  void operator()(pd_source* s) const { pd_source_free(s); }
};
using Source = std::unique_ptr<pd_source, SourceDeleter>;

// --machine FILE or --build NAME
struct MachineArgs {
  std::string file;
  std::string name;

  void add(CLI::App* app) {
    auto* f = app->add_option("--machine", file, "machine file");
    auto* b = app->add_option("--build", name, "built-in machine (tpref, tpowprint, tprintreverse:K, cprime:M,K,V, ...)");
    f->excludes(b);
  }

  Machine load() const {
    pd_machine* m = nullptr;
    if (!file.empty()) check(pd_machine_parse(read_file(file).c_str(), &m));
    else if (!name.empty()) check(pd_machine_build(name.c_str(), &m));
    else throw Failure{kUsageError, "one of --machine or --build is required"};
    return Machine(m);
  }
};

struct InputArgs {
  std::string bits;
  std::string file;

  void add(CLI::App* app, const std::string& flag = "--input") {
    auto* i = app->add_option(flag, bits, "ASCII bits");
    auto* f = app->add_option(flag + "-file", file, "file with ASCII bits ('-' is stdin)");
    i->excludes(f);
  }

  bool given() const { return !bits.empty() || !file.empty(); }
  std::string get() const {
    if (!file.empty()) return read_file(file);
    return bits;
  }
};

struct SourceArgs {
  std::string kind;
  unsigned k = 0;
  unsigned v = 0;
  std::uint64_t seed = 1;
  std::string pattern = "01";
  std::string base = "champernowne";
  unsigned samples = 64;
  bool fixed_seed = false;

  void add(CLI::App* app) {
    app->add_option("--seq", kind, "thm4 | remark1 | prefseq | champernowne | periodic | zero | one | random")->required();
    app->add_option("--k", k, "sequence parameter k (0 = default)");
    app->add_option("--v", v, "sequence parameter v (0 = default)");
    app->add_option("--seed", seed, "seed for randomized selectors");
    app->add_option("--pattern", pattern, "periodic pattern");
    app->add_option("--base", base, "base sequence for prefseq");
    app->add_option("--samples", samples, "remark1 selector samples");
    app->add_flag("--fixed-seed", fixed_seed, "remark1: keep the first sample");
  }

  Source create() const {
    pd_source_params p;
    pd_source_params_init(&p);
    p.kind = kind.c_str();
    p.k = k;
    p.v = v;
    p.seed = seed;
    p.pattern = pattern.c_str();
    p.base = base.c_str();
    p.samples = samples;
    p.fixed_seed = fixed_seed ? 1 : 0;
    pd_source* s = nullptr;
    check(pd_source_create(&p, &s));
    return Source(s);
  }
};

std::size_t parse_count(const std::string& text) {
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || d < 0 || d != std::floor(d)) throw Failure{kUsageError, "bad length '" + text + "'"};
  return static_cast<std::size_t>(d);
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_count(item));
  if (out.empty()) throw Failure{kUsageError, "empty n list"};
  return out;
}

struct ProfileArgs {
  std::string n_list;
  int dk_k = -1;
  std::size_t dk_max_n = 12;
  std::string cprime;
  unsigned normality = 0;
  bool no_verify = false;

  void add(CLI::App* app) {
    app->add_option("--n-list", n_list, "ascending prefix lengths, e.g. 1e3,1e4")->required();
    app->add_option("--dk-k", dk_k, "compute D^k_FST for n <= --dk-max-n");
    app->add_option("--dk-max-n", dk_max_n, "largest n for D^k_FST");
    app->add_option("--with-cprime", cprime, "m,k,v or 'auto' (remark1 parameters)");
    app->add_option("--normality-block", normality, "block length for normality_dev");
    app->add_flag("--no-verify", no_verify, "skip running witnesses");
  }

  pd_profile_options options() const {
    pd_profile_options o;
    pd_profile_options_init(&o);
    o.dk_k = dk_k;
    o.dk_max_n = dk_max_n;
    o.normality_block = normality;
    o.verify_witness = no_verify ? 0 : 1;
    if (cprime == "auto") {
      o.cprime = 2;
    } else if (!cprime.empty()) {
      const auto v = parse_list(cprime);
      if (v.size() != 3) throw Failure{kUsageError, "--with-cprime needs m,k,v"};
      o.cprime = 1;
      o.cprime_m = v[0];
      o.cprime_k = static_cast<unsigned>(v[1]);
      o.cprime_v = static_cast<unsigned>(v[2]);
    }
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pebble-depth toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a machine (several --machine files form a pipeline)");
  std::vector<std::string> run_files;
  std::string run_build;
  InputArgs run_input;
  std::uint64_t run_budget = 0;
  bool run_state = false;
  run->add_option("--machine", run_files, "machine file; repeat for a pipeline");
  run->add_option("--build", run_build, "built-in machine");
  run_input.add(run);
  run->add_option("--budget", run_budget, "PB step budget (0 = unlimited)");
  run->add_flag("--show-state", run_state, "print the end state on a second line");

  // ilcheck
  auto* ilc = app.add_subcommand("ilcheck", "exhaustive information-losslessness check");
  MachineArgs ilc_machine;
  unsigned ilc_bound = 10;
  ilc_machine.add(ilc);
  ilc->add_option("--bound", ilc_bound, "maximum input length");

  // decode
  auto* dec = app.add_subcommand("decode", "recover the input from (output, end state)");
  MachineArgs dec_machine;
  InputArgs dec_output;
  std::uint32_t dec_state = 0;
  unsigned dec_bound = 12;
  dec_machine.add(dec);
  dec_output.add(dec, "--output");
  dec->add_option("--state", dec_state, "end state")->required();
  dec->add_option("--bound", dec_bound, "maximum input length");

  // lz78
  auto* lz = app.add_subcommand("lz78", "LZ78 parse or decode");
  InputArgs lz_input;
  std::string lz_emit = "phrases";
  std::string lz_decode;
  lz_input.add(lz);
  lz->add_option("--emit", lz_emit, "phrases | lengths")->check(CLI::IsMember({"phrases", "lengths"}));
  lz->add_option("--decode", lz_decode, "pointer:bit list to decode");

  // dk
  auto* dk = app.add_subcommand("dk", "descriptional complexity D^k");
  InputArgs dk_input;
  unsigned dk_k = 12;
  std::string dk_model = "fst";
  unsigned dk_cap = 12;
  bool dk_oracle = false;
  dk_input.add(dk);
  dk->add_option("--k", dk_k, "machine size bound (fst)");
  dk->add_option("--family,--model", dk_model, "fst | pb")->check(CLI::IsMember({"fst", "pb"}));
  dk->add_option("--cap", dk_cap, "pb: longest exhaustive input");
  dk->add_flag("--oracle", dk_oracle, "fst: cross-check against the brute force");

  // enumerate
  auto* en = app.add_subcommand("enumerate", "list canonical machine codes of size <= k");
  std::string en_kind = "fst";
  unsigned en_k = 12;
  en->add_option("--kind", en_kind, "fst | pb")->check(CLI::IsMember({"fst", "pb"}));
  en->add_option("--k", en_k, "size bound")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "emit a sequence prefix");
  SourceArgs gen_src;
  std::string gen_n;
  std::string gen_emit = "bits";
  gen_src.add(gen);
  gen->add_option("--n", gen_n, "prefix length")->required();
  gen->add_option("--emit", gen_emit, "bits | meta")->check(CLI::IsMember({"bits", "meta"}));

  // witness
  auto* wit = app.add_subcommand("witness", "witness input and expected output");
  SourceArgs wit_src;
  std::string wit_n;
  std::string wit_x;
  std::string wit_z;
  bool wit_verify = false;
  wit->add_option("--seq", wit_src.kind, "sequence (thm4 | remark1 | prefseq)");
  wit->add_option("--k", wit_src.k, "sequence parameter k");
  wit->add_option("--v", wit_src.v, "sequence parameter v");
  wit->add_option("--seed", wit_src.seed, "seed");
  wit->add_option("--base", wit_src.base, "base sequence for prefseq");
  wit->add_option("--samples", wit_src.samples, "remark1 selector samples");
  wit->add_flag("--fixed-seed", wit_src.fixed_seed, "remark1: keep the first sample");
  wit->add_option("--n", wit_n, "prefix length");
  wit->add_option("--pref", wit_x, "T_pref witness for x");
  wit->add_option("--z", wit_z, "T_pref witness tail z");
  wit->add_flag("--verify", wit_verify, "run the witness and compare");

  // profile
  auto* prof = app.add_subcommand("profile", "depth profile CSV");
  SourceArgs prof_src;
  ProfileArgs prof_args;
  std::string prof_out;
  prof_src.add(prof);
  prof_args.add(prof);
  prof->add_option("--out", prof_out, "CSV file (default stdout)");

  // sgl
  auto* sgl = app.add_subcommand("sgl", "profiles of S and M(S) for an IL transducer M");
  SourceArgs sgl_src;
  ProfileArgs sgl_args;
  MachineArgs sgl_machine;
  std::string sgl_out_base;
  std::string sgl_out_image;
  sgl_src.add(sgl);
  sgl_args.add(sgl);
  sgl_machine.add(sgl);
  sgl->add_option("--out-base", sgl_out_base, "CSV for S");
  sgl->add_option("--out-image", sgl_out_image, "CSV for M(S)");

  // build
  auto* build = app.add_subcommand("build", "write a built-in machine in text format");
  std::string build_name;
  std::string build_out;
  bool build_code = false;
  build->add_option("--name", build_name, "machine name")->required();
  build->add_option("--out", build_out, "file (default stdout)");
  build->add_flag("--code", build_code, "print the binary representation instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*run) {
      if (!run_input.given()) throw Failure{kUsageError, "--input or --input-file is required"};
      const std::string input = run_input.get();
      CStr out;
      std::uint32_t state = 0;
      if (run_files.size() > 1) {
        std::vector<Machine> owned;
        std::vector<const pd_machine*> stages;
        for (const auto& f : run_files) {
          owned.push_back(MachineArgs{f, {}}.load());
          stages.push_back(owned.back().get());
        }
        check(pd_pipeline(stages.data(), stages.size(), input.c_str(), run_budget, out.out()));
        std::cout << out.str() << '\n';
      } else {
        const Machine m = MachineArgs{run_files.empty() ? "" : run_files[0], run_build}.load();
        check(pd_run(m.get(), input.c_str(), run_budget, out.out(), &state));
        std::cout << out.str() << '\n';
        if (run_state) std::cout << "state " << state << '\n';
      }
    } else if (*ilc) {
      const Machine m = ilc_machine.load();
      int lossless = 0;
      CStr a, b;
      check(pd_il_check(m.get(), ilc_bound, &lossless, a.out(), b.out()));
      if (lossless) {
        std::cout << "lossless up to length " << ilc_bound << '\n';
      } else {
        std::cout << "counterexample " << (a.str().empty() ? "-" : a.str()) << ' ' << (b.str().empty() ? "-" : b.str())
                  << '\n';
        return kDomainError;
      }
    } else if (*dec) {
      const Machine m = dec_machine.load();
      CStr x;
      check(pd_il_decode(m.get(), dec_output.get().c_str(), dec_state, dec_bound, x.out()));
      std::cout << x.str() << '\n';
    } else if (*lz) {
      if (!lz_decode.empty()) {
        CStr out;
        check(pd_lz78_decode(lz_decode.c_str(), out.out()));
        std::cout << out.str() << '\n';
      } else {
        if (!lz_input.given()) throw Failure{kUsageError, "--input, --input-file or --decode is required"};
        CStr phrases;
        size_t plain = 0, gamma = 0;
        check(pd_lz78(lz_input.get().c_str(), phrases.out(), &plain, &gamma));
        if (lz_emit == "phrases") std::cout << phrases.str() << '\n';
        else std::cout << "plain " << plain << "\ngamma " << gamma << '\n';
      }
    } else if (*dk) {
      if (!dk_input.given()) throw Failure{kUsageError, "--input or --input-file is required"};
      const std::string x = dk_input.get();
      if (dk_model == "fst") {
        int finite = 0;
        size_t value = 0;
        CStr in, text;
        check(pd_dk_fst(x.c_str(), dk_k, &finite, &value, in.out(), text.out()));
        if (!finite) {
          std::cout << "infinite\n";
          return kDomainError;
        }
        std::cout << value << "\ninput " << in.str() << '\n' << text.str();
        if (dk_oracle) {
          int oracle_finite = 0;
          size_t oracle_value = 0;
          check(pd_dk_fst_bruteforce(x.c_str(), dk_k, &oracle_finite, &oracle_value));
          std::cout << "oracle " << oracle_value << '\n';
          if (!oracle_finite || oracle_value != value) throw Failure{kDomainError, "brute force disagrees"};
        }
      } else {
        size_t value = 0;
        CStr in, label;
        check(pd_dk_pb_upper(x.c_str(), dk_cap, &value, in.out(), label.out()));
        std::cout << value << "\ninput " << in.str() << "\nmachine " << label.str() << '\n';
      }
    } else if (*en) {
      CStr lines;
      size_t count = 0;
      check(pd_enumerate(en_kind == "fst" ? PD_MACHINE_FST : PD_MACHINE_PB, en_k, lines.out(), &count));
      std::cout << lines.str();
    } else if (*gen) {
      const Source s = gen_src.create();
      const std::size_t n = parse_count(gen_n);
      CStr out;
      if (gen_emit == "meta") {
        check(pd_source_meta(s.get(), n, out.out()));
        std::cout << out.str();
      } else {
        check(pd_source_prefix(s.get(), n, out.out()));
        std::cout << out.str() << '\n';
      }
    } else if (*wit) {
      CStr in, expected, name;
      if (!wit_x.empty() || !wit_z.empty()) {
        check(pd_witness_pref(wit_x.c_str(), wit_z.c_str(), in.out(), expected.out()));
      } else {
        if (wit_src.kind.empty() || wit_n.empty()) throw Failure{kUsageError, "--seq and --n (or --pref/--z) are required"};
        const Source s = wit_src.create();
        check(pd_witness(s.get(), parse_count(wit_n), in.out(), expected.out(), name.out()));
      }
      std::cout << in.str() << '\n' << expected.str() << '\n';
      if (wit_verify) {
        const Machine m = MachineArgs{{}, name.p ? name.str() : "tpref"}.load();
        CStr out;
        check(pd_run(m.get(), in.str().c_str(), 0, out.out(), nullptr));
        if (out.str() != expected.str()) throw Failure{kDomainError, "witness output differs from the expected prefix"};
        std::cerr << "verified\n";
      }
    } else if (*prof) {
      const Source s = prof_src.create();
      const auto ns = parse_list(prof_args.n_list);
      const auto opts = prof_args.options();
      CStr csv;
      check(pd_profile(s.get(), ns.data(), ns.size(), &opts, csv.out()));
      write_text(prof_out, csv.str());
    } else if (*sgl) {
      const Source s = sgl_src.create();
      const Machine m = sgl_machine.load();
      const auto ns = parse_list(sgl_args.n_list);
      const auto opts = sgl_args.options();
      CStr base_csv, image_csv;
      pd_sgl_summary sum{};
      check(pd_sgl(s.get(), m.get(), ns.data(), ns.size(), &opts, base_csv.out(), image_csv.out(), &sum));
      if (!sgl_out_base.empty()) write_text(sgl_out_base, base_csv.str());
      if (!sgl_out_image.empty()) write_text(sgl_out_image, image_csv.str());
      if (sgl_out_base.empty() && sgl_out_image.empty()) std::cout << base_csv.str() << '\n' << image_csv.str() << '\n';
      std::cout << "beta " << sum.beta << "\nstall " << sum.stall << "\nmax_output " << sum.max_output
                << "\nbase_tail_gap " << sum.base_tail_gap << "\nimage_tail_gap " << sum.image_tail_gap
                << "\nretained " << (sum.retained ? "yes" : "no") << '\n';
    } else if (*build) {
      pd_machine* raw = nullptr;
      check(pd_machine_build(build_name.c_str(), &raw));
      const Machine m(raw);
      CStr text;
      if (build_code) {
        size_t size = 0;
        check(pd_machine_encode(m.get(), text.out(), &size));
        write_text(build_out, text.str() + "\n");
      } else {
        check(pd_machine_to_text(m.get(), text.out()));
        write_text(build_out, text.str());
      }
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    if (f.code == kUsageError) std::cerr << app.help();
    return f.code;
  }
  return 0;
}
