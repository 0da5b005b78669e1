#include "pdepth/pebble_depth.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "pdepth/complexity.hpp"
#include "pdepth/constructions.hpp"
#include "pdepth/errors.hpp"
#include "pdepth/lz78.hpp"
#include "pdepth/machine_text.hpp"
#include "pdepth/profiles.hpp"

struct pd_machine {
  pdepth::AnyMachine m;
};

struct pd_source {
  pdepth::SourceBundle b;
};

namespace {

using namespace pdepth;

thread_local std::string g_last_error;

pd_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return PD_ERR_INVALID_ARGUMENT;
    case ErrorKind::Parse: return PD_ERR_PARSE;
    case ErrorKind::Validation: return PD_ERR_VALIDATION;
    case ErrorKind::Divergent: return PD_ERR_DIVERGENT;
    case ErrorKind::Stuck: return PD_ERR_STUCK;
    case ErrorKind::IllegalMove: return PD_ERR_ILLEGAL_MOVE;
    case ErrorKind::BudgetExceeded: return PD_ERR_BUDGET_EXCEEDED;
    case ErrorKind::LambdaBudgetExceeded: return PD_ERR_LAMBDA_BUDGET_EXCEEDED;
    case ErrorKind::NoPreimage: return PD_ERR_NO_PREIMAGE;
    case ErrorKind::Ambiguous: return PD_ERR_AMBIGUOUS;
    case ErrorKind::Mismatch: return PD_ERR_MISMATCH;
  }
  return PD_ERR_INTERNAL;
}

template <class F>
pd_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return PD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return PD_ERR_INTERNAL;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** slot, const std::string& s) {
  if (slot != nullptr) *slot = dup(s);
}

void need(const void* p, const char* what) {
  require(p != nullptr, std::string(what) + " must not be null");
}

BitWord bits(const char* text, const char* what) {
  need(text, what);
  return BitWord::parse(text);
}

ErrorKind kind_of(PbStatus s) {
  switch (s) {
    case PbStatus::Divergent: return ErrorKind::Divergent;
    case PbStatus::Stuck: return ErrorKind::Stuck;
    case PbStatus::IllegalMove: return ErrorKind::IllegalMove;
    default: return ErrorKind::BudgetExceeded;
  }
}

PebbleMachine as_pebble(const AnyMachine& m) {
  if (const auto* pb = std::get_if<PebbleMachine>(&m)) return *pb;
  if (const auto* fst = std::get_if<FstMachine>(&m)) return fst_to_pb(*fst);
  fail(ErrorKind::InvalidArgument, "pushdown compressors cannot be pipeline stages");
}

ProfileConfig config_of(const pd_source& src, const pd_profile_options* o) {
  pd_profile_options defaults;
  pd_profile_options_init(&defaults);
  if (o == nullptr) o = &defaults;
  ProfileConfig c;
  if (o->dk_k >= 0) c.dk_k = static_cast<unsigned>(o->dk_k);
  c.dk_max_n = o->dk_max_n;
  if (o->cprime == 1) c.cprime = CprimeParams{o->cprime_m, o->cprime_k, o->cprime_v};
  if (o->cprime == 2) {
    require(src.b.cprime.has_value(), "this source has no C' parameters");
    c.cprime = src.b.cprime;
  }
  c.normality_block = o->normality_block;
  c.verify_witness = o->verify_witness != 0;
  c.witness = src.b.witness;
  return c;
}

std::vector<std::size_t> n_list_of(const size_t* n_list, size_t count) {
  require(count == 0 || n_list != nullptr, "n list must not be null");
  return std::vector<std::size_t>(n_list, n_list + count);
}

}  // namespace

extern "C" {

const char* pd_last_error(void) { return g_last_error.c_str(); }

const char* pd_status_name(pd_status status) {
  switch (status) {
    case PD_OK: return "ok";
    case PD_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PD_ERR_PARSE: return "parse";
    case PD_ERR_VALIDATION: return "validation";
    case PD_ERR_DIVERGENT: return "divergent";
    case PD_ERR_STUCK: return "stuck";
    case PD_ERR_ILLEGAL_MOVE: return "illegal-move";
    case PD_ERR_BUDGET_EXCEEDED: return "budget-exceeded";
    case PD_ERR_LAMBDA_BUDGET_EXCEEDED: return "lambda-budget-exceeded";
    case PD_ERR_NO_PREIMAGE: return "no-preimage";
    case PD_ERR_AMBIGUOUS: return "ambiguous";
    case PD_ERR_MISMATCH: return "mismatch";
    case PD_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void pd_string_free(char* s) { std::free(s); }

pd_status pd_machine_parse(const char* text, pd_machine** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new pd_machine{parse_machine(text)};
  });
}

pd_status pd_machine_build(const char* name, pd_machine** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new pd_machine{build_named(name)};
  });
}

void pd_machine_free(pd_machine* machine) { delete machine; }

pd_machine_kind pd_machine_get_kind(const pd_machine* machine) {
  return static_cast<pd_machine_kind>(machine->m.index());
}

size_t pd_machine_num_states(const pd_machine* machine) {
  return std::visit([](const auto& m) { return m.num_states(); }, machine->m);
}

pd_status pd_machine_to_text(const pd_machine* machine, char** text) {
  return guarded([&] {
    need(machine, "machine");
    put(text, machine_to_text(machine->m));
  });
}

pd_status pd_machine_encode(const pd_machine* machine, char** hex, size_t* sigma_size) {
  return guarded([&] {
    need(machine, "machine");
    BitWord code;
    if (const auto* fst = std::get_if<FstMachine>(&machine->m)) code = fst_encode(*fst);
    else if (const auto* pb = std::get_if<PebbleMachine>(&machine->m)) code = pb_encode(*pb);
    else fail(ErrorKind::InvalidArgument, "pushdown compressors have no binary representation");
    put(hex, code_to_hex(code));
    if (sigma_size != nullptr) *sigma_size = code.size();
  });
}

pd_status pd_machine_validate(const pd_machine* machine) {
  return guarded([&] {
    need(machine, "machine");
    if (const auto* pdc = std::get_if<PdcMachine>(&machine->m)) pdc_validate(*pdc);
  });
}

pd_status pd_run(const pd_machine* machine, const char* input, uint64_t step_budget, char** output,
                 uint32_t* end_state) {
  return guarded([&] {
    need(machine, "machine");
    const BitWord x = bits(input, "input");
    BitWord out;
    StateId q = 0;
    if (const auto* fst = std::get_if<FstMachine>(&machine->m)) {
      auto r = fst_run(*fst, x);
      out = std::move(r.output);
      q = r.end_state;
    } else if (const auto* pb = std::get_if<PebbleMachine>(&machine->m)) {
      auto r = pb_execute(*pb, x, PbRunOptions{step_budget});
      if (r.status != PbStatus::Halted) fail(kind_of(r.status), r.detail);
      out = std::move(r.output);
      q = r.end_state;
    } else {
      auto r = pdc_run(std::get<PdcMachine>(machine->m), x);
      out = std::move(r.output);
      q = r.end_state;
    }
    put(output, out.to_string());
    if (end_state != nullptr) *end_state = q;
  });
}

pd_status pd_pipeline(const pd_machine* const* stages, size_t count, const char* input, uint64_t step_budget,
                      char** output) {
  return guarded([&] {
    require(count == 0 || stages != nullptr, "stages must not be null");
    std::vector<PebbleMachine> owned;
    owned.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      need(stages[i], "stage");
      owned.push_back(as_pebble(stages[i]->m));
    }
    std::vector<const PebbleMachine*> ptrs;
    for (const auto& m : owned) ptrs.push_back(&m);
    put(output, pb_pipeline(ptrs, bits(input, "input"), PbRunOptions{step_budget}).to_string());
  });
}

pd_status pd_il_check(const pd_machine* machine, unsigned bound, int* lossless, char** cex_a, char** cex_b) {
  return guarded([&] {
    need(machine, "machine");
    IlVerdict v;
    if (const auto* fst = std::get_if<FstMachine>(&machine->m)) v = il_check(*fst, bound);
    else if (const auto* pdc = std::get_if<PdcMachine>(&machine->m)) v = pdc_il_check(*pdc, bound);
    else fail(ErrorKind::InvalidArgument, "il_check applies to FST and PDC machines");
    if (lossless != nullptr) *lossless = v.lossless ? 1 : 0;
    if (v.counterexample) {
      put(cex_a, v.counterexample->first.to_string());
      put(cex_b, v.counterexample->second.to_string());
    } else {
      if (cex_a != nullptr) *cex_a = nullptr;
      if (cex_b != nullptr) *cex_b = nullptr;
    }
  });
}

pd_status pd_il_decode(const pd_machine* machine, const char* output, uint32_t end_state, unsigned bound,
                       char** input) {
  return guarded([&] {
    need(machine, "machine");
    const BitWord y = bits(output, "output");
    BitWord x;
    if (const auto* fst = std::get_if<FstMachine>(&machine->m)) x = il_decode(*fst, y, end_state, bound);
    else if (const auto* pdc = std::get_if<PdcMachine>(&machine->m)) x = pdc_il_decode(*pdc, y, end_state, bound);
    else fail(ErrorKind::InvalidArgument, "il_decode applies to FST and PDC machines");
    put(input, x.to_string());
  });
}

pd_status pd_lz78(const char* input, char** phrases, size_t* plain_len, size_t* gamma_len) {
  return guarded([&] {
    const Lz78Parse p = lz78_parse(bits(input, "input"));
    std::string text;
    for (const auto& pair : p.pairs()) {
      if (!text.empty()) text += ',';
      text += std::to_string(pair.pointer) + ':' + char('0' + pair.bit);
    }
    put(phrases, text);
    if (plain_len != nullptr) *plain_len = p.encoded_len_plain;
    if (gamma_len != nullptr) *gamma_len = p.encoded_len_gamma;
  });
}

pd_status pd_lz78_decode(const char* phrases, char** output) {
  return guarded([&] {
    need(phrases, "phrases");
    std::vector<Lz78Pair> pairs;
    std::string_view rest(phrases);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto colon = item.find(':');
      if (colon == std::string_view::npos || colon + 2 != item.size() || (item.back() != '0' && item.back() != '1')) {
        fail(ErrorKind::Parse, "bad phrase '" + std::string(item) + "'");
      }
      Lz78Pair pair{};
      pair.pointer = std::stoull(std::string(item.substr(0, colon)));
      pair.bit = static_cast<std::uint8_t>(item.back() - '0');
      pairs.push_back(pair);
    }
    put(output, lz78_decode(pairs).to_string());
  });
}

pd_status pd_dk_fst(const char* x, unsigned k, int* finite, size_t* value, char** witness_input,
                    char** machine_text) {
  return guarded([&] {
    const ComplexityResult r = dk_fst(bits(x, "x"), k);
    if (finite != nullptr) *finite = r.value ? 1 : 0;
    if (value != nullptr) *value = r.value.value_or(0);
    put(witness_input, r.value ? r.input.to_string() : std::string{});
    put(machine_text, r.machine);
  });
}

pd_status pd_dk_fst_bruteforce(const char* x, unsigned k, int* finite, size_t* value) {
  return guarded([&] {
    const ComplexityResult r = dk_fst_bruteforce(bits(x, "x"), k);
    if (finite != nullptr) *finite = r.value ? 1 : 0;
    if (value != nullptr) *value = r.value.value_or(0);
  });
}

pd_status pd_dk_pb_upper(const char* x, unsigned cap, size_t* value, char** witness_input, char** label) {
  return guarded([&] {
    const BitWord target = bits(x, "x");
    const ComplexityResult r = dk_pb_upper(target, default_pb_pool(), cap);
    if (value != nullptr) *value = r.value.value_or(0);
    put(witness_input, r.input.to_string());
    put(label, r.label);
  });
}

pd_status pd_enumerate(pd_machine_kind kind, unsigned k, char** lines, size_t* count) {
  return guarded([&] {
    std::string text;
    size_t n = 0;
    if (kind == PD_MACHINE_FST) {
      for (const auto& e : enumerate_fst(k)) {
        text += code_to_hex(e.code) + '\n';
        ++n;
      }
    } else if (kind == PD_MACHINE_PB) {
      for (const auto& e : enumerate_pb(k)) {
        text += code_to_hex(e.code) + '\n';
        ++n;
      }
    } else {
      fail(ErrorKind::InvalidArgument, "only FST and PB machines are enumerated");
    }
    put(lines, text);
    if (count != nullptr) *count = n;
  });
}

void pd_source_params_init(pd_source_params* params) {
  if (params == nullptr) return;
  params->kind = "champernowne";
  params->k = 0;
  params->v = 0;
  params->seed = 1;
  params->pattern = "01";
  params->base = "champernowne";
  params->samples = 64;
  params->fixed_seed = 0;
}

pd_status pd_source_create(const pd_source_params* params, pd_source** out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    SourceSpec spec;
    if (params->kind != nullptr) spec.kind = params->kind;
    spec.k = params->k;
    spec.v = params->v;
    spec.seed = params->seed;
    if (params->pattern != nullptr) spec.pattern = params->pattern;
    if (params->base != nullptr) spec.base = params->base;
    spec.samples = params->samples;
    spec.fixed_seed = params->fixed_seed != 0;
    *out = new pd_source{make_source(spec)};
  });
}

void pd_source_free(pd_source* source) { delete source; }

pd_status pd_source_prefix(const pd_source* source, size_t n, char** out) {
  return guarded([&] {
    need(source, "source");
    put(out, source->b.source->prefix(n).to_string());
  });
}

pd_status pd_source_meta(const pd_source* source, size_t n, char** csv) {
  return guarded([&] {
    need(source, "source");
    put(csv, source->b.meta(n));
  });
}

pd_status pd_source_label(const pd_source* source, char** label) {
  return guarded([&] {
    need(source, "source");
    put(label, source->b.source->label());
  });
}

pd_status pd_source_deviation(const pd_source* source, size_t n, unsigned block, int64_t* num, int64_t* den) {
  return guarded([&] {
    need(source, "source");
    const Rational r = block_frequency_deviation(*source->b.source, n, block);
    if (num != nullptr) *num = r.num;
    if (den != nullptr) *den = r.den;
  });
}

pd_status pd_witness(const pd_source* source, size_t p, char** input, char** expected, char** machine_name) {
  return guarded([&] {
    need(source, "source");
    require(static_cast<bool>(source->b.witness), "no witness construction for " + source->b.source->label());
    const Witness w = source->b.witness(p);
    put(input, w.input.to_string());
    put(expected, w.expected.to_string());
    put(machine_name, w.machine);
  });
}

pd_status pd_witness_pref(const char* x, const char* z, char** input, char** expected) {
  return guarded([&] {
    const Witness w = witness_pref(bits(x, "x"), bits(z, "z"));
    put(input, w.input.to_string());
    put(expected, w.expected.to_string());
  });
}

void pd_profile_options_init(pd_profile_options* options) {
  if (options == nullptr) return;
  options->dk_k = -1;
  options->dk_max_n = 12;
  options->cprime = 0;
  options->cprime_m = 0;
  options->cprime_k = 0;
  options->cprime_v = 0;
  options->normality_block = 0;
  options->verify_witness = 1;
}

pd_status pd_profile(const pd_source* source, const size_t* n_list, size_t count, const pd_profile_options* options,
                     char** csv) {
  return guarded([&] {
    need(source, "source");
    const auto rows = profile(*source->b.source, n_list_of(n_list, count), config_of(*source, options));
    put(csv, emit_csv(rows));
  });
}

pd_status pd_sgl(const pd_source* source, const pd_machine* fst, const size_t* n_list, size_t count,
                 const pd_profile_options* options, char** base_csv, char** image_csv, pd_sgl_summary* summary) {
  return guarded([&] {
    need(source, "source");
    need(fst, "machine");
    const auto* m = std::get_if<FstMachine>(&fst->m);
    require(m != nullptr, "the SGL transducer must be an FST");
    const SglReport r = sgl_experiment(source->b.source, *m, n_list_of(n_list, count), config_of(*source, options));
    put(base_csv, emit_csv(r.base));
    put(image_csv, emit_csv(r.image));
    if (summary != nullptr) {
      summary->beta = r.beta;
      summary->base_tail_gap = r.base_tail_gap;
      summary->image_tail_gap = r.image_tail_gap;
      summary->stall = r.stall;
      summary->max_output = r.max_output;
      summary->retained = r.retained ? 1 : 0;
    }
  });
}

}  // extern "C"
