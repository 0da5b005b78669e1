#include "pdepth/machine_text.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "pdepth/errors.hpp"

namespace pdepth {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

std::uint64_t to_uint(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) parse_error(line, "expected a number, got '" + std::string(s) + "'");
  return v;
}

BitWord to_word(std::string_view s, std::size_t line) {
  if (s == "-") return {};
  try {
    return BitWord::parse(s);
  } catch (const Error&) {
    parse_error(line, "expected bits or '-', got '" + std::string(s) + "'");
  }
}

std::string word_text(const BitWord& w) { return w.empty() ? "-" : w.to_string(); }

struct Header {
  std::string kind;
  std::optional<std::size_t> states;
  std::optional<std::size_t> pebbles;
  std::optional<unsigned> budget;
  std::vector<std::size_t> finals;
};

struct Line {
  std::size_t number;
  std::vector<std::string_view> fields;
};

}  // namespace

AnyMachine parse_machine(std::string_view text) {
  Header h;
  std::vector<Line> transitions;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto f = split_ws(line);
    if (f.empty()) continue;
    if (h.kind.empty()) {
      if (f.size() != 1 || (f[0] != "fst" && f[0] != "pb" && f[0] != "pdc" && f[0] != "updc")) {
        parse_error(number, "first line must be fst, pb, pdc or updc");
      }
      h.kind = f[0];
      continue;
    }
    if (f[0] == "states" && f.size() == 2) {
      h.states = to_uint(f[1], number);
    } else if (f[0] == "start" && f.size() == 2) {
      if (to_uint(f[1], number) != 0) parse_error(number, "the start state must be 0");
    } else if (f[0] == "pebbles" && f.size() == 2) {
      h.pebbles = to_uint(f[1], number);
    } else if (f[0] == "lambda-budget" && f.size() == 2) {
      h.budget = static_cast<unsigned>(to_uint(f[1], number));
    } else if (f[0] == "finals") {
      for (std::size_t i = 1; i < f.size(); ++i) h.finals.push_back(to_uint(f[i], number));
    } else if (f[0] == "t") {
      transitions.push_back({number, std::move(f)});
    } else {
      parse_error(number, "unknown directive '" + std::string(f[0]) + "'");
    }
  }
  if (h.kind.empty()) fail(ErrorKind::Parse, "empty machine description");
  if (!h.states) fail(ErrorKind::Parse, "missing 'states' line");
  const std::size_t n = *h.states;
  auto state = [&](std::string_view s, std::size_t line) {
    const auto q = to_uint(s, line);
    if (q >= n) parse_error(line, "state " + std::string(s) + " out of range");
    return static_cast<StateId>(q);
  };

  try {
    if (h.kind == "fst") {
      FstMachine m(n);
      std::vector<std::uint8_t> seen(2 * n, 0);
      for (const auto& [line, f] : transitions) {
        if (f.size() != 5) parse_error(line, "fst transitions have the form 't q bit next out'");
        const StateId q = state(f[1], line);
        if (f[2] != "0" && f[2] != "1") parse_error(line, "bit must be 0 or 1");
        const std::uint8_t b = f[2] == "1";
        if (seen[2 * q + b]++) parse_error(line, "duplicate transition");
        m.set(q, b, state(f[3], line), to_word(f[4], line));
      }
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
          fail(ErrorKind::Parse, "fst transition missing for state " + std::to_string(i / 2) + " bit " + std::to_string(i % 2));
        }
      }
      return m;
    }
    if (h.kind == "pb") {
      if (!h.pebbles) fail(ErrorKind::Parse, "missing 'pebbles' line");
      const auto k = static_cast<unsigned>(*h.pebbles);
      if (k > PebbleMachine::kMaxPebbles) fail(ErrorKind::Parse, "at most 4 pebbles are supported");
      PebbleMachine m(n, k);
      for (auto q : h.finals) {
        if (q >= n) fail(ErrorKind::Parse, "final state out of range");
        m.set_final(static_cast<StateId>(q));
      }
      for (const auto& [line, f] : transitions) {
        if (f.size() != 7) parse_error(line, "pb transitions have the form 't q sym mask next act out'");
        const StateId q = state(f[1], line);
        Sym sym;
        if (f[2] == "0") sym = Sym::Zero;
        else if (f[2] == "1") sym = Sym::One;
        else if (f[2] == "L") sym = Sym::Left;
        else if (f[2] == "R") sym = Sym::Right;
        else parse_error(line, "symbol must be 0, 1, L or R");
        std::uint32_t mask = 0;
        if (k == 0) {
          if (f[3] != "-" && f[3] != "0") parse_error(line, "mask must be '-' for 0 pebbles");
        } else {
          if (f[3].size() != k) parse_error(line, "mask must have one digit per pebble");
          for (unsigned j = 0; j < k; ++j) {
            if (f[3][j] == '1') mask |= 1u << j;
            else if (f[3][j] != '0') parse_error(line, "mask digits must be 0 or 1");
          }
        }
        PbAction act;
        if (f[5] == "+1") act = PbAction::Right;
        else if (f[5] == "-1") act = PbAction::Left;
        else if (f[5] == "push") act = PbAction::Push;
        else if (f[5] == "pop") act = PbAction::Pop;
        else parse_error(line, "action must be +1, -1, push or pop");
        if (m.is_final(q)) parse_error(line, "final states have no transitions");
        if (m.at(q, sym, mask).defined) parse_error(line, "duplicate transition");
        m.set(q, sym, mask, state(f[4], line), act, to_word(f[6], line));
      }
      return m;
    }
    const bool unary = h.kind == "updc";
    if (!h.budget) fail(ErrorKind::Parse, "missing 'lambda-budget' line");
    PdcMachine m(n, *h.budget, unary);
    auto stack_sym = [&](char c, std::size_t line) {
      if (c == '0') return StackSym::Zero;
      if (c == '1') return StackSym::One;
      if (c == 'Z') return StackSym::Bottom;
      parse_error(line, std::string("stack symbol must be 0, 1 or Z, got '") + c + "'");
    };
    for (const auto& [line, f] : transitions) {
      if (f.size() != 7) parse_error(line, "pdc transitions have the form 't q in top next push out'");
      const StateId q = state(f[1], line);
      PdInput in;
      if (f[2] == "0") in = PdInput::Zero;
      else if (f[2] == "1") in = PdInput::One;
      else if (f[2] == "~") in = PdInput::Lambda;
      else parse_error(line, "input must be 0, 1 or ~");
      if (f[3].size() != 1) parse_error(line, "top must be a single symbol");
      const StackSym top = stack_sym(f[3][0], line);
      std::vector<StackSym> push;
      if (f[5] != "-") {
        for (char c : f[5]) push.push_back(stack_sym(c, line));
      }
      if (m.at(q, in, top).defined) parse_error(line, "duplicate transition");
      m.set(q, in, top, state(f[4], line), std::move(push), to_word(f[6], line));
    }
    return m;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(ErrorKind::Parse, e.what());
  }
}

std::string to_text(const FstMachine& m) {
  std::ostringstream os;
  os << "fst\nstates " << m.num_states() << "\nstart 0\n";
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::uint8_t b = 0; b <= 1; ++b) {
      os << "t " << q << ' ' << int(b) << ' ' << m.next(q, b) << ' ' << word_text(m.output(q, b)) << '\n';
    }
  }
  return os.str();
}

std::string to_text(const PebbleMachine& m) {
  std::ostringstream os;
  os << "pb\nstates " << m.num_states() << "\nstart 0\nfinals";
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (m.is_final(q)) os << ' ' << q;
  }
  os << "\npebbles " << m.pebbles() << '\n';
  static const char* syms[] = {"0", "1", "L", "R"};
  static const char* acts[] = {"+1", "-1", "push", "pop"};
  const std::uint32_t masks = 1u << m.pebbles();
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::uint32_t s = 0; s < 4; ++s) {
      for (std::uint32_t mask = 0; mask < masks; ++mask) {
        const auto& t = m.at(q, static_cast<Sym>(s), mask);
        if (!t.defined) continue;
        os << "t " << q << ' ' << syms[s] << ' ';
        if (m.pebbles() == 0) os << '-';
        for (unsigned j = 0; j < m.pebbles(); ++j) os << ((mask >> j) & 1u);
        os << ' ' << t.next << ' ' << acts[static_cast<int>(t.action)] << ' ' << word_text(m.output_of(t)) << '\n';
      }
    }
  }
  return os.str();
}

std::string to_text(const PdcMachine& m) {
  std::ostringstream os;
  os << (m.unary() ? "updc" : "pdc") << "\nstates " << m.num_states() << "\nstart 0\nlambda-budget " << m.lambda_budget()
     << '\n';
  static const char* ins[] = {"0", "1", "~"};
  static const char syms[] = {'0', '1', 'Z'};
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::uint32_t in = 0; in < 3; ++in) {
      for (std::uint32_t top = 0; top < 3; ++top) {
        const auto& t = m.at(q, static_cast<PdInput>(in), static_cast<StackSym>(top));
        if (!t.defined) continue;
        os << "t " << q << ' ' << ins[in] << ' ' << syms[top] << ' ' << t.next << ' ';
        if (t.push.empty()) os << '-';
        for (auto s : t.push) os << syms[static_cast<int>(s)];
        os << ' ' << word_text(t.output) << '\n';
      }
    }
  }
  return os.str();
}

std::string machine_to_text(const AnyMachine& machine) {
  return std::visit([](const auto& m) { return to_text(m); }, machine);
}

}  // namespace pdepth
