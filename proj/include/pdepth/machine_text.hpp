#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "pdepth/fst.hpp"
#include "pdepth/pebble.hpp"
#include "pdepth/pushdown.hpp"

namespace pdepth {

using AnyMachine = std::variant<FstMachine, PebbleMachine, PdcMachine>;

/// Line-oriented machine files. '#' starts a comment; '-' is the empty word.
///   fst: "fst", "states N", "start 0", "t q bit next out"
///   pb:  "pb", "states N", "start 0", "finals ...", "pebbles k",
///        "t q sym mask next act out" with sym in {0,1,L,R}, act in
///        {+1,-1,push,pop}; mask lists b[0..k-1] ('-' when k = 0)
///   pdc/updc: "pdc", "states N", "start 0", "lambda-budget c",
///        "t q in top next push out" with in in {0,1,~}, top in {0,1,Z}
///        and push written top first
AnyMachine parse_machine(std::string_view text);
std::string machine_to_text(const AnyMachine& machine);

std::string to_text(const FstMachine& m);
std::string to_text(const PebbleMachine& m);
std::string to_text(const PdcMachine& m);

}  // namespace pdepth
