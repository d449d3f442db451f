#pragma once

// Potential configuration files (JSON):
//   {
//     "deltas":  [{"c": -2.0, "y": 0.0}, ...],
//     "regular": {"kind": "box", "params": [height, lo, hi]},
//     "gamma":   1.6
//   }
// kinds: "zero" (default), "box" [height, lo, hi],
//        "gaussian" [amplitude, center, width], "exponential" [amplitude, rate],
//        "table" {"x": [...], "v": [...]}; an optional "support" number is
//        checked against the natural support radius.

#include <string>

#include "scat1d/potential.hpp"

namespace scat1d {

// Throws std::runtime_error with field diagnostics on malformed input.
PotentialSpec potential_from_json(const std::string& text);
PotentialSpec load_potential_file(const std::string& path);

std::string potential_to_json(const PotentialSpec& spec);

}  // namespace scat1d
