#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "herder/problem.hpp"

namespace herder {

// Reads the DMKP text format (see write_dmkp for the canonical layout).
// Throws ParseError with a line number on malformed input.
DmkpInstance parse_dmkp(std::istream& in);
DmkpInstance load_dmkp_file(const std::string& path);

// Canonical textual form; parse_dmkp inverts it byte-exactly.
//
//   DMKP 1
//   name <identifier>
//   delta <decimal>
//   states <count>
//   items <n>
//   knapsacks <m>
//   state 0
//   <n profits>
//   <m lines of n weights>
//   <m capacities>
//   state 1
//   ...
void write_dmkp(const DmkpInstance& instance, std::ostream& out);
std::string write_dmkp_string(const DmkpInstance& instance);
void save_dmkp_file(const DmkpInstance& instance, const std::string& path);

// Derives state s+1 from state s by scaling every profit, weight, and
// capacity with an independent uniform factor from [1-delta, 1+delta],
// rounded to nearest; profits and capacities floor at 1, weights at 0.
// Identical (base, delta, num_changes, seed) always yields an identical
// instance. The published dynamic benchmark generator is external to this
// project; this is a self-contained substitute that perturbs all three value
// families each state.
DmkpInstance generate_dmkp(const MkpState& base, double delta,
                           std::size_t num_changes, std::uint64_t seed,
                           std::string name = "");

// Lines of "<state_index> <profit>"; '#' starts a comment line.
std::map<std::size_t, std::int64_t> load_best_known(std::istream& in);
std::map<std::size_t, std::int64_t> load_best_known_file(const std::string& path);

void write_best_known(const std::map<std::size_t, std::int64_t>& best_known,
                      std::ostream& out, const std::string& header_comment = "");
void save_best_known_file(const std::map<std::size_t, std::int64_t>& best_known,
                          const std::string& path,
                          const std::string& header_comment = "");

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace herder
