#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "parclone/relation.hpp"

namespace parclone {

// Partial function text format:
//   pfn k=<k> n=<n>
//   <c1 c2 ... cn> -> <v>        (one line per defined cell, any order)
// Omitted cells are undefined. The writer emits cells in ascending index
// order; the parser accepts any order but rejects duplicates, out-of-range
// values and wrong coordinate counts.
std::string format_pfn(const PartialFn& f);
PartialFn parse_pfn(std::string_view text);

// Blank-line separated pfn blocks.
std::string format_pfn_blocks(std::span<const PartialFn> fns);
std::vector<PartialFn> parse_pfn_blocks(std::string_view text);

std::vector<PartialFn> load_pfn_file(const std::string& path);
void save_pfn_file(const std::string& path, std::span<const PartialFn> fns);

// Relation text format:
//   rel k=<k> h=<h>
//   <c1 ... ch>                  (one tuple per line)
std::string format_relation(const Relation& rho);
Relation parse_relation(std::string_view text);

// Accepts either a builtin relation name or a path to a relation text file.
Relation relation_from_spec(const std::string& name_or_path);

}  // namespace parclone
