#pragma once

#include <iosfwd>
#include <string>

#include "bh/verifier.hpp"

namespace bh {

// Form-tensor text format:
//
//   bhform 1
//   m <degree>
//   N <dimension>
//   field real|complex
//   layout row-major
//   <N^m entries, one per line; complex entries as "re im">
//
// Entries are ordered lexicographically on (i1, ..., im). Blank lines and
// lines starting with '#' are ignored.

MultilinearForm read_form(std::istream& in, std::size_t entry_budget = kDefaultEntryBudget);
MultilinearForm read_form_file(const std::string& path,
                               std::size_t entry_budget = kDefaultEntryBudget);

/// Writes with 17 significant digits, so read_form(write_form(f)) == f.
void write_form(std::ostream& out, const MultilinearForm& form);

}  // namespace bh
