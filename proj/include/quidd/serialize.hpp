#pragma once

#include <iosfwd>
#include <string>

#include "quidd/quidd.hpp"

namespace quidd {

/// Line-oriented text form of a DD:
///   quidd v1 kind=<state|operator> qubits=<n> root=<id>
///   T <id> <re> <im>
///   N <id> <varkind><qubit> <then-id> <else-id>
/// Terminals first, then internal nodes children-before-parents, ids dense
/// from 0 in emission order. Values carry 17 significant digits so the
/// round trip reproduces identical structure.
void write_dd(std::ostream& os, const QuIDD& q);
std::string write_dd_string(const QuIDD& q);

/// Rebuilds the DD through the manager, so the result is canonical.
/// Throws ParseError (with line number) on malformed input.
QuIDD read_dd(std::istream& is, DDManager& m);
QuIDD read_dd_string(const std::string& text, DDManager& m);

}  // namespace quidd
