#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "lpimod/lpi.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), col(col_) {}
};

// Identifier classification while parsing: sort first, then declared
// constant, then binder-bound variable, then free variable. Sorts are not
// keywords; they come from the active specification.
struct SymbolTable {
  const Specification* spec = nullptr;
  const Signature* sig = nullptr;
};

TermPtr parse_term(std::string_view text, const SymbolTable& symbols);
Specification parse_spec(std::string_view text);
// Syntax only; run validate_signature to certify the rules. Declarations and
// rules are both terminated by '.'; rule variable contexts sit in brackets.
Signature parse_signature(std::string_view text);
// `name : type.` entries; later entries may mention earlier names.
Context parse_context(std::string_view text, const SymbolTable& symbols);

}  // namespace lpimod
