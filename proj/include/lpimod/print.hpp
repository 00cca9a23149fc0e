#pragma once

#include <string>

#include "lpimod/lpi.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

// Name pools the printer avoids when choosing display names for binders:
// a binder printed with a sort or constant name would re-parse as the wrong
// node kind. Both pointers optional.
struct PrintTables {
  const Specification* spec = nullptr;
  const Signature* sig = nullptr;
};

std::string to_string(const TermPtr& t, const PrintTables& tables = {});
// SpecFile syntax: sort / axiom / rule lines.
std::string to_string(const Specification& spec);
// SignatureFile syntax: declarations then rules, each ending in '.'.
std::string to_string(const Signature& sig);
// Context entries, one `name : type.` line each.
std::string to_string(const Context& ctx, const PrintTables& tables = {});

std::string to_string(const CheckOutcome& outcome, const PrintTables& tables = {});

}  // namespace lpimod
