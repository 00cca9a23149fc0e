#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lpimod {

struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

// Terms of both calculi share one grammar. Bound variables are stored
// positionally (de Bruijn indices, innermost binder = 0); binders carry a
// printable name hint that never participates in equality. Free variables and
// global constants are named. A term with no dangling indices is "locally
// closed"; every public operation expects and preserves local closure.
struct Sort { std::string name; };
struct Var { std::string name; };        // free variable (context entry)
struct BoundVar { std::size_t index; };  // positional reference to a binder
struct Const { std::string name; };      // signature constant
struct App { TermPtr fn; TermPtr arg; };
struct Abs { std::string hint; TermPtr ann; TermPtr body; };
struct Prod { std::string hint; TermPtr dom; TermPtr cod; };

struct TermNode {
  std::variant<Sort, Var, BoundVar, Const, App, Abs, Prod> data;

  TermNode(std::variant<Sort, Var, BoundVar, Const, App, Abs, Prod> d) : data(std::move(d)) {}
  TermNode(TermNode&&) = default;
  TermNode(const TermNode&) = default;
  // Dismantles uniquely-owned descendants iteratively: reduction residues can
  // nest tens of thousands deep, far past what destructor recursion survives.
  ~TermNode();
};

TermPtr sort(std::string name);
TermPtr var(std::string name);
TermPtr bound(std::size_t index);
TermPtr constant(std::string name);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr app(TermPtr fn, const std::vector<TermPtr>& args);
TermPtr abs(std::string hint, TermPtr ann, TermPtr body);
TermPtr prod(std::string hint, TermPtr dom, TermPtr cod);
// Non-dependent product A -> B (the binder is unused in B).
TermPtr arrow(TermPtr dom, TermPtr cod);
// Binder constructors that close an open body over a named variable.
TermPtr abs_named(const std::string& name, TermPtr ann, TermPtr body);
TermPtr prod_named(const std::string& name, TermPtr dom, TermPtr cod);

template <class T>
const T* as(const TermPtr& t) {
  return t ? std::get_if<T>(&t->data) : nullptr;
}

// Structural equality up to binder name hints (alpha-equivalence: bound
// occurrences are positional, so hints are the only thing ignored).
bool alpha_eq(const TermPtr& a, const TermPtr& b);

std::set<std::string> free_vars(const TermPtr& t);
bool occurs_free(const TermPtr& t, const std::string& name);
bool uses_bound(const TermPtr& t, std::size_t index);
bool is_locally_closed(const TermPtr& t);

// Capture-avoiding substitution of a free variable. `value` must be locally
// closed; positional binders make capture impossible, so no renaming happens.
TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& value);

// Replace index 0 of a binder body with a locally closed value.
TermPtr instantiate(const TermPtr& body, const TermPtr& value);
// Abstract a free variable into index 0 (inverse of instantiate).
TermPtr close_over(const TermPtr& t, const std::string& name);

// Fresh free-variable names for opening binders. The generated names contain
// a '$', which the surface syntax cannot produce, so they are always fresh
// with respect to parsed input.
std::string fresh_name(const std::string& hint);
// Opens a binder body: picks a fresh name from the hint, instantiates.
std::pair<std::string, TermPtr> open_binder(const std::string& hint, const TermPtr& body);

// The reserved sort name introduced by minimal completion. Unparseable on
// purpose: user-written specifications can never mention it.
inline constexpr std::string_view tau_sort_name = "@tau";

// A specification (S, A, R): sorts, axioms s1 : s2, rules (s1, s2) ~> s3.
// Axioms and rules are maps, so every specification is functional by
// construction; validate_spec reports the remaining invariants.
struct Specification {
  std::vector<std::string> sorts;  // declaration order, no duplicates
  std::map<std::string, std::string> axioms;
  std::map<std::pair<std::string, std::string>, std::string> rules;

  bool has_sort(const std::string& s) const;
  std::optional<std::string> axiom(const std::string& s) const;
  std::optional<std::string> rule(const std::string& s1, const std::string& s2) const;
};

struct SpecReport {
  std::vector<std::string> errors;     // dangling sort references, duplicates
  bool functional = true;              // by representation; reported anyway
  bool full = false;                   // every sort pair has a rule
  std::vector<std::string> top_sorts;  // sorts with no axiom
  bool ok() const { return errors.empty(); }
};
SpecReport validate_spec(const Specification& spec);

// Ordered typing context. Entry types may mention earlier entries as free
// variables; well-formedness is a typing question, not a syntactic one.
struct Context {
  std::vector<std::pair<std::string, TermPtr>> decls;

  bool contains(const std::string& name) const;
  const TermPtr* lookup(const std::string& name) const;
  void push(std::string name, TermPtr type);
  void pop();
  std::size_t size() const { return decls.size(); }
};

}  // namespace lpimod
