#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpimod/pts.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

// A rewrite rule [delta] lhs --> rhs. Rule variables live in `delta` and
// appear as free variables in both sides. Accepted left-hand sides are
// left-linear, first-order, applied-constant patterns: a constant applied to
// zero or more arguments built from constants, rule variables and
// applications, each rule variable occurring exactly once.
struct RewriteRule {
  std::string name;
  Context delta;
  TermPtr lhs;
  TermPtr rhs;
};

// Global declarations plus rewrite rules. Constants are a namespace separate
// from context variables; rules are tried in signature order.
struct Signature {
  Context decls;
  std::vector<RewriteRule> rules;

  bool declares(const std::string& name) const { return decls.contains(name); }
  const TermPtr* lookup(const std::string& name) const { return decls.lookup(name); }
};

// The fixed base specification of the lambda-Pi calculus: sorts Type and
// Kind, axiom Type : Kind, rules (Type, Type) and (Type, Kind).
const Specification& lpi_base_spec();

using MatchBindings = std::map<std::string, TermPtr>;

// Syntactic first-order match of a pattern against a subject. Returns the
// most general binding of the pattern's rule variables, or nothing.
std::optional<MatchBindings> match_pattern(const TermPtr& pattern, const TermPtr& subject);

// One rewrite step: first rule (signature order) at the leftmost-outermost
// matching position.
std::optional<TermPtr> rewrite_step(const Signature& sig, const TermPtr& t);
// Every term reachable by exactly one beta or rewrite step (any position).
std::vector<TermPtr> one_step_reducts_mod(const Signature& sig, const TermPtr& t);
// Weak head normal form under beta and the signature's rules. Rewrite steps
// are attempted only once beta exposes a constant head; matching is allowed
// to weak-head normalize subject positions where the pattern demands
// structure.
std::optional<TermPtr> whnf_mod(const Signature& sig, const TermPtr& t, Fuel& fuel);
std::optional<TermPtr> normalize_mod(const Signature& sig, const TermPtr& t, Fuel& fuel);

// Conversion modulo beta and the signature's rewrite rules.
Conv convertible_mod(const Signature& sig, const TermPtr& a, const TermPtr& b, Fuel& fuel);

// Typing for the lambda-Pi calculus modulo the signature's rules: the same
// rules as the pure system over lpi_base_spec(), except that constants are
// looked up in the signature and conversion is taken modulo rewriting.
CheckOutcome infer_mod(const Signature& sig, const Context& ctx, const TermPtr& term,
                       Fuel& fuel);
CheckOutcome check_mod(const Signature& sig, const Context& ctx, const TermPtr& term,
                       const TermPtr& against, Fuel& fuel);
WfReport wf_context_mod(const Signature& sig, const Context& ctx, Fuel& fuel);
ClassifyOutcome classify_type_mod(const Signature& sig, const Context& ctx, const TermPtr& t,
                                  Fuel& fuel);

// Checks one candidate rule against the signature built so far: pattern
// shape, free-variable containment, and that both sides inhabit one common
// type under the rule's variable context. Typed(A) reports that type.
CheckOutcome validate_rewrite_rule(const Signature& sig, const RewriteRule& rule, Fuel& fuel);
// Well-formedness of declarations plus incremental validation of every rule.
WfReport validate_signature(const Signature& sig, Fuel& fuel);

// A term is at the level of Kind (resp. Type) when its type is itself typed
// by Kind (resp. Type). Objects sit at the level of Type, type families at
// the level of Kind.
enum class Level { TypeLevel, KindLevel };
using LevelOutcome = std::variant<Level, Ill, Unknown>;
LevelOutcome level_of(const Signature& sig, const Context& ctx, const TermPtr& t, Fuel& fuel);

}  // namespace lpimod
