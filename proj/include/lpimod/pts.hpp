#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lpimod/syntax.hpp"

namespace lpimod {

inline constexpr long long default_fuel = 100000;

// Reduction budget shared across one top-level judgment: one unit per head
// beta or rewrite step attempted. Running dry is reported as Unknown, which
// is never conflated with a definite typing error.
struct Fuel {
  long long remaining = default_fuel;
  bool spend() {
    if (remaining <= 0) return false;
    --remaining;
    return true;
  }
  bool exhausted() const { return remaining <= 0; }
};

enum class Conv { Yes, No, Unknown };

struct Typed { TermPtr type; };
struct Ill {
  std::string rule;    // name of the violated typing rule
  std::string detail;  // human-readable explanation, offending subterm included
};
struct Unknown {};  // fuel exhausted before a verdict

using CheckOutcome = std::variant<Typed, Ill, Unknown>;

inline bool is_typed(const CheckOutcome& o) { return std::holds_alternative<Typed>(o); }
inline bool is_ill(const CheckOutcome& o) { return std::holds_alternative<Ill>(o); }
inline bool is_unknown(const CheckOutcome& o) { return std::holds_alternative<Unknown>(o); }
inline const TermPtr& typed_type(const CheckOutcome& o) { return std::get<Typed>(o).type; }
inline const Ill& ill_of(const CheckOutcome& o) { return std::get<Ill>(o); }

// Witness of a positive conversion verdict: step chains from each input to a
// shared reduct (endpoints included; adjacent entries are one reduction step
// or alpha-equal). Recorded only when requested, for replay in tests.
struct ConvTrace {
  std::vector<TermPtr> left;
  std::vector<TermPtr> right;
};

// One leftmost-outermost beta step, if any redex exists.
std::optional<TermPtr> beta_step(const TermPtr& t);
// Every term reachable from t by exactly one beta step (any position).
std::vector<TermPtr> one_step_reducts(const TermPtr& t);
// Weak head normal form under beta; nullopt when fuel runs out.
std::optional<TermPtr> whnf_beta(const TermPtr& t, Fuel& fuel);
// Full beta-normal form; nullopt when fuel runs out.
std::optional<TermPtr> normalize(const TermPtr& t, Fuel& fuel);

// Beta-conversion check: weak-head normalize both sides, compare heads,
// recurse. Yes and No are definite; Unknown means the budget ran out first.
Conv convertible(const TermPtr& a, const TermPtr& b, Fuel& fuel, ConvTrace* trace = nullptr);

struct TopSortItself { std::string sort; };  // the term is a sort with no axiom
using ClassifyOutcome = std::variant<std::string, TopSortItself, Ill, Unknown>;

inline bool classified_as(const ClassifyOutcome& o, const std::string& s) {
  const auto* name = std::get_if<std::string>(&o);
  return name && *name == s;
}

struct WfReport {
  bool ok = false;
  bool unknown = false;   // fuel ran out while checking
  std::string var;        // offending declaration, when not ok
  std::string rule;
  std::string detail;
};

// Type synthesis for the pure type system given by `spec`. The returned type
// is beta-normalized when leftover fuel allows, otherwise as inferred.
CheckOutcome infer(const Specification& spec, const Context& ctx, const TermPtr& term,
                   Fuel& fuel);
// Checks term against an expected type (which must itself be a ctx-type);
// mismatches cite the Conversion rule with both types printed.
CheckOutcome check(const Specification& spec, const Context& ctx, const TermPtr& term,
                   const TermPtr& against, Fuel& fuel);
WfReport wf_context(const Specification& spec, const Context& ctx, Fuel& fuel);
// The sort of a ctx-type, or TopSortItself when the term is an axiomless sort.
ClassifyOutcome classify_type(const Specification& spec, const Context& ctx, const TermPtr& t,
                              Fuel& fuel);

}  // namespace lpimod
