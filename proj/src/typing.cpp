#include <string>
#include <variant>

#include "lpimod/lpi.hpp"
#include "lpimod/print.hpp"
#include "lpimod/pts.hpp"
#include "lpimod/syntax.hpp"
#include "reduce.hpp"

namespace lpimod {

const Specification& lpi_base_spec() {
  static const Specification spec = [] {
    Specification s;
    s.sorts = {"Type", "Kind"};
    s.axioms = {{"Type", "Kind"}};
    s.rules = {{{"Type", "Type"}, "Type"}, {{"Type", "Kind"}, "Kind"}};
    return s;
  }();
  return spec;
}

namespace {

struct CtxGuard {
  Context& ctx;
  CtxGuard(Context& c, std::string name, TermPtr type) : ctx(c) {
    ctx.push(std::move(name), std::move(type));
  }
  ~CtxGuard() { ctx.pop(); }
  CtxGuard(const CtxGuard&) = delete;
  CtxGuard& operator=(const CtxGuard&) = delete;
};

struct NotASort {
  TermPtr type;  // the weak-head normal non-sort type
};

// One checker serves both calculi: sig == nullptr gives the pure system over
// `spec`, otherwise constants come from sig and conversion runs modulo its
// rules (the spec is then the fixed base of the lambda-Pi calculus).
struct Checker {
  const Specification& spec;
  const Signature* sig;
  Fuel& fuel;
  Context ctx;

  std::string show(const TermPtr& t) const {
    return to_string(t, PrintTables{&spec, sig});
  }

  CheckOutcome infer(const TermPtr& t) {
    if (const auto* s = as<Sort>(t)) {
      if (auto ax = spec.axiom(s->name)) return Typed{sort(*ax)};
      if (!spec.has_sort(s->name))
        return Ill{"Sort", "unknown sort `" + s->name + "`"};
      return Ill{"Sort", "no axiom (" + s->name + " : ·)"};
    }
    if (const auto* v = as<Var>(t)) {
      if (const TermPtr* ty = ctx.lookup(v->name)) return Typed{*ty};
      return Ill{"Variable", "unbound variable `" + v->name + "`"};
    }
    if (as<BoundVar>(t)) return Ill{"Variable", "dangling bound variable"};
    if (const auto* c = as<Const>(t)) {
      if (sig)
        if (const TermPtr* ty = sig->lookup(c->name)) return Typed{*ty};
      return Ill{"Variable", "undeclared constant `" + c->name + "`"};
    }
    if (const auto* a = as<App>(t)) {
      CheckOutcome fo = infer(a->fn);
      if (!is_typed(fo)) return fo;
      auto fw = detail::whnf(sig, typed_type(fo), fuel, nullptr);
      if (!fw) return Unknown{};
      const auto* p = as<Prod>(*fw);
      if (!p)
        return Ill{"Application", "cannot apply `" + show(a->fn) + "`: its type `" + show(*fw) +
                                      "` is not a product"};
      CheckOutcome ao = infer(a->arg);
      if (!is_typed(ao)) return ao;
      Conv c = detail::conv(sig, typed_type(ao), p->dom, fuel, nullptr);
      if (c == Conv::Unknown) return Unknown{};
      if (c == Conv::No)
        return Ill{"Application", "argument `" + show(a->arg) + "` has type `" +
                                      show(typed_type(ao)) + "`, expected `" + show(p->dom) + "`"};
      return Typed{instantiate(p->cod, a->arg)};
    }
    if (const auto* l = as<Abs>(t)) {
      auto s1 = sort_of(l->ann, "domain");
      if (const auto* bad = std::get_if<Ill>(&s1)) return *bad;
      if (std::holds_alternative<Unknown>(s1)) return Unknown{};
      auto [x, body] = open_binder(l->hint, l->body);
      CtxGuard guard(ctx, x, l->ann);
      CheckOutcome bo = infer(body);
      if (!is_typed(bo)) return bo;
      const TermPtr& b = typed_type(bo);
      auto s2 = sort_of(b, "codomain");
      if (const auto* bad = std::get_if<Ill>(&s2)) return *bad;
      if (std::holds_alternative<Unknown>(s2)) return Unknown{};
      auto rule = spec.rule(std::get<std::string>(s1), std::get<std::string>(s2));
      if (!rule)
        return Ill{"Product", "no rule (" + std::get<std::string>(s1) + ", " +
                                  std::get<std::string>(s2) + ", ·)"};
      return Typed{prod(l->hint, l->ann, close_over(b, x))};
    }
    const auto* p = as<Prod>(t);
    auto s1 = sort_of(p->dom, "domain");
    if (const auto* bad = std::get_if<Ill>(&s1)) return *bad;
    if (std::holds_alternative<Unknown>(s1)) return Unknown{};
    auto [x, cod] = open_binder(p->hint, p->cod);
    CtxGuard guard(ctx, x, p->dom);
    auto s2 = sort_of(cod, "codomain");
    if (const auto* bad = std::get_if<Ill>(&s2)) return *bad;
    if (std::holds_alternative<Unknown>(s2)) return Unknown{};
    auto rule = spec.rule(std::get<std::string>(s1), std::get<std::string>(s2));
    if (!rule)
      return Ill{"Product", "no rule (" + std::get<std::string>(s1) + ", " +
                                std::get<std::string>(s2) + ", ·)"};
    return Typed{sort(*rule)};
  }

  // The sort classifying t, for binder premises: infer, weak-head normalize,
  // expect a sort. Non-sort results violate the Product premise.
  std::variant<std::string, Ill, Unknown> sort_of(const TermPtr& t, const std::string& role) {
    CheckOutcome o = infer(t);
    if (const auto* bad = std::get_if<Ill>(&o)) return *bad;
    if (std::holds_alternative<Unknown>(o)) return Unknown{};
    auto w = detail::whnf(sig, typed_type(o), fuel, nullptr);
    if (!w) return Unknown{};
    if (const auto* s = as<Sort>(*w)) return s->name;
    return Ill{"Product", role + " `" + show(t) + "` has type `" + show(*w) +
                              "`, which is not a sort"};
  }

  ClassifyOutcome classify(const TermPtr& t) {
    if (const auto* s = as<Sort>(t))
      if (spec.has_sort(s->name) && !spec.axiom(s->name)) return TopSortItself{s->name};
    CheckOutcome o = infer(t);
    if (const auto* bad = std::get_if<Ill>(&o)) return *bad;
    if (std::holds_alternative<Unknown>(o)) return Unknown{};
    auto w = detail::whnf(sig, typed_type(o), fuel, nullptr);
    if (!w) return Unknown{};
    if (const auto* s = as<Sort>(*w)) return s->name;
    return Ill{"Conversion", "`" + show(t) + "` is not a ctx-type: its type `" + show(*w) +
                                 "` is not a sort"};
  }

  CheckOutcome check(const TermPtr& t, const TermPtr& against) {
    ClassifyOutcome co = classify(against);
    if (const auto* bad = std::get_if<Ill>(&co))
      return Ill{"Conversion", "expected type is not a ctx-type: " + bad->detail};
    if (std::holds_alternative<Unknown>(co)) return Unknown{};
    CheckOutcome o = infer(t);
    if (!is_typed(o)) return o;
    Conv c = detail::conv(sig, typed_type(o), against, fuel, nullptr);
    if (c == Conv::Unknown) return Unknown{};
    if (c == Conv::No)
      return Ill{"Conversion", "type mismatch: inferred `" + show(typed_type(o)) +
                                   "`, expected `" + show(against) + "`"};
    return Typed{against};
  }

  WfReport wf(const Context& decls, bool reject_const_collisions) {
    ctx = Context{};
    WfReport r;
    for (const auto& [name, type] : decls.decls) {
      if (ctx.contains(name)) {
        r.var = name;
        r.rule = "Declaration";
        r.detail = "duplicate declaration of `" + name + "`";
        return r;
      }
      if (reject_const_collisions && sig && sig->declares(name)) {
        r.var = name;
        r.rule = "Declaration";
        r.detail = "`" + name + "` collides with a signature constant";
        return r;
      }
      auto s = sort_of(type, "declared type");
      if (const auto* bad = std::get_if<Ill>(&s)) {
        r.var = name;
        r.rule = "Declaration";
        r.detail = "`" + name + " : " + show(type) + "`: " + bad->detail;
        return r;
      }
      if (std::holds_alternative<Unknown>(s)) {
        r.var = name;
        r.unknown = true;
        return r;
      }
      ctx.push(name, type);
    }
    r.ok = true;
    return r;
  }
};

}  // namespace

CheckOutcome infer(const Specification& spec, const Context& ctx, const TermPtr& term,
                   Fuel& fuel) {
  Checker c{spec, nullptr, fuel, ctx};
  CheckOutcome o = c.infer(term);
  if (is_typed(o))
    if (auto n = detail::normalize(nullptr, typed_type(o), fuel)) return Typed{*n};
  return o;
}

CheckOutcome check(const Specification& spec, const Context& ctx, const TermPtr& term,
                   const TermPtr& against, Fuel& fuel) {
  Checker c{spec, nullptr, fuel, ctx};
  return c.check(term, against);
}

WfReport wf_context(const Specification& spec, const Context& ctx, Fuel& fuel) {
  Checker c{spec, nullptr, fuel, Context{}};
  return c.wf(ctx, false);
}

ClassifyOutcome classify_type(const Specification& spec, const Context& ctx, const TermPtr& t,
                              Fuel& fuel) {
  Checker c{spec, nullptr, fuel, ctx};
  return c.classify(t);
}

CheckOutcome infer_mod(const Signature& sig, const Context& ctx, const TermPtr& term,
                       Fuel& fuel) {
  Checker c{lpi_base_spec(), &sig, fuel, ctx};
  CheckOutcome o = c.infer(term);
  if (is_typed(o))
    if (auto n = detail::normalize(&sig, typed_type(o), fuel)) return Typed{*n};
  return o;
}

CheckOutcome check_mod(const Signature& sig, const Context& ctx, const TermPtr& term,
                       const TermPtr& against, Fuel& fuel) {
  Checker c{lpi_base_spec(), &sig, fuel, ctx};
  return c.check(term, against);
}

WfReport wf_context_mod(const Signature& sig, const Context& ctx, Fuel& fuel) {
  Checker c{lpi_base_spec(), &sig, fuel, Context{}};
  return c.wf(ctx, true);
}

ClassifyOutcome classify_type_mod(const Signature& sig, const Context& ctx, const TermPtr& t,
                                  Fuel& fuel) {
  Checker c{lpi_base_spec(), &sig, fuel, ctx};
  return c.classify(t);
}

namespace {

// Pattern argument positions may hold only constants, rule variables, and
// applications; collects variable occurrence counts on the way.
bool pattern_arg_ok(const TermPtr& t, std::map<std::string, int>& occurrences) {
  if (const auto* v = as<Var>(t)) {
    ++occurrences[v->name];
    return true;
  }
  if (as<Const>(t)) return true;
  if (const auto* a = as<App>(t))
    return pattern_arg_ok(a->fn, occurrences) && pattern_arg_ok(a->arg, occurrences);
  return false;
}

}  // namespace

CheckOutcome validate_rewrite_rule(const Signature& sig, const RewriteRule& rule, Fuel& fuel) {
  PrintTables tables{&lpi_base_spec(), &sig};
  auto [head, args] = detail::unroll(rule.lhs);
  if (!as<Const>(head))
    return Ill{"Rewrite", "left-hand side of `" + rule.name +
                              "` is not a constant applied to arguments"};
  std::map<std::string, int> occurrences;
  for (const auto& a : args)
    if (!pattern_arg_ok(a, occurrences))
      return Ill{"Rewrite", "left-hand side argument `" + to_string(a, tables) +
                                "` is not a first-order pattern"};
  for (const auto& [name, count] : occurrences) {
    if (!rule.delta.contains(name))
      return Ill{"Rewrite", "left-hand side mentions `" + name + "`, which is not a rule variable"};
    if (count > 1)
      return Ill{"Rewrite",
                 "rule variable `" + name + "` occurs more than once in the left-hand side"};
  }
  for (const auto& [name, type] : rule.delta.decls)
    if (!occurrences.count(name))
      return Ill{"Rewrite", "rule variable `" + name + "` does not occur in the left-hand side"};
  for (const auto& name : free_vars(rule.rhs))
    if (!occurrences.count(name))
      return Ill{"Rewrite", "right-hand side mentions `" + name +
                                "`, which does not occur in the left-hand side"};
  WfReport wf = wf_context_mod(sig, rule.delta, fuel);
  if (wf.unknown) return Unknown{};
  if (!wf.ok) return Ill{"Rewrite", "rule context of `" + rule.name + "`: " + wf.detail};

  Checker c{lpi_base_spec(), &sig, fuel, rule.delta};
  CheckOutcome lo = c.infer(rule.lhs);
  if (const auto* bad = std::get_if<Ill>(&lo))
    return Ill{"Rewrite", "left-hand side of `" + rule.name + "`: " + bad->detail};
  if (std::holds_alternative<Unknown>(lo)) return Unknown{};
  CheckOutcome ro = c.infer(rule.rhs);
  if (const auto* bad = std::get_if<Ill>(&ro))
    return Ill{"Rewrite", "right-hand side of `" + rule.name + "`: " + bad->detail};
  if (std::holds_alternative<Unknown>(ro)) return Unknown{};
  Conv conv = detail::conv(&sig, typed_type(lo), typed_type(ro), fuel, nullptr);
  if (conv == Conv::Unknown) return Unknown{};
  if (conv == Conv::No)
    return Ill{"Rewrite", "left-hand side has type `" + to_string(typed_type(lo), tables) +
                              "` but right-hand side has type `" +
                              to_string(typed_type(ro), tables) + "`"};
  return Typed{typed_type(lo)};
}

WfReport validate_signature(const Signature& sig, Fuel& fuel) {
  WfReport r;
  // Declarations see the full rule set: conversion behind a declared type may
  // involve rules stated later in the file.
  Signature working;
  working.rules = sig.rules;
  for (const auto& [name, type] : sig.decls.decls) {
    if (working.declares(name)) {
      r.var = name;
      r.rule = "Declaration";
      r.detail = "duplicate constant `" + name + "`";
      return r;
    }
    Checker c{lpi_base_spec(), &working, fuel, Context{}};
    auto s = c.sort_of(type, "declared type");
    if (const auto* bad = std::get_if<Ill>(&s)) {
      r.var = name;
      r.rule = "Declaration";
      r.detail = "`" + name + "`: " + bad->detail;
      return r;
    }
    if (std::holds_alternative<Unknown>(s)) {
      r.var = name;
      r.unknown = true;
      return r;
    }
    working.decls.push(name, type);
  }
  // Rules are admitted one at a time, each validated against its precursors.
  working.rules.clear();
  for (const auto& rule : sig.rules) {
    CheckOutcome o = validate_rewrite_rule(working, rule, fuel);
    if (const auto* bad = std::get_if<Ill>(&o)) {
      r.var = rule.name;
      r.rule = bad->rule;
      r.detail = bad->detail;
      return r;
    }
    if (std::holds_alternative<Unknown>(o)) {
      r.var = rule.name;
      r.unknown = true;
      return r;
    }
    working.rules.push_back(rule);
  }
  r.ok = true;
  return r;
}

LevelOutcome level_of(const Signature& sig, const Context& ctx, const TermPtr& t, Fuel& fuel) {
  Checker c{lpi_base_spec(), &sig, fuel, ctx};
  CheckOutcome o = c.infer(t);
  if (const auto* bad = std::get_if<Ill>(&o)) return *bad;
  if (std::holds_alternative<Unknown>(o)) return Unknown{};
  auto w = detail::whnf(&sig, typed_type(o), fuel, nullptr);
  if (!w) return Unknown{};
  if (const auto* s = as<Sort>(*w); s && s->name == "Kind")
    return Ill{"Sort", "`" + c.show(t) + "` has type `Kind`, which has no sort"};
  auto s = c.sort_of(*w, "type");
  if (const auto* bad = std::get_if<Ill>(&s)) return *bad;
  if (std::holds_alternative<Unknown>(s)) return Unknown{};
  return std::get<std::string>(s) == "Kind" ? Level::KindLevel : Level::TypeLevel;
}

}  // namespace lpimod
