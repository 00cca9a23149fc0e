#include "lpimod/conservativity.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "lpimod/embedding.hpp"
#include "lpimod/lpi.hpp"
#include "lpimod/print.hpp"
#include "lpimod/pts.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

CompletedSpec minimal_completion(const Specification& spec) {
  SpecReport report = validate_spec(spec);
  if (!report.ok()) {
    std::string msg = "invalid specification";
    for (const auto& e : report.errors) msg += "; " + e;
    throw std::invalid_argument(msg);
  }
  CompletedSpec cs;
  cs.base = spec;
  Specification comp = spec;
  comp.sorts.push_back(cs.tau);
  for (const auto& s : report.top_sorts) comp.axioms.emplace(s, cs.tau);
  for (const auto& s1 : comp.sorts)
    for (const auto& s2 : comp.sorts)
      if (!comp.rules.count({s1, s2})) comp.rules.emplace(std::make_pair(s1, s2), cs.tau);
  cs.completed = comp;
  return cs;
}

namespace {

// Walks a term in pre-order, keeping the lambda-Pi context current, and runs
// a callback on every beta redex met. The callback returns true to keep
// scanning, false to abort the walk.
template <class F>
bool scan_redexes(Context& ctx, const TermPtr& t, F&& on_redex) {
  if (const auto* a = as<App>(t)) {
    if (as<Abs>(a->fn) && !on_redex(ctx, t)) return false;
    return scan_redexes(ctx, a->fn, on_redex) && scan_redexes(ctx, a->arg, on_redex);
  }
  if (const auto* l = as<Abs>(t)) {
    if (!scan_redexes(ctx, l->ann, on_redex)) return false;
    auto [x, body] = open_binder(l->hint, l->body);
    ctx.push(x, l->ann);
    bool keep = scan_redexes(ctx, body, on_redex);
    ctx.pop();
    return keep;
  }
  if (const auto* p = as<Prod>(t)) {
    if (!scan_redexes(ctx, p->dom, on_redex)) return false;
    auto [x, cod] = open_binder(p->hint, p->cod);
    ctx.push(x, p->dom);
    bool keep = scan_redexes(ctx, cod, on_redex);
    ctx.pop();
    return keep;
  }
  return true;
}

}  // namespace

KindRedexScan is_lpi_minus(const EmbeddedSystem& emb, const Context& ctx, const TermPtr& t,
                           Fuel& fuel) {
  KindRedexScan scan;
  scan.typing = infer_mod(emb.signature, ctx, t, fuel);
  if (!is_typed(scan.typing)) return scan;
  Context walk_ctx = ctx;
  scan_redexes(walk_ctx, t, [&](Context& here, const TermPtr& redex) {
    const auto* a = as<App>(redex);
    LevelOutcome lv = level_of(emb.signature, here, a->fn, fuel);
    if (const auto* l = std::get_if<Level>(&lv)) {
      if (*l == Level::KindLevel) {
        scan.offender = redex;
        return false;
      }
      return true;
    }
    scan.unknown = true;
    return false;
  });
  return scan;
}

std::variant<long long, Ill, Unknown> count_kind_redexes(const EmbeddedSystem& emb,
                                                         const Context& ctx, const TermPtr& t,
                                                         Fuel& fuel) {
  CheckOutcome typing = infer_mod(emb.signature, ctx, t, fuel);
  if (const auto* bad = std::get_if<Ill>(&typing)) return *bad;
  if (std::holds_alternative<Unknown>(typing)) return Unknown{};
  long long count = 0;
  bool unknown = false;
  Context walk_ctx = ctx;
  scan_redexes(walk_ctx, t, [&](Context& here, const TermPtr& redex) {
    const auto* a = as<App>(redex);
    LevelOutcome lv = level_of(emb.signature, here, a->fn, fuel);
    if (const auto* l = std::get_if<Level>(&lv)) {
      if (*l == Level::KindLevel) ++count;
      return true;
    }
    unknown = true;
    return false;
  });
  if (unknown) return Unknown{};
  return count;
}

namespace {

// One pass of "contract the leftmost-outermost redex selected by `pick`".
// pick classifies the abstraction of a redex: contract, skip, or give up.
enum class Pick { Contract, Skip, Ill_, Unknown_ };

template <class PickFn>
struct SelectiveRW {
  PickFn pick;
  Fuel& fuel;
  Context ctx;
  bool changed = false;
  std::optional<Ill> err;
  bool unknown = false;

  TermPtr go(const TermPtr& t) {
    if (changed || err || unknown) return t;
    if (const auto* a = as<App>(t)) {
      if (const auto* l = as<Abs>(a->fn)) {
        switch (pick(ctx, a->fn, err)) {
          case Pick::Contract:
            if (!fuel.spend()) {
              unknown = true;
              return t;
            }
            changed = true;
            return instantiate(l->body, a->arg);
          case Pick::Skip: break;
          case Pick::Ill_: return t;  // err already set by pick
          case Pick::Unknown_: unknown = true; return t;
        }
      }
      TermPtr f = go(a->fn);
      if (changed) return app(f, a->arg);
      TermPtr x = go(a->arg);
      if (changed) return app(a->fn, x);
      return t;
    }
    if (const auto* l = as<Abs>(t)) {
      TermPtr ann = go(l->ann);
      if (changed) return abs(l->hint, ann, l->body);
      auto [x, body] = open_binder(l->hint, l->body);
      ctx.push(x, l->ann);
      TermPtr b = go(body);
      ctx.pop();
      if (changed) return abs(l->hint, l->ann, close_over(b, x));
      return t;
    }
    if (const auto* p = as<Prod>(t)) {
      TermPtr dom = go(p->dom);
      if (changed) return prod(p->hint, dom, p->cod);
      auto [x, cod] = open_binder(p->hint, p->cod);
      ctx.push(x, p->dom);
      TermPtr c = go(cod);
      ctx.pop();
      if (changed) return prod(p->hint, p->dom, close_over(c, x));
      return t;
    }
    return t;
  }
};

}  // namespace

KindElimTrace eliminate_kind_redexes(const EmbeddedSystem& emb, const Context& ctx,
                                     const TermPtr& t, Fuel& fuel) {
  KindElimTrace trace;
  trace.steps.push_back(t);
  CheckOutcome typing = infer_mod(emb.signature, ctx, t, fuel);
  if (const auto* bad = std::get_if<Ill>(&typing)) {
    trace.error = *bad;
    return trace;
  }
  if (std::holds_alternative<Unknown>(typing)) {
    trace.unknown = true;
    return trace;
  }
  auto pick = [&](Context& here, const TermPtr& lam, std::optional<Ill>& err) {
    LevelOutcome lv = level_of(emb.signature, here, lam, fuel);
    if (const auto* l = std::get_if<Level>(&lv))
      return *l == Level::KindLevel ? Pick::Contract : Pick::Skip;
    if (const auto* bad = std::get_if<Ill>(&lv)) {
      err = *bad;
      return Pick::Ill_;
    }
    return Pick::Unknown_;
  };
  for (;;) {
    SelectiveRW<decltype(pick)> rw{pick, fuel, ctx, false, std::nullopt, false};
    TermPtr next = rw.go(trace.steps.back());
    if (rw.err) {
      trace.error = rw.err;
      return trace;
    }
    if (rw.unknown) {
      trace.unknown = true;
      return trace;
    }
    if (!rw.changed) return trace;
    trace.steps.push_back(next);
  }
}

InverseOutcome inverse_term(const EmbeddedSystem& emb, const TermPtr& t) {
  PrintTables tables{&lpi_base_spec(), &emb.signature};
  if (as<Sort>(t))
    return OutsideImage{"sort `" + to_string(t, tables) + "` has no source counterpart"};
  if (const auto* v = as<Var>(t)) return var(v->name);
  if (const auto* b = as<BoundVar>(t)) return bound(b->index);
  if (const auto* c = as<Const>(t)) {
    if (auto it = emb.sort_of_dot.find(c->name); it != emb.sort_of_dot.end())
      return sort(it->second);
    if (auto it = emb.pi_args.find(c->name); it != emb.pi_args.end()) {
      const std::string& s1 = it->second[0];
      const std::string& s2 = it->second[1];
      // The source-side value of a product code constructor.
      return abs_named("a", sort(s1),
                       abs_named("b", arrow(var("a"), sort(s2)),
                                 prod_named("x", var("a"), app(var("b"), var("x")))));
    }
    return OutsideImage{"constant `" + c->name + "` has no source counterpart"};
  }
  if (const auto* a = as<App>(t)) {
    InverseOutcome f = inverse_term(emb, a->fn);
    if (!std::holds_alternative<TermPtr>(f)) return f;
    InverseOutcome x = inverse_term(emb, a->arg);
    if (!std::holds_alternative<TermPtr>(x)) return x;
    return app(std::get<TermPtr>(f), std::get<TermPtr>(x));
  }
  if (const auto* l = as<Abs>(t)) {
    // Binders stay shut: the substituted images of constants are closed, so
    // the body's indices keep their meaning.
    InverseOutcome ann = inverse_type(emb, l->ann);
    if (!std::holds_alternative<TermPtr>(ann)) return ann;
    InverseOutcome body = inverse_term(emb, l->body);
    if (!std::holds_alternative<TermPtr>(body)) return body;
    return abs(l->hint, std::get<TermPtr>(ann), std::get<TermPtr>(body));
  }
  return OutsideImage{"product `" + to_string(t, tables) + "` is not an object term"};
}

InverseOutcome inverse_type(const EmbeddedSystem& emb, const TermPtr& a) {
  PrintTables tables{&lpi_base_spec(), &emb.signature};
  if (const auto* c = as<Const>(a)) {
    if (auto it = emb.sort_of_u.find(c->name); it != emb.sort_of_u.end())
      return sort(it->second);
    return OutsideImage{"constant `" + c->name + "` is not a type code"};
  }
  if (const auto* ap = as<App>(a)) {
    if (const auto* c = as<Const>(ap->fn))
      if (emb.sort_of_eps.count(c->name)) return inverse_term(emb, ap->arg);
    return OutsideImage{"application `" + to_string(a, tables) + "` is not a decoded type"};
  }
  if (const auto* p = as<Prod>(a)) {
    InverseOutcome dom = inverse_type(emb, p->dom);
    if (!std::holds_alternative<TermPtr>(dom)) return dom;
    InverseOutcome cod = inverse_type(emb, p->cod);
    if (!std::holds_alternative<TermPtr>(cod)) return cod;
    return prod(p->hint, std::get<TermPtr>(dom), std::get<TermPtr>(cod));
  }
  return OutsideImage{"`" + to_string(a, tables) + "` is not a translated type"};
}

std::variant<Context, OutsideImage, Ill, Unknown> inverse_context(const EmbeddedSystem& emb,
                                                                  const Context& ctx,
                                                                  Fuel& fuel) {
  Context out;
  Context prefix;
  for (const auto& [name, a] : ctx.decls) {
    ClassifyOutcome c = classify_type_mod(emb.signature, prefix, a, fuel);
    if (const auto* bad = std::get_if<Ill>(&c)) return *bad;
    if (std::holds_alternative<Unknown>(c)) return Unknown{};
    if (!classified_as(c, "Type"))
      return OutsideImage{"declaration `" + name + "` is not an object declaration"};
    InverseOutcome ia = inverse_type(emb, a);
    if (const auto* bad = std::get_if<OutsideImage>(&ia)) return *bad;
    out.push(name, std::get<TermPtr>(ia));
    prefix.push(name, a);
  }
  return out;
}

std::variant<long long, Ill, Unknown> height_tau(const CompletedSpec& cspec, const Context& ctx,
                                                 const TermPtr& a, Fuel& fuel) {
  ClassifyOutcome c = classify_type(cspec.completed, ctx, a, fuel);
  if (const auto* bad = std::get_if<Ill>(&c)) return *bad;
  if (std::holds_alternative<Unknown>(c)) return Unknown{};
  if (std::holds_alternative<TopSortItself>(c))
    return Ill{"Sort", "the sort `" + cspec.tau + "` itself has no height"};
  if (std::get<std::string>(c) != cspec.tau) return 0;
  auto w = whnf_beta(a, fuel);
  if (!w) return Unknown{};
  if (as<Sort>(*w)) return 0;
  if (const auto* p = as<Prod>(*w)) {
    auto hd = height_tau(cspec, ctx, p->dom, fuel);
    if (!std::holds_alternative<long long>(hd)) return hd;
    auto [x, cod] = open_binder(p->hint, p->cod);
    Context extended = ctx;
    extended.push(x, p->dom);
    auto hc = height_tau(cspec, extended, cod, fuel);
    if (!std::holds_alternative<long long>(hc)) return hc;
    return 1 + std::max(std::get<long long>(hd), std::get<long long>(hc));
  }
  return Ill{"Sort", "no height: weak head normal form is neither a sort nor a product"};
}

TauReduction reduce_tau_redexes(const CompletedSpec& cspec, const Context& ctx, const TermPtr& m,
                                Fuel& fuel) {
  TauReduction trace;
  trace.steps.push_back(m);
  CheckOutcome typing = infer(cspec.completed, ctx, m, fuel);
  if (const auto* bad = std::get_if<Ill>(&typing)) {
    trace.error = *bad;
    return trace;
  }
  if (std::holds_alternative<Unknown>(typing)) {
    trace.unknown = true;
    return trace;
  }
  auto pick = [&](Context& here, const TermPtr& lam, std::optional<Ill>& err) {
    CheckOutcome ty = infer(cspec.completed, here, lam, fuel);
    if (const auto* bad = std::get_if<Ill>(&ty)) {
      err = *bad;
      return Pick::Ill_;
    }
    if (std::holds_alternative<Unknown>(ty)) return Pick::Unknown_;
    ClassifyOutcome c = classify_type(cspec.completed, here, typed_type(ty), fuel);
    if (const auto* bad = std::get_if<Ill>(&c)) {
      err = *bad;
      return Pick::Ill_;
    }
    if (std::holds_alternative<Unknown>(c)) return Pick::Unknown_;
    if (classified_as(c, cspec.tau)) return Pick::Contract;
    return Pick::Skip;
  };
  for (;;) {
    SelectiveRW<decltype(pick)> rw{pick, fuel, ctx, false, std::nullopt, false};
    TermPtr next = rw.go(trace.steps.back());
    if (rw.err) {
      trace.error = rw.err;
      return trace;
    }
    if (rw.unknown) {
      trace.unknown = true;
      return trace;
    }
    if (!rw.changed) return trace;
    trace.steps.push_back(next);
  }
}

ExtractionTrace extract_witness(const EmbeddedSystem& emb, const CompletedSpec& cspec,
                                const Context& src_ctx, const TermPtr& src_type, const TermPtr& n,
                                Fuel& fuel) {
  ExtractionTrace tr;
  tr.input = n;
  PrintTables lpi_tables{&lpi_base_spec(), &emb.signature};
  PrintTables src_tables{&cspec.completed, nullptr};
  auto fail = [&](const std::string& stage, const std::string& detail) {
    tr.failed_stage = stage;
    tr.failure_detail = detail;
    return tr;
  };
  auto out_of_fuel = [&](const std::string& stage) {
    tr.fuel_exhausted = true;
    return fail(stage, "fuel exhausted");
  };

  if (cspec.base.sorts != emb.source.sorts || cspec.base.axioms != emb.source.axioms ||
      cspec.base.rules != emb.source.rules)
    return fail("setup", "the completed specification does not extend the embedded one");

  WfReport wf = wf_context(emb.source, src_ctx, fuel);
  if (wf.unknown) return out_of_fuel("source-context");
  if (!wf.ok) return fail("source-context", "declaration `" + wf.var + "`: " + wf.detail);
  ClassifyOutcome tc = classify_type(emb.source, src_ctx, src_type, fuel);
  if (const auto* bad = std::get_if<Ill>(&tc))
    return fail("source-context", bad->rule + ": " + bad->detail);
  if (std::holds_alternative<Unknown>(tc)) return out_of_fuel("source-context");

  auto tctx = translate_context(emb, src_ctx, fuel);
  if (const auto* bad = std::get_if<Ill>(&tctx))
    return fail("translate", bad->rule + ": " + bad->detail);
  if (std::holds_alternative<Unknown>(tctx)) return out_of_fuel("translate");
  tr.translated_ctx = std::get<Context>(tctx);
  TranslateOutcome tty = translate_type(emb, src_ctx, src_type, fuel);
  if (const auto* bad = std::get_if<Ill>(&tty))
    return fail("translate", bad->rule + ": " + bad->detail);
  if (std::holds_alternative<Unknown>(tty)) return out_of_fuel("translate");
  tr.translated_type = std::get<TermPtr>(tty);

  tr.input_check = check_mod(emb.signature, tr.translated_ctx, n, tr.translated_type, fuel);
  if (is_ill(tr.input_check))
    return fail("input-check", to_string(tr.input_check, lpi_tables));
  if (is_unknown(tr.input_check)) return out_of_fuel("input-check");

  KindElimTrace ke = eliminate_kind_redexes(emb, tr.translated_ctx, n, fuel);
  tr.kind_elim_steps = ke.steps;
  if (ke.error)
    return fail("kind-elimination", ke.error->rule + ": " + ke.error->detail);
  if (ke.unknown) return out_of_fuel("kind-elimination");
  tr.kind_reduced = ke.result();

  tr.kind_reduced_check =
      check_mod(emb.signature, tr.translated_ctx, tr.kind_reduced, tr.translated_type, fuel);
  if (is_ill(tr.kind_reduced_check))
    return fail("kind-reduced-check", to_string(tr.kind_reduced_check, lpi_tables));
  if (is_unknown(tr.kind_reduced_check)) return out_of_fuel("kind-reduced-check");

  InverseOutcome inv = inverse_term(emb, tr.kind_reduced);
  if (const auto* out = std::get_if<OutsideImage>(&inv)) return fail("inversion", out->detail);
  tr.inverted = std::get<TermPtr>(inv);

  tr.inverted_check = check(cspec.completed, src_ctx, tr.inverted, src_type, fuel);
  if (is_ill(tr.inverted_check))
    return fail("inverted-check", to_string(tr.inverted_check, src_tables));
  if (is_unknown(tr.inverted_check)) return out_of_fuel("inverted-check");

  TauReduction tred = reduce_tau_redexes(cspec, src_ctx, tr.inverted, fuel);
  tr.tau_steps = tred.steps;
  if (tred.error)
    return fail("tau-reduction", tred.error->rule + ": " + tred.error->detail);
  if (tred.unknown) return out_of_fuel("tau-reduction");
  tr.witness = tred.result();

  tr.final_check = check(cspec.base, src_ctx, tr.witness, src_type, fuel);
  if (is_ill(tr.final_check)) return fail("final-check", to_string(tr.final_check, src_tables));
  if (is_unknown(tr.final_check)) return out_of_fuel("final-check");
  return tr;
}

}  // namespace lpimod
