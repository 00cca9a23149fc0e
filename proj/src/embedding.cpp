#include "lpimod/embedding.hpp"

#include <array>
#include <set>
#include <string>
#include <variant>

#include "lpimod/lpi.hpp"
#include "lpimod/pts.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

TermPtr EmbeddedSystem::u(const std::string& s) const { return constant(u_name.at(s)); }
TermPtr EmbeddedSystem::eps(const std::string& s) const { return constant(eps_name.at(s)); }
TermPtr EmbeddedSystem::dot(const std::string& s) const { return constant(dot_name.at(s)); }
TermPtr EmbeddedSystem::pi(const std::string& s1, const std::string& s2,
                           const std::string& s3) const {
  return constant(pi_name.at({s1, s2, s3}));
}

EmbeddedSystem build_embedding(const Specification& spec) {
  SpecReport report = validate_spec(spec);
  if (!report.ok()) {
    std::string msg = "invalid specification";
    for (const auto& e : report.errors) msg += "; " + e;
    throw EmbeddingError(msg);
  }
  EmbeddedSystem emb;
  emb.source = spec;

  std::set<std::string> taken;
  auto claim = [&](const std::string& name) {
    if (!taken.insert(name).second)
      throw EmbeddingError("generated constant `" + name + "` collides with another");
  };
  for (const auto& s : spec.sorts) {
    if (s.find('@') != std::string::npos)
      throw EmbeddingError("sort name `" + s + "` contains the reserved character '@'");
    emb.u_name[s] = "u_" + s;
    emb.sort_of_u["u_" + s] = s;
    claim("u_" + s);
  }
  for (const auto& s : spec.sorts) {
    emb.eps_name[s] = "eps_" + s;
    emb.sort_of_eps["eps_" + s] = s;
    claim("eps_" + s);
  }
  for (const auto& [s1, s2] : spec.axioms) {
    emb.dot_name[s1] = "dot_" + s1;
    emb.sort_of_dot["dot_" + s1] = s1;
    claim("dot_" + s1);
  }
  for (const auto& [pair, s3] : spec.rules) {
    const auto& [s1, s2] = pair;
    std::string name = "pi_" + s1 + "_" + s2 + "_" + s3;
    emb.pi_name[{s1, s2, s3}] = name;
    emb.pi_args[name] = {s1, s2, s3};
    claim(name);
  }

  Signature& sig = emb.signature;
  for (const auto& s : spec.sorts) sig.decls.push(emb.u_name[s], sort("Type"));
  for (const auto& s : spec.sorts)
    sig.decls.push(emb.eps_name[s], arrow(emb.u(s), sort("Type")));
  for (const auto& [s1, s2] : spec.axioms) sig.decls.push(emb.dot_name[s1], emb.u(s2));
  for (const auto& [pair, s3] : spec.rules) {
    const auto& [s1, s2] = pair;
    TermPtr ty = prod_named(
        "a", emb.u(s1), arrow(arrow(app(emb.eps(s1), var("a")), emb.u(s2)), emb.u(s3)));
    sig.decls.push(emb.pi_name[{s1, s2, s3}], ty);
  }
  for (const auto& [s1, s2] : spec.axioms) {
    RewriteRule rule;
    rule.name = "eps_dot_" + s1;
    rule.lhs = app(emb.eps(s2), emb.dot(s1));
    rule.rhs = emb.u(s1);
    sig.rules.push_back(rule);
  }
  for (const auto& [pair, s3] : spec.rules) {
    const auto& [s1, s2] = pair;
    RewriteRule rule;
    rule.name = "eps_pi_" + s1 + "_" + s2 + "_" + s3;
    rule.delta.push("A", emb.u(s1));
    rule.delta.push("B", arrow(app(emb.eps(s1), var("A")), emb.u(s2)));
    rule.lhs = app(emb.eps(s3), app(app(emb.pi(s1, s2, s3), var("A")), var("B")));
    rule.rhs = prod_named("x", app(emb.eps(s1), var("A")),
                          app(emb.eps(s2), app(var("B"), var("x"))));
    sig.rules.push_back(rule);
  }

  Fuel fuel;
  WfReport wf = validate_signature(sig, fuel);
  if (wf.unknown)
    throw EmbeddingError("embedding validation ran out of fuel at `" + wf.var + "`");
  if (!wf.ok)
    throw EmbeddingError("embedding validation failed at `" + wf.var + "`: " + wf.detail);
  return emb;
}

namespace {

struct Translator {
  const EmbeddedSystem& emb;
  Fuel& fuel;
  Context ctx;  // source-side context, grown under binders

  // The sort of a source type, needed to pick dot/pi/eps constants.
  std::variant<std::string, Ill, Unknown> sort_of(const TermPtr& a) {
    ClassifyOutcome c = classify_type(emb.source, ctx, a, fuel);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* bad = std::get_if<Ill>(&c)) return *bad;
    if (std::holds_alternative<Unknown>(c)) return Unknown{};
    return Ill{"Product", "`" + std::get<TopSortItself>(c).sort +
                              "` is a top sort and cannot appear here"};
  }

  TranslateOutcome term(const TermPtr& m) {
    if (const auto* s = as<Sort>(m)) {
      if (emb.source.axiom(s->name)) return emb.dot(s->name);
      return Ill{"Sort", "no axiom (" + s->name + " : ·)"};
    }
    if (const auto* v = as<Var>(m)) return var(v->name);
    if (as<Const>(m)) return Ill{"Variable", "source terms have no constants"};
    if (as<BoundVar>(m)) return Ill{"Variable", "dangling bound variable"};
    if (const auto* a = as<App>(m)) {
      TranslateOutcome f = term(a->fn);
      if (!std::holds_alternative<TermPtr>(f)) return f;
      TranslateOutcome x = term(a->arg);
      if (!std::holds_alternative<TermPtr>(x)) return x;
      return app(std::get<TermPtr>(f), std::get<TermPtr>(x));
    }
    if (const auto* l = as<Abs>(m)) {
      TranslateOutcome ann = type(l->ann);
      if (!std::holds_alternative<TermPtr>(ann)) return ann;
      auto [x, body] = open_binder(l->hint, l->body);
      ctx.push(x, l->ann);
      TranslateOutcome b = term(body);
      ctx.pop();
      if (!std::holds_alternative<TermPtr>(b)) return b;
      return abs_named(x, std::get<TermPtr>(ann), std::get<TermPtr>(b));
    }
    const auto* p = as<Prod>(m);
    auto s1 = sort_of(p->dom);
    if (const auto* bad = std::get_if<Ill>(&s1)) return *bad;
    if (std::holds_alternative<Unknown>(s1)) return Unknown{};
    TranslateOutcome dom_code = term(p->dom);
    if (!std::holds_alternative<TermPtr>(dom_code)) return dom_code;
    TranslateOutcome dom_type = type(p->dom);
    if (!std::holds_alternative<TermPtr>(dom_type)) return dom_type;
    auto [x, cod] = open_binder(p->hint, p->cod);
    ctx.push(x, p->dom);
    auto s2 = sort_of(cod);
    TranslateOutcome cod_code =
        std::holds_alternative<std::string>(s2) ? term(cod) : TranslateOutcome{Unknown{}};
    ctx.pop();
    if (const auto* bad = std::get_if<Ill>(&s2)) return *bad;
    if (std::holds_alternative<Unknown>(s2)) return Unknown{};
    if (!std::holds_alternative<TermPtr>(cod_code)) return cod_code;
    auto s3 = emb.source.rule(std::get<std::string>(s1), std::get<std::string>(s2));
    if (!s3)
      return Ill{"Product", "no rule (" + std::get<std::string>(s1) + ", " +
                                std::get<std::string>(s2) + ", ·)"};
    TermPtr fam = abs_named(x, std::get<TermPtr>(dom_type), std::get<TermPtr>(cod_code));
    return app(app(emb.pi(std::get<std::string>(s1), std::get<std::string>(s2), *s3),
                   std::get<TermPtr>(dom_code)),
               fam);
  }

  TranslateOutcome type(const TermPtr& a) {
    if (const auto* s = as<Sort>(a)) {
      if (emb.source.has_sort(s->name)) return emb.u(s->name);
      return Ill{"Sort", "unknown sort `" + s->name + "`"};
    }
    if (const auto* p = as<Prod>(a)) {
      TranslateOutcome dom = type(p->dom);
      if (!std::holds_alternative<TermPtr>(dom)) return dom;
      auto [x, cod] = open_binder(p->hint, p->cod);
      ctx.push(x, p->dom);
      TranslateOutcome body = type(cod);
      ctx.pop();
      if (!std::holds_alternative<TermPtr>(body)) return body;
      return prod_named(x, std::get<TermPtr>(dom), std::get<TermPtr>(body));
    }
    auto s = sort_of(a);
    if (const auto* bad = std::get_if<Ill>(&s)) return *bad;
    if (std::holds_alternative<Unknown>(s)) return Unknown{};
    TranslateOutcome code = term(a);
    if (!std::holds_alternative<TermPtr>(code)) return code;
    return app(emb.eps(std::get<std::string>(s)), std::get<TermPtr>(code));
  }
};

}  // namespace

TranslateOutcome translate_term(const EmbeddedSystem& emb, const Context& ctx, const TermPtr& m,
                                Fuel& fuel) {
  CheckOutcome well = infer(emb.source, ctx, m, fuel);
  if (const auto* bad = std::get_if<Ill>(&well)) return *bad;
  if (std::holds_alternative<Unknown>(well)) return Unknown{};
  Translator tr{emb, fuel, ctx};
  return tr.term(m);
}

TranslateOutcome translate_type(const EmbeddedSystem& emb, const Context& ctx, const TermPtr& a,
                                Fuel& fuel) {
  ClassifyOutcome c = classify_type(emb.source, ctx, a, fuel);
  if (const auto* bad = std::get_if<Ill>(&c)) return *bad;
  if (std::holds_alternative<Unknown>(c)) return Unknown{};
  Translator tr{emb, fuel, ctx};
  return tr.type(a);
}

std::variant<Context, Ill, Unknown> translate_context(const EmbeddedSystem& emb,
                                                      const Context& ctx, Fuel& fuel) {
  Translator tr{emb, fuel, Context{}};
  Context out;
  for (const auto& [name, a] : ctx.decls) {
    TranslateOutcome ta = tr.type(a);
    if (const auto* bad = std::get_if<Ill>(&ta)) return *bad;
    if (std::holds_alternative<Unknown>(ta)) return Unknown{};
    out.push(name, std::get<TermPtr>(ta));
    tr.ctx.push(name, a);
  }
  return out;
}

}  // namespace lpimod
