#include "lpimod/syntax.hpp"

#include <atomic>
#include <functional>

namespace lpimod {

namespace {

TermPtr make(TermNode node) { return std::make_shared<TermNode>(std::move(node)); }

}  // namespace

TermPtr sort(std::string name) { return make({Sort{std::move(name)}}); }
TermPtr var(std::string name) { return make({Var{std::move(name)}}); }
TermPtr bound(std::size_t index) { return make({BoundVar{index}}); }
TermPtr constant(std::string name) { return make({Const{std::move(name)}}); }
TermPtr app(TermPtr fn, TermPtr arg) { return make({App{std::move(fn), std::move(arg)}}); }

TermPtr app(TermPtr fn, const std::vector<TermPtr>& args) {
  TermPtr t = std::move(fn);
  for (const auto& a : args) t = app(t, a);
  return t;
}

TermPtr abs(std::string hint, TermPtr ann, TermPtr body) {
  return make({Abs{std::move(hint), std::move(ann), std::move(body)}});
}

TermPtr prod(std::string hint, TermPtr dom, TermPtr cod) {
  return make({Prod{std::move(hint), std::move(dom), std::move(cod)}});
}

TermPtr arrow(TermPtr dom, TermPtr cod) { return prod("_", std::move(dom), std::move(cod)); }

TermPtr abs_named(const std::string& name, TermPtr ann, TermPtr body) {
  return abs(name, std::move(ann), close_over(body, name));
}

TermPtr prod_named(const std::string& name, TermPtr dom, TermPtr cod) {
  return prod(name, std::move(dom), close_over(cod, name));
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->data.index() != b->data.index()) return false;
  if (const auto* s = std::get_if<Sort>(&a->data)) return s->name == std::get<Sort>(b->data).name;
  if (const auto* v = std::get_if<Var>(&a->data)) return v->name == std::get<Var>(b->data).name;
  if (const auto* i = std::get_if<BoundVar>(&a->data))
    return i->index == std::get<BoundVar>(b->data).index;
  if (const auto* c = std::get_if<Const>(&a->data)) return c->name == std::get<Const>(b->data).name;
  if (const auto* f = std::get_if<App>(&a->data)) {
    const auto& g = std::get<App>(b->data);
    return alpha_eq(f->fn, g.fn) && alpha_eq(f->arg, g.arg);
  }
  if (const auto* l = std::get_if<Abs>(&a->data)) {
    const auto& m = std::get<Abs>(b->data);
    return alpha_eq(l->ann, m.ann) && alpha_eq(l->body, m.body);
  }
  const auto& p = std::get<Prod>(a->data);
  const auto& q = std::get<Prod>(b->data);
  return alpha_eq(p.dom, q.dom) && alpha_eq(p.cod, q.cod);
}

namespace {

void collect_free(const TermPtr& t, std::set<std::string>& out) {
  if (const auto* v = as<Var>(t)) {
    out.insert(v->name);
  } else if (const auto* a = as<App>(t)) {
    collect_free(a->fn, out);
    collect_free(a->arg, out);
  } else if (const auto* l = as<Abs>(t)) {
    collect_free(l->ann, out);
    collect_free(l->body, out);
  } else if (const auto* p = as<Prod>(t)) {
    collect_free(p->dom, out);
    collect_free(p->cod, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

bool occurs_free(const TermPtr& t, const std::string& name) {
  if (const auto* v = as<Var>(t)) return v->name == name;
  if (const auto* a = as<App>(t)) return occurs_free(a->fn, name) || occurs_free(a->arg, name);
  if (const auto* l = as<Abs>(t)) return occurs_free(l->ann, name) || occurs_free(l->body, name);
  if (const auto* p = as<Prod>(t)) return occurs_free(p->dom, name) || occurs_free(p->cod, name);
  return false;
}

bool uses_bound(const TermPtr& t, std::size_t index) {
  if (const auto* b = as<BoundVar>(t)) return b->index == index;
  if (const auto* a = as<App>(t)) return uses_bound(a->fn, index) || uses_bound(a->arg, index);
  if (const auto* l = as<Abs>(t))
    return uses_bound(l->ann, index) || uses_bound(l->body, index + 1);
  if (const auto* p = as<Prod>(t))
    return uses_bound(p->dom, index) || uses_bound(p->cod, index + 1);
  return false;
}

namespace {

bool closed_at(const TermPtr& t, std::size_t depth) {
  if (const auto* b = as<BoundVar>(t)) return b->index < depth;
  if (const auto* a = as<App>(t)) return closed_at(a->fn, depth) && closed_at(a->arg, depth);
  if (const auto* l = as<Abs>(t))
    return closed_at(l->ann, depth) && closed_at(l->body, depth + 1);
  if (const auto* p = as<Prod>(t))
    return closed_at(p->dom, depth) && closed_at(p->cod, depth + 1);
  return true;
}

}  // namespace

bool is_locally_closed(const TermPtr& t) { return closed_at(t, 0); }

TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& value) {
  // Bound occurrences are positional and `value` is locally closed, so no
  // occurrence of `value` can be captured: plain structural replacement.
  if (const auto* v = as<Var>(t)) return v->name == name ? value : t;
  if (const auto* a = as<App>(t)) {
    TermPtr fn = substitute(a->fn, name, value);
    TermPtr arg = substitute(a->arg, name, value);
    return fn == a->fn && arg == a->arg ? t : app(fn, arg);
  }
  if (const auto* l = as<Abs>(t)) {
    TermPtr ann = substitute(l->ann, name, value);
    TermPtr body = substitute(l->body, name, value);
    return ann == l->ann && body == l->body ? t : abs(l->hint, ann, body);
  }
  if (const auto* p = as<Prod>(t)) {
    TermPtr dom = substitute(p->dom, name, value);
    TermPtr cod = substitute(p->cod, name, value);
    return dom == p->dom && cod == p->cod ? t : prod(p->hint, dom, cod);
  }
  return t;
}

namespace {

TermPtr instantiate_at(const TermPtr& t, const TermPtr& value, std::size_t depth) {
  if (const auto* b = as<BoundVar>(t)) return b->index == depth ? value : t;
  if (const auto* a = as<App>(t)) {
    TermPtr fn = instantiate_at(a->fn, value, depth);
    TermPtr arg = instantiate_at(a->arg, value, depth);
    return fn == a->fn && arg == a->arg ? t : app(fn, arg);
  }
  if (const auto* l = as<Abs>(t)) {
    TermPtr ann = instantiate_at(l->ann, value, depth);
    TermPtr body = instantiate_at(l->body, value, depth + 1);
    return ann == l->ann && body == l->body ? t : abs(l->hint, ann, body);
  }
  if (const auto* p = as<Prod>(t)) {
    TermPtr dom = instantiate_at(p->dom, value, depth);
    TermPtr cod = instantiate_at(p->cod, value, depth + 1);
    return dom == p->dom && cod == p->cod ? t : prod(p->hint, dom, cod);
  }
  return t;
}

TermPtr close_at(const TermPtr& t, const std::string& name, std::size_t depth) {
  if (const auto* v = as<Var>(t)) return v->name == name ? bound(depth) : t;
  if (const auto* a = as<App>(t)) {
    TermPtr fn = close_at(a->fn, name, depth);
    TermPtr arg = close_at(a->arg, name, depth);
    return fn == a->fn && arg == a->arg ? t : app(fn, arg);
  }
  if (const auto* l = as<Abs>(t)) {
    TermPtr ann = close_at(l->ann, name, depth);
    TermPtr body = close_at(l->body, name, depth + 1);
    return ann == l->ann && body == l->body ? t : abs(l->hint, ann, body);
  }
  if (const auto* p = as<Prod>(t)) {
    TermPtr dom = close_at(p->dom, name, depth);
    TermPtr cod = close_at(p->cod, name, depth + 1);
    return dom == p->dom && cod == p->cod ? t : prod(p->hint, dom, cod);
  }
  return t;
}

}  // namespace

TermPtr instantiate(const TermPtr& body, const TermPtr& value) {
  return instantiate_at(body, value, 0);
}

TermPtr close_over(const TermPtr& t, const std::string& name) { return close_at(t, name, 0); }

std::string fresh_name(const std::string& hint) {
  static std::atomic<unsigned long long> counter{0};
  std::string base = hint.substr(0, hint.find('$'));
  if (base.empty()) base = "x";
  return base + "$" + std::to_string(++counter);
}

std::pair<std::string, TermPtr> open_binder(const std::string& hint, const TermPtr& body) {
  std::string name = fresh_name(hint);
  return {name, instantiate(body, var(name))};
}

bool Specification::has_sort(const std::string& s) const {
  for (const auto& x : sorts)
    if (x == s) return true;
  return false;
}

std::optional<std::string> Specification::axiom(const std::string& s) const {
  auto it = axioms.find(s);
  if (it == axioms.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Specification::rule(const std::string& s1,
                                               const std::string& s2) const {
  auto it = rules.find({s1, s2});
  if (it == rules.end()) return std::nullopt;
  return it->second;
}

SpecReport validate_spec(const Specification& spec) {
  SpecReport report;
  std::set<std::string> seen;
  for (const auto& s : spec.sorts) {
    if (!seen.insert(s).second) report.errors.push_back("duplicate sort `" + s + "`");
  }
  auto known = [&](const std::string& s) { return seen.count(s) != 0; };
  for (const auto& [s1, s2] : spec.axioms) {
    if (!known(s1)) report.errors.push_back("axiom mentions unknown sort `" + s1 + "`");
    if (!known(s2)) report.errors.push_back("axiom mentions unknown sort `" + s2 + "`");
  }
  for (const auto& [pair, s3] : spec.rules) {
    if (!known(pair.first)) report.errors.push_back("rule mentions unknown sort `" + pair.first + "`");
    if (!known(pair.second))
      report.errors.push_back("rule mentions unknown sort `" + pair.second + "`");
    if (!known(s3)) report.errors.push_back("rule mentions unknown sort `" + s3 + "`");
  }
  // Axioms and rules are stored as maps keyed by their premises, so the
  // specification is functional by representation.
  report.functional = true;
  report.full = true;
  for (const auto& s1 : spec.sorts)
    for (const auto& s2 : spec.sorts)
      if (!spec.rules.count({s1, s2})) report.full = false;
  for (const auto& s : spec.sorts)
    if (!spec.axioms.count(s)) report.top_sorts.push_back(s);
  return report;
}

bool Context::contains(const std::string& name) const { return lookup(name) != nullptr; }

const TermPtr* Context::lookup(const std::string& name) const {
  for (auto it = decls.rbegin(); it != decls.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

void Context::push(std::string name, TermPtr type) {
  decls.emplace_back(std::move(name), std::move(type));
}

void Context::pop() { decls.pop_back(); }

}  // namespace lpimod
