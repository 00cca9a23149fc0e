#include "lpimod/print.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "lpimod/lpi.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

namespace {

void collect_atoms(const TermPtr& t, std::set<std::string>& out) {
  if (const auto* s = as<Sort>(t)) {
    out.insert(s->name);
  } else if (const auto* c = as<Const>(t)) {
    out.insert(c->name);
  } else if (const auto* a = as<App>(t)) {
    collect_atoms(a->fn, out);
    collect_atoms(a->arg, out);
  } else if (const auto* l = as<Abs>(t)) {
    collect_atoms(l->ann, out);
    collect_atoms(l->body, out);
  } else if (const auto* p = as<Prod>(t)) {
    collect_atoms(p->dom, out);
    collect_atoms(p->cod, out);
  }
}

// Precedence: 0 binder body, 1 arrow, 2 application, 3 atom. A subterm is
// parenthesized when its own level is below the level its position demands.
struct Printer {
  std::set<std::string> avoid;        // names that would re-parse as something else
  std::vector<std::string> binders;   // display names, outermost first

  std::string name_of(std::size_t index) const {
    if (index < binders.size()) return binders[binders.size() - 1 - index];
    return "#" + std::to_string(index);  // dangling index, debug output only
  }

  std::string pick(const std::string& hint) {
    std::string base = hint.substr(0, hint.find('$'));
    if (base.empty() || base == "_") base = "x";
    std::string cand = base;
    for (int i = 1; avoid.count(cand) ||
                    std::find(binders.begin(), binders.end(), cand) != binders.end();
         ++i)
      cand = base + std::to_string(i);
    return cand;
  }

  void print(std::string& out, const TermPtr& t, int prec) {
    if (const auto* s = as<Sort>(t)) {
      out += s->name;
    } else if (const auto* v = as<Var>(t)) {
      out += v->name;
    } else if (const auto* b = as<BoundVar>(t)) {
      out += name_of(b->index);
    } else if (const auto* c = as<Const>(t)) {
      out += c->name;
    } else if (const auto* a = as<App>(t)) {
      if (prec > 2) out += '(';
      print(out, a->fn, 2);
      out += ' ';
      print(out, a->arg, 3);
      if (prec > 2) out += ')';
    } else if (const auto* l = as<Abs>(t)) {
      if (prec > 0) out += '(';
      std::string x = pick(l->hint);
      out += '\\';
      out += x;
      out += ':';
      print(out, l->ann, 1);
      out += ". ";
      binders.push_back(x);
      print(out, l->body, 0);
      binders.pop_back();
      if (prec > 0) out += ')';
    } else {
      const auto* p = as<Prod>(t);
      if (!uses_bound(p->cod, 0)) {
        if (prec > 1) out += '(';
        print(out, p->dom, 2);
        out += " -> ";
        binders.push_back("");  // unused slot keeps deeper indices aligned
        print(out, p->cod, 1);
        binders.pop_back();
        if (prec > 1) out += ')';
      } else {
        if (prec > 0) out += '(';
        std::string x = pick(p->hint);
        out += '!';
        out += x;
        out += ':';
        print(out, p->dom, 1);
        out += ". ";
        binders.push_back(x);
        print(out, p->cod, 0);
        binders.pop_back();
        if (prec > 0) out += ')';
      }
    }
  }
};

Printer make_printer(const TermPtr& t, const PrintTables& tables) {
  Printer pr;
  for (const auto& n : free_vars(t)) pr.avoid.insert(n);
  collect_atoms(t, pr.avoid);
  if (tables.spec)
    for (const auto& s : tables.spec->sorts) pr.avoid.insert(s);
  if (tables.sig)
    for (const auto& [n, ty] : tables.sig->decls.decls) pr.avoid.insert(n);
  return pr;
}

}  // namespace

std::string to_string(const TermPtr& t, const PrintTables& tables) {
  Printer pr = make_printer(t, tables);
  std::string out;
  pr.print(out, t, 0);
  return out;
}

std::string to_string(const Specification& spec) {
  std::string out;
  for (const auto& s : spec.sorts) out += "sort " + s + "\n";
  for (const auto& [s1, s2] : spec.axioms) out += "axiom " + s1 + " : " + s2 + "\n";
  for (const auto& [pair, s3] : spec.rules)
    out += "rule (" + pair.first + ", " + pair.second + ") ~> " + s3 + "\n";
  return out;
}

std::string to_string(const Signature& sig) {
  PrintTables tables{&lpi_base_spec(), &sig};
  std::string out;
  for (const auto& [name, type] : sig.decls.decls)
    out += name + " : " + to_string(type, tables) + ".\n";
  for (const auto& rule : sig.rules) {
    out += '[';
    bool first = true;
    for (const auto& [name, type] : rule.delta.decls) {
      if (!first) out += ", ";
      first = false;
      out += name + " : " + to_string(type, tables);
    }
    out += "] " + to_string(rule.lhs, tables) + " --> " + to_string(rule.rhs, tables) + ".\n";
  }
  return out;
}

std::string to_string(const Context& ctx, const PrintTables& tables) {
  std::string out;
  for (const auto& [name, type] : ctx.decls)
    out += name + " : " + to_string(type, tables) + ".\n";
  return out;
}

std::string to_string(const CheckOutcome& outcome, const PrintTables& tables) {
  if (is_typed(outcome)) return to_string(typed_type(outcome), tables);
  if (is_ill(outcome)) {
    const Ill& ill = ill_of(outcome);
    return ill.rule + ": " + ill.detail;
  }
  return "fuel exhausted";
}

}  // namespace lpimod
