#include "reduce.hpp"

#include <functional>

namespace lpimod {

namespace detail {

std::pair<TermPtr, std::vector<TermPtr>> unroll(const TermPtr& t) {
  std::vector<TermPtr> rargs;
  TermPtr head = t;
  while (const auto* a = as<App>(head)) {
    rargs.push_back(a->arg);
    head = a->fn;
  }
  std::vector<TermPtr> args(rargs.rbegin(), rargs.rend());
  return {head, args};
}

namespace {

enum class MatchRes { Matched, No, Out };

// Matching used during weak-head normalization: where the pattern demands
// structure, the subject position is weak-head normalized first, so redexes
// feeding a rule are contracted before the match is judged. Variable
// positions bind the subject as-is. `Out` means the budget died before a
// verdict.
MatchRes reducing_match(const Signature* sig, const TermPtr& pat, const TermPtr& subj,
                        Fuel& fuel, MatchBindings& binds) {
  if (const auto* v = as<Var>(pat)) {
    binds.emplace(v->name, subj);  // patterns are left-linear
    return MatchRes::Matched;
  }
  if (const auto* c = as<Const>(pat)) {
    auto w = whnf(sig, subj, fuel, nullptr);
    if (!w) return MatchRes::Out;
    const auto* wc = as<Const>(*w);
    return wc && wc->name == c->name ? MatchRes::Matched : MatchRes::No;
  }
  if (const auto* pa = as<App>(pat)) {
    auto w = whnf(sig, subj, fuel, nullptr);
    if (!w) return MatchRes::Out;
    const auto* wa = as<App>(*w);
    if (!wa) return MatchRes::No;
    MatchRes r = reducing_match(sig, pa->fn, wa->fn, fuel, binds);
    if (r != MatchRes::Matched) return r;
    return reducing_match(sig, pa->arg, wa->arg, fuel, binds);
  }
  return MatchRes::No;  // validated patterns contain only variables, constants, applications
}

TermPtr apply_bindings(const TermPtr& rhs, const MatchBindings& binds) {
  TermPtr out = rhs;
  for (const auto& [name, value] : binds) out = substitute(out, name, value);
  return out;
}

}  // namespace

std::optional<TermPtr> whnf(const Signature* sig, TermPtr t, Fuel& fuel,
                            std::vector<TermPtr>* steps) {
  for (;;) {
    // Decompose the spine; rargs holds arguments outermost-first.
    std::vector<TermPtr> rargs;
    TermPtr head = t;
    while (const auto* a = as<App>(head)) {
      rargs.push_back(a->arg);
      head = a->fn;
    }
    if (const auto* l = as<Abs>(head); l && !rargs.empty()) {
      if (!fuel.spend()) return std::nullopt;
      TermPtr next = instantiate(l->body, rargs.back());
      rargs.pop_back();
      for (auto it = rargs.rbegin(); it != rargs.rend(); ++it) next = app(next, *it);
      t = next;
      if (steps) steps->push_back(t);
      continue;
    }
    if (const auto* c = as<Const>(head); c && sig) {
      bool stepped = false;
      for (const auto& rule : sig->rules) {
        auto [lhead, pargs] = unroll(rule.lhs);
        const auto* lc = as<Const>(lhead);
        if (!lc || lc->name != c->name) continue;
        const std::size_t k = pargs.size();
        if (k > rargs.size()) continue;
        MatchBindings binds;
        MatchRes r = MatchRes::Matched;
        for (std::size_t i = 0; i < k && r == MatchRes::Matched; ++i)
          r = reducing_match(sig, pargs[i], rargs[rargs.size() - 1 - i], fuel, binds);
        if (r == MatchRes::Out) return std::nullopt;
        if (r == MatchRes::No) continue;
        if (!fuel.spend()) return std::nullopt;
        TermPtr next = apply_bindings(rule.rhs, binds);
        for (std::size_t i = rargs.size() - k; i-- > 0;) next = app(next, rargs[i]);
        t = next;
        if (steps) steps->push_back(t);
        stepped = true;
        break;
      }
      if (stepped) continue;
    }
    return t;
  }
}

std::optional<TermPtr> normalize(const Signature* sig, const TermPtr& t, Fuel& fuel) {
  auto w = whnf(sig, t, fuel, nullptr);
  if (!w) return std::nullopt;
  if (const auto* l = as<Abs>(*w)) {
    auto ann = normalize(sig, l->ann, fuel);
    if (!ann) return std::nullopt;
    auto [x, body] = open_binder(l->hint, l->body);
    auto nb = normalize(sig, body, fuel);
    if (!nb) return std::nullopt;
    return abs(l->hint, *ann, close_over(*nb, x));
  }
  if (const auto* p = as<Prod>(*w)) {
    auto dom = normalize(sig, p->dom, fuel);
    if (!dom) return std::nullopt;
    auto [x, cod] = open_binder(p->hint, p->cod);
    auto nc = normalize(sig, cod, fuel);
    if (!nc) return std::nullopt;
    return prod(p->hint, *dom, close_over(*nc, x));
  }
  auto [head, args] = unroll(*w);
  if (args.empty()) return *w;
  TermPtr out = head;
  for (const auto& a : args) {
    auto na = normalize(sig, a, fuel);
    if (!na) return std::nullopt;
    out = app(out, *na);
  }
  return out;
}

namespace {

struct Chains {
  std::vector<TermPtr> left, right;
};

// Appends `sub` (minus its first entry, already represented by chain.back())
// to `chain`, mapping every term through `wrap` to lift subterm steps into
// whole-term steps.
void splice(std::vector<TermPtr>* chain, const std::vector<TermPtr>& sub,
            const std::function<TermPtr(const TermPtr&)>& wrap) {
  if (!chain) return;
  for (std::size_t i = 1; i < sub.size(); ++i) chain->push_back(wrap(sub[i]));
}

Conv conv_rec(const Signature* sig, TermPtr a, TermPtr b, Fuel& fuel, Chains* ch);

// Compares two binders (annotation/domain plus body/codomain), splicing
// witness chains through the binder constructor when recording.
template <class Rebuild>
Conv conv_binder(const Signature* sig, const std::string& hint_a, const std::string& hint_b,
                 const TermPtr& fst_a, const TermPtr& fst_b, const TermPtr& snd_a,
                 const TermPtr& snd_b, Fuel& fuel, Chains* ch, Rebuild rebuild) {
  Chains fst_ch;
  Conv cf = conv_rec(sig, fst_a, fst_b, fuel, ch ? &fst_ch : nullptr);
  if (cf == Conv::No) return Conv::No;
  auto [x, body_a] = open_binder(hint_a, snd_a);
  TermPtr body_b = instantiate(snd_b, var(x));
  Chains snd_ch;
  Conv cs = conv_rec(sig, body_a, body_b, fuel, ch ? &snd_ch : nullptr);
  if (cs == Conv::No) return Conv::No;
  if (cf == Conv::Unknown || cs == Conv::Unknown) return Conv::Unknown;
  if (ch) {
    TermPtr fst_done_l = fst_ch.left.back();
    TermPtr fst_done_r = fst_ch.right.back();
    splice(&ch->left, fst_ch.left,
           [&](const TermPtr& f) { return rebuild(hint_a, f, snd_a); });
    splice(&ch->left, snd_ch.left, [&](const TermPtr& s) {
      return rebuild(hint_a, fst_done_l, close_over(s, x));
    });
    splice(&ch->right, fst_ch.right,
           [&](const TermPtr& f) { return rebuild(hint_b, f, snd_b); });
    splice(&ch->right, snd_ch.right, [&](const TermPtr& s) {
      return rebuild(hint_b, fst_done_r, close_over(s, x));
    });
  }
  return Conv::Yes;
}

bool same_head(const TermPtr& a, const TermPtr& b) {
  if (a->data.index() != b->data.index()) return false;
  if (const auto* v = as<Var>(a)) return v->name == as<Var>(b)->name;
  if (const auto* c = as<Const>(a)) return c->name == as<Const>(b)->name;
  if (const auto* s = as<Sort>(a)) return s->name == as<Sort>(b)->name;
  if (const auto* i = as<BoundVar>(a)) return i->index == as<BoundVar>(b)->index;
  return false;
}

Conv conv_rec(const Signature* sig, TermPtr a, TermPtr b, Fuel& fuel, Chains* ch) {
  if (ch) {
    ch->left = {a};
    ch->right = {b};
  }
  if (alpha_eq(a, b)) return Conv::Yes;
  auto wa = whnf(sig, a, fuel, ch ? &ch->left : nullptr);
  if (!wa) return Conv::Unknown;
  auto wb = whnf(sig, b, fuel, ch ? &ch->right : nullptr);
  if (!wb) return Conv::Unknown;
  a = *wa;
  b = *wb;
  if (alpha_eq(a, b)) return Conv::Yes;

  const bool abs_a = as<Abs>(a), abs_b = as<Abs>(b);
  const bool prod_a = as<Prod>(a), prod_b = as<Prod>(b);
  if (abs_a != abs_b || prod_a != prod_b) return Conv::No;  // no eta
  if (abs_a) {
    const auto* la = as<Abs>(a);
    const auto* lb = as<Abs>(b);
    return conv_binder(sig, la->hint, lb->hint, la->ann, lb->ann, la->body, lb->body, fuel, ch,
                       [](const std::string& h, TermPtr f, TermPtr s) {
                         return abs(h, std::move(f), std::move(s));
                       });
  }
  if (prod_a) {
    const auto* pa = as<Prod>(a);
    const auto* pb = as<Prod>(b);
    return conv_binder(sig, pa->hint, pb->hint, pa->dom, pb->dom, pa->cod, pb->cod, fuel, ch,
                       [](const std::string& h, TermPtr f, TermPtr s) {
                         return prod(h, std::move(f), std::move(s));
                       });
  }

  // Both sides are rigid spines: heads agree or the terms differ for good.
  auto [ha, args_a] = unroll(a);
  auto [hb, args_b] = unroll(b);
  if (!same_head(ha, hb)) return Conv::No;
  if (args_a.size() != args_b.size()) return Conv::No;

  std::vector<Chains> sub(args_a.size());
  Conv worst = Conv::Yes;
  for (std::size_t i = 0; i < args_a.size(); ++i) {
    Conv c = conv_rec(sig, args_a[i], args_b[i], fuel, ch ? &sub[i] : nullptr);
    if (c == Conv::No) return Conv::No;
    if (c == Conv::Unknown) worst = Conv::Unknown;
  }
  if (worst != Conv::Yes) return worst;
  if (ch) {
    std::vector<TermPtr> cur_l = args_a, cur_r = args_b;
    auto rebuild = [](const TermPtr& head, const std::vector<TermPtr>& args) {
      TermPtr out = head;
      for (const auto& x : args) out = app(out, x);
      return out;
    };
    for (std::size_t i = 0; i < args_a.size(); ++i) {
      splice(&ch->left, sub[i].left, [&](const TermPtr& s) {
        cur_l[i] = s;
        return rebuild(ha, cur_l);
      });
      cur_l[i] = sub[i].left.back();
      splice(&ch->right, sub[i].right, [&](const TermPtr& s) {
        cur_r[i] = s;
        return rebuild(hb, cur_r);
      });
      cur_r[i] = sub[i].right.back();
    }
  }
  return Conv::Yes;
}

}  // namespace

Conv conv(const Signature* sig, const TermPtr& a, const TermPtr& b, Fuel& fuel,
          ConvTrace* trace) {
  Chains ch;
  Conv c = conv_rec(sig, a, b, fuel, trace ? &ch : nullptr);
  if (trace && c == Conv::Yes) {
    trace->left = std::move(ch.left);
    trace->right = std::move(ch.right);
  }
  return c;
}

}  // namespace detail

std::optional<TermPtr> beta_step(const TermPtr& t) {
  if (const auto* a = as<App>(t)) {
    if (const auto* l = as<Abs>(a->fn)) return instantiate(l->body, a->arg);
    if (auto fn = beta_step(a->fn)) return app(*fn, a->arg);
    if (auto arg = beta_step(a->arg)) return app(a->fn, *arg);
    return std::nullopt;
  }
  if (const auto* l = as<Abs>(t)) {
    if (auto ann = beta_step(l->ann)) return abs(l->hint, *ann, l->body);
    auto [x, body] = open_binder(l->hint, l->body);
    if (auto nb = beta_step(body)) return abs(l->hint, l->ann, close_over(*nb, x));
    return std::nullopt;
  }
  if (const auto* p = as<Prod>(t)) {
    if (auto dom = beta_step(p->dom)) return prod(p->hint, *dom, p->cod);
    auto [x, cod] = open_binder(p->hint, p->cod);
    if (auto nc = beta_step(cod)) return prod(p->hint, p->dom, close_over(*nc, x));
    return std::nullopt;
  }
  return std::nullopt;
}

namespace {

void collect_reducts(const Signature* sig, const TermPtr& t,
                     const std::function<TermPtr(const TermPtr&)>& wrap,
                     std::vector<TermPtr>& out) {
  if (const auto* a = as<App>(t)) {
    if (const auto* l = as<Abs>(a->fn)) out.push_back(wrap(instantiate(l->body, a->arg)));
  }
  if (sig) {
    for (const auto& rule : sig->rules) {
      if (auto binds = match_pattern(rule.lhs, t)) {
        TermPtr rhs = rule.rhs;
        for (const auto& [n, v] : *binds) rhs = substitute(rhs, n, v);
        out.push_back(wrap(rhs));
      }
    }
  }
  if (const auto* a = as<App>(t)) {
    collect_reducts(sig, a->fn, [&](const TermPtr& s) { return wrap(app(s, a->arg)); }, out);
    collect_reducts(sig, a->arg, [&](const TermPtr& s) { return wrap(app(a->fn, s)); }, out);
  } else if (const auto* l = as<Abs>(t)) {
    collect_reducts(sig, l->ann, [&](const TermPtr& s) { return wrap(abs(l->hint, s, l->body)); },
                    out);
    auto [x, body] = open_binder(l->hint, l->body);
    collect_reducts(sig, body,
                    [&, x = x](const TermPtr& s) { return wrap(abs(l->hint, l->ann, close_over(s, x))); },
                    out);
  } else if (const auto* p = as<Prod>(t)) {
    collect_reducts(sig, p->dom, [&](const TermPtr& s) { return wrap(prod(p->hint, s, p->cod)); },
                    out);
    auto [x, cod] = open_binder(p->hint, p->cod);
    collect_reducts(sig, cod,
                    [&, x = x](const TermPtr& s) { return wrap(prod(p->hint, p->dom, close_over(s, x))); },
                    out);
  }
}

}  // namespace

std::vector<TermPtr> one_step_reducts(const TermPtr& t) {
  std::vector<TermPtr> out;
  collect_reducts(nullptr, t, [](const TermPtr& s) { return s; }, out);
  return out;
}

std::vector<TermPtr> one_step_reducts_mod(const Signature& sig, const TermPtr& t) {
  std::vector<TermPtr> out;
  collect_reducts(&sig, t, [](const TermPtr& s) { return s; }, out);
  return out;
}

std::optional<TermPtr> whnf_beta(const TermPtr& t, Fuel& fuel) {
  return detail::whnf(nullptr, t, fuel, nullptr);
}

std::optional<TermPtr> normalize(const TermPtr& t, Fuel& fuel) {
  return detail::normalize(nullptr, t, fuel);
}

Conv convertible(const TermPtr& a, const TermPtr& b, Fuel& fuel, ConvTrace* trace) {
  return detail::conv(nullptr, a, b, fuel, trace);
}

std::optional<MatchBindings> match_pattern(const TermPtr& pattern, const TermPtr& subject) {
  MatchBindings binds;
  std::function<bool(const TermPtr&, const TermPtr&)> go = [&](const TermPtr& pat,
                                                               const TermPtr& subj) -> bool {
    if (const auto* v = as<Var>(pat)) {
      auto [it, inserted] = binds.emplace(v->name, subj);
      return inserted || alpha_eq(it->second, subj);
    }
    if (const auto* c = as<Const>(pat)) {
      const auto* sc = as<Const>(subj);
      return sc && sc->name == c->name;
    }
    if (const auto* pa = as<App>(pat)) {
      const auto* sa = as<App>(subj);
      return sa && go(pa->fn, sa->fn) && go(pa->arg, sa->arg);
    }
    // Sorts, binders and indices are outside the accepted pattern class;
    // treat them as opaque and require structural equality.
    return alpha_eq(pat, subj);
  };
  if (!go(pattern, subject)) return std::nullopt;
  return binds;
}

std::optional<TermPtr> rewrite_step(const Signature& sig, const TermPtr& t) {
  for (const auto& rule : sig.rules) {
    if (auto binds = match_pattern(rule.lhs, t)) {
      TermPtr rhs = rule.rhs;
      for (const auto& [n, v] : *binds) rhs = substitute(rhs, n, v);
      return rhs;
    }
  }
  if (const auto* a = as<App>(t)) {
    if (auto fn = rewrite_step(sig, a->fn)) return app(*fn, a->arg);
    if (auto arg = rewrite_step(sig, a->arg)) return app(a->fn, *arg);
    return std::nullopt;
  }
  if (const auto* l = as<Abs>(t)) {
    if (auto ann = rewrite_step(sig, l->ann)) return abs(l->hint, *ann, l->body);
    auto [x, body] = open_binder(l->hint, l->body);
    if (auto nb = rewrite_step(sig, body)) return abs(l->hint, l->ann, close_over(*nb, x));
    return std::nullopt;
  }
  if (const auto* p = as<Prod>(t)) {
    if (auto dom = rewrite_step(sig, p->dom)) return prod(p->hint, *dom, p->cod);
    auto [x, cod] = open_binder(p->hint, p->cod);
    if (auto nc = rewrite_step(sig, cod)) return prod(p->hint, p->dom, close_over(*nc, x));
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<TermPtr> whnf_mod(const Signature& sig, const TermPtr& t, Fuel& fuel) {
  return detail::whnf(&sig, t, fuel, nullptr);
}

std::optional<TermPtr> normalize_mod(const Signature& sig, const TermPtr& t, Fuel& fuel) {
  return detail::normalize(&sig, t, fuel);
}

Conv convertible_mod(const Signature& sig, const TermPtr& a, const TermPtr& b, Fuel& fuel) {
  return detail::conv(&sig, a, b, fuel, nullptr);
}

}  // namespace lpimod
