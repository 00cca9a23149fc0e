#include "lpimod/builtins.hpp"

#include <string>
#include <utility>
#include <vector>

#include "lpimod/syntax.hpp"

namespace lpimod {

namespace {

Specification make_spec(std::vector<std::string> sorts,
                        std::vector<std::pair<std::string, std::string>> axioms,
                        std::vector<std::pair<std::pair<std::string, std::string>, std::string>>
                            rules) {
  Specification s;
  s.sorts = std::move(sorts);
  for (auto& [a, b] : axioms) s.axioms.emplace(std::move(a), std::move(b));
  for (auto& [ab, c] : rules) s.rules.emplace(std::move(ab), std::move(c));
  return s;
}

}  // namespace

const std::vector<std::pair<std::string, Specification>>& builtin_specs() {
  static const std::vector<std::pair<std::string, Specification>> specs = [] {
    std::vector<std::pair<std::string, Specification>> v;
    v.emplace_back("lambda-arrow",
                   make_spec({"Type", "Kind"}, {{"Type", "Kind"}},
                             {{{"Type", "Type"}, "Type"}}));
    v.emplace_back("lambda-2",
                   make_spec({"Type", "Kind"}, {{"Type", "Kind"}},
                             {{{"Type", "Type"}, "Type"}, {{"Kind", "Type"}, "Type"}}));
    v.emplace_back("lambda-P",
                   make_spec({"Type", "Kind"}, {{"Type", "Kind"}},
                             {{{"Type", "Type"}, "Type"}, {{"Type", "Kind"}, "Kind"}}));
    v.emplace_back("lambda-C",
                   make_spec({"Type", "Kind"}, {{"Type", "Kind"}},
                             {{{"Type", "Type"}, "Type"},
                              {{"Kind", "Type"}, "Type"},
                              {{"Type", "Kind"}, "Kind"},
                              {{"Kind", "Kind"}, "Kind"}}));
    v.emplace_back("HOL",
                   make_spec({"Prop", "Type", "Kind"}, {{"Prop", "Type"}, {"Type", "Kind"}},
                             {{{"Prop", "Prop"}, "Prop"},
                              {{"Type", "Prop"}, "Prop"},
                              {{"Type", "Type"}, "Type"}}));
    v.emplace_back("U-minus",
                   make_spec({"Prop", "Type", "Kind"}, {{"Prop", "Type"}, {"Type", "Kind"}},
                             {{{"Prop", "Prop"}, "Prop"},
                              {{"Type", "Prop"}, "Prop"},
                              {{"Type", "Type"}, "Type"},
                              {{"Kind", "Type"}, "Type"}}));
    return v;
  }();
  return specs;
}

const Specification* find_builtin(const std::string& name) {
  for (const auto& [n, spec] : builtin_specs())
    if (n == name) return &spec;
  return nullptr;
}

}  // namespace lpimod
