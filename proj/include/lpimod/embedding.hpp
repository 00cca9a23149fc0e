#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "lpimod/lpi.hpp"
#include "lpimod/pts.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

struct EmbeddingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The signature and rewrite rules embedding a source system: per sort s a
// code type u_s and a decoder eps_s, per axiom a code dot_s1, per rule a code
// constructor pi_s1_s2_s3, with decoding rules for codes of sorts and of
// products. Name tables run both ways so the inverse translation can
// recognize the generated constants.
struct EmbeddedSystem {
  Specification source;
  Signature signature;

  std::map<std::string, std::string> u_name;    // sort -> constant
  std::map<std::string, std::string> eps_name;  // sort -> constant
  std::map<std::string, std::string> dot_name;  // axiom source sort -> constant
  std::map<std::array<std::string, 3>, std::string> pi_name;

  std::map<std::string, std::string> sort_of_u;    // constant -> sort
  std::map<std::string, std::string> sort_of_eps;  // constant -> sort
  std::map<std::string, std::string> sort_of_dot;  // constant -> axiom source sort
  std::map<std::string, std::array<std::string, 3>> pi_args;

  TermPtr u(const std::string& s) const;
  TermPtr eps(const std::string& s) const;
  TermPtr dot(const std::string& s) const;
  TermPtr pi(const std::string& s1, const std::string& s2, const std::string& s3) const;
};

// Builds and validates the embedding. Throws EmbeddingError when the spec is
// invalid, a sort name contains '@', generated constant names collide, or a
// generated rule fails validation.
EmbeddedSystem build_embedding(const Specification& spec);

using TranslateOutcome = std::variant<TermPtr, Ill, Unknown>;

// |m| under ctx. The input must be a ctx-term of the source system; it is
// checked first, and translation failures report the source-side error.
TranslateOutcome translate_term(const EmbeddedSystem& emb, const Context& ctx, const TermPtr& m,
                                Fuel& fuel);
// ||a|| under ctx: sorts to codes, products pointwise, anything else to
// eps_s |a| with s the sort of a.
TranslateOutcome translate_type(const EmbeddedSystem& emb, const Context& ctx, const TermPtr& a,
                                Fuel& fuel);
std::variant<Context, Ill, Unknown> translate_context(const EmbeddedSystem& emb,
                                                      const Context& ctx, Fuel& fuel);

}  // namespace lpimod
