#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lpimod/embedding.hpp"
#include "lpimod/lpi.hpp"
#include "lpimod/pts.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

// The minimal completion: one fresh top sort @tau, an axiom s : @tau for
// every base top sort, and a rule (s1, s2, @tau) for every uncovered pair.
// The completed specification is full.
struct CompletedSpec {
  Specification base;
  Specification completed;
  std::string tau = std::string(tau_sort_name);
};

// Throws std::invalid_argument when the spec is invalid or already contains
// the reserved sort (impossible for parsed input).
CompletedSpec minimal_completion(const Specification& spec);

// Result of scanning for Kind-level beta redexes. The term is in the
// restricted fragment when it is well-typed, no offender exists, and no
// level classification ran out of fuel.
struct KindRedexScan {
  CheckOutcome typing = Unknown{};
  std::optional<TermPtr> offender;  // leftmost-outermost Kind-level redex
  bool unknown = false;
  bool in_fragment() const { return is_typed(typing) && !offender && !unknown; }
};
KindRedexScan is_lpi_minus(const EmbeddedSystem& emb, const Context& ctx, const TermPtr& t,
                           Fuel& fuel);

std::variant<long long, Ill, Unknown> count_kind_redexes(const EmbeddedSystem& emb,
                                                         const Context& ctx, const TermPtr& t,
                                                         Fuel& fuel);

// Contracts Kind-level redexes (leftmost-outermost among that class) until
// none remain. steps holds every intermediate whole term, input first.
struct KindElimTrace {
  std::vector<TermPtr> steps;
  std::optional<Ill> error;
  bool unknown = false;
  const TermPtr& result() const { return steps.back(); }
  bool ok() const { return !error && !unknown; }
};
KindElimTrace eliminate_kind_redexes(const EmbeddedSystem& emb, const Context& ctx,
                                     const TermPtr& t, Fuel& fuel);

// Inverse translations are partial: total on the restricted fragment over
// the embedding's signature, and reported as outside the image elsewhere.
struct OutsideImage {
  std::string detail;
};
using InverseOutcome = std::variant<TermPtr, OutsideImage>;

InverseOutcome inverse_term(const EmbeddedSystem& emb, const TermPtr& t);
InverseOutcome inverse_type(const EmbeddedSystem& emb, const TermPtr& a);
// Requires an object context: every declaration typed by Type.
std::variant<Context, OutsideImage, Ill, Unknown> inverse_context(const EmbeddedSystem& emb,
                                                                  const Context& ctx, Fuel& fuel);

// Height of a type whose completed-system sort is @tau; 0 when the sort is
// anything else, undefined on @tau itself.
std::variant<long long, Ill, Unknown> height_tau(const CompletedSpec& cspec, const Context& ctx,
                                                 const TermPtr& a, Fuel& fuel);

// Contracts redexes whose abstraction's product type is @tau-sorted in the
// completed system (leftmost-outermost among that class); redexes formable
// in the base system are left alone.
struct TauReduction {
  std::vector<TermPtr> steps;
  std::optional<Ill> error;
  bool unknown = false;
  const TermPtr& result() const { return steps.back(); }
  bool ok() const { return !error && !unknown; }
};
TauReduction reduce_tau_redexes(const CompletedSpec& cspec, const Context& ctx, const TermPtr& m,
                                Fuel& fuel);

// Audit trail of the extraction pipeline. Every stage's typing claim is
// re-checked; the first failing stage is named and everything up to it kept.
struct ExtractionTrace {
  TermPtr input;
  Context translated_ctx;
  TermPtr translated_type;
  CheckOutcome input_check = Unknown{};
  std::vector<TermPtr> kind_elim_steps;
  TermPtr kind_reduced;
  CheckOutcome kind_reduced_check = Unknown{};
  TermPtr inverted;
  CheckOutcome inverted_check = Unknown{};
  std::vector<TermPtr> tau_steps;
  TermPtr witness;
  CheckOutcome final_check = Unknown{};

  std::string failed_stage;  // empty on success
  std::string failure_detail;
  bool fuel_exhausted = false;
  bool ok() const { return failed_stage.empty(); }
};

ExtractionTrace extract_witness(const EmbeddedSystem& emb, const CompletedSpec& cspec,
                                const Context& src_ctx, const TermPtr& src_type, const TermPtr& n,
                                Fuel& fuel);

}  // namespace lpimod
