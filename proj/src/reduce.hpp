#pragma once

// Internal reduction engine shared by the pure beta kernel and the kernel
// modulo rewriting: sig == nullptr means plain beta.

#include <optional>
#include <utility>
#include <vector>

#include "lpimod/lpi.hpp"
#include "lpimod/pts.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod::detail {

// Application spine: head plus arguments in application order.
std::pair<TermPtr, std::vector<TermPtr>> unroll(const TermPtr& t);

// Weak head normal form. When `steps` is given, every intermediate whole
// term (one entry per head step) is appended to it.
std::optional<TermPtr> whnf(const Signature* sig, TermPtr t, Fuel& fuel,
                            std::vector<TermPtr>* steps);

std::optional<TermPtr> normalize(const Signature* sig, const TermPtr& t, Fuel& fuel);

// Conversion with optional reduction-witness recording (chains from each
// input to a shared reduct; populated only on a Yes verdict).
Conv conv(const Signature* sig, const TermPtr& a, const TermPtr& b, Fuel& fuel,
          ConvTrace* trace);

}  // namespace lpimod::detail
