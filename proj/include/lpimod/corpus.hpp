#pragma once

#include <string>
#include <vector>

#include "lpimod/syntax.hpp"

namespace lpimod {

// One recorded judgment ctx |- term : type. Files hold a sequence of
// `judgment NAME` blocks with optional `ctx` line (comma-separated
// declarations) and mandatory `term` / `type` lines; `#` starts a comment.
struct CorpusJudgment {
  std::string name;
  Context ctx;
  TermPtr term;
  TermPtr type;
};

std::vector<CorpusJudgment> load_corpus_file(const std::string& path, const Specification& spec);

}  // namespace lpimod
