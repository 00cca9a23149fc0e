#include "lpimod/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpimod/parse.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

namespace {

std::string strip(const std::string& line) {
  std::string s = line;
  if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<CorpusJudgment> load_corpus_file(const std::string& path,
                                             const Specification& spec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<CorpusJudgment> out;
  SymbolTable symbols{&spec, nullptr};
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
  };
  CorpusJudgment cur;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    if (!cur.term || !cur.type) bad("judgment `" + cur.name + "` needs both term and type");
    out.push_back(cur);
    cur = CorpusJudgment{};
    open = false;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(line);
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::string key;
    ls >> key;
    std::string rest;
    std::getline(ls, rest);
    rest = strip(rest);
    try {
      if (key == "judgment") {
        flush();
        if (rest.empty()) bad("judgment needs a name");
        cur.name = rest;
        open = true;
      } else if (key == "ctx") {
        if (!open) bad("ctx outside a judgment");
        // Comma-separated declarations; context files use dot-terminated
        // lines instead, so rewrite commas before reusing that parser.
        std::string entries;
        for (char c : rest) entries += (c == ',') ? '.' : c;
        if (!entries.empty()) entries += '.';
        cur.ctx = parse_context(entries, symbols);
      } else if (key == "term") {
        if (!open) bad("term outside a judgment");
        cur.term = parse_term(rest, symbols);
      } else if (key == "type") {
        if (!open) bad("type outside a judgment");
        cur.type = parse_term(rest, symbols);
      } else {
        bad("unknown corpus keyword `" + key + "`");
      }
    } catch (const ParseError& e) {
      bad(std::string(e.what()) + " (column " + std::to_string(e.col) + ")");
    }
  }
  flush();
  return out;
}

}  // namespace lpimod
