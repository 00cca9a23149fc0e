#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "lpimod/builtins.hpp"
#include "lpimod/conservativity.hpp"
#include "lpimod/embedding.hpp"
#include "lpimod/lpi.hpp"
#include "lpimod/parse.hpp"
#include "lpimod/print.hpp"
#include "lpimod/pts.hpp"
#include "lpimod/syntax.hpp"

namespace {

using namespace lpimod;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --spec takes a stock system name or a specification file path.
Specification load_spec(const std::string& arg) {
  if (const Specification* builtin = find_builtin(arg)) return *builtin;
  return parse_spec(slurp(arg));
}

struct Options {
  std::string spec;
  std::string sig;
  std::string ctx;
  std::string type;
  std::string term;
  std::string termfile;
  bool emit_signature = false;
  bool as_type = false;
  long long fuel = default_fuel;
  bool trace = false;
};

int report(const CheckOutcome& out, const PrintTables& tables) {
  if (is_typed(out)) {
    std::cout << to_string(typed_type(out), tables) << "\n";
    return 0;
  }
  std::cerr << to_string(out, tables) << "\n";
  return is_ill(out) ? 1 : 2;
}

int run_pts_check(const Options& opt) {
  Specification spec = load_spec(opt.spec);
  SpecReport rep = validate_spec(spec);
  if (!rep.ok()) {
    std::cerr << "invalid specification";
    for (const auto& e : rep.errors) std::cerr << ": " << e;
    std::cerr << "\n";
    return 1;
  }
  SymbolTable symbols{&spec, nullptr};
  PrintTables tables{&spec, nullptr};
  Context ctx;
  if (!opt.ctx.empty()) ctx = parse_context(slurp(opt.ctx), symbols);
  Fuel fuel{opt.fuel};
  WfReport wf = wf_context(spec, ctx, fuel);
  if (wf.unknown) {
    std::cerr << "fuel exhausted while checking the context\n";
    return 2;
  }
  if (!wf.ok) {
    std::cerr << wf.rule << ": " << wf.detail << "\n";
    return 1;
  }
  TermPtr term = parse_term(slurp(opt.termfile), symbols);
  if (opt.trace) {
    std::cerr << "context:\n" << to_string(ctx, tables);
    std::cerr << "term: " << to_string(term, tables) << "\n";
  }
  CheckOutcome out;
  if (!opt.type.empty()) {
    TermPtr against = parse_term(slurp(opt.type), symbols);
    out = check(spec, ctx, term, against, fuel);
  } else {
    out = infer(spec, ctx, term, fuel);
  }
  return report(out, tables);
}

int run_lpi_check(const Options& opt) {
  Signature sig = parse_signature(slurp(opt.sig));
  Fuel fuel{opt.fuel};
  WfReport valid = validate_signature(sig, fuel);
  if (valid.unknown) {
    std::cerr << "fuel exhausted while validating the signature\n";
    return 2;
  }
  if (!valid.ok) {
    std::cerr << valid.rule << ": " << valid.detail << "\n";
    return 1;
  }
  SymbolTable symbols{&lpi_base_spec(), &sig};
  PrintTables tables{&lpi_base_spec(), &sig};
  Context ctx;
  if (!opt.ctx.empty()) ctx = parse_context(slurp(opt.ctx), symbols);
  WfReport wf = wf_context_mod(sig, ctx, fuel);
  if (wf.unknown) {
    std::cerr << "fuel exhausted while checking the context\n";
    return 2;
  }
  if (!wf.ok) {
    std::cerr << wf.rule << ": " << wf.detail << "\n";
    return 1;
  }
  TermPtr term = parse_term(slurp(opt.termfile), symbols);
  if (opt.trace) {
    std::cerr << "context:\n" << to_string(ctx, tables);
    std::cerr << "term: " << to_string(term, tables) << "\n";
  }
  CheckOutcome out;
  if (!opt.type.empty()) {
    TermPtr against = parse_term(slurp(opt.type), symbols);
    out = check_mod(sig, ctx, term, against, fuel);
  } else {
    out = infer_mod(sig, ctx, term, fuel);
  }
  return report(out, tables);
}

int run_embed(const Options& opt) {
  Specification spec = load_spec(opt.spec);
  EmbeddedSystem emb = build_embedding(spec);
  PrintTables tables{&lpi_base_spec(), &emb.signature};
  SymbolTable symbols{&spec, nullptr};
  Fuel fuel{opt.fuel};
  if (!opt.term.empty()) {
    TermPtr m = parse_term(slurp(opt.term), symbols);
    TranslateOutcome out = translate_term(emb, Context{}, m, fuel);
    if (const auto* t = std::get_if<TermPtr>(&out)) {
      std::cout << to_string(*t, tables) << "\n";
      return 0;
    }
    if (const auto* bad = std::get_if<Ill>(&out)) {
      std::cerr << bad->rule << ": " << bad->detail << "\n";
      return 1;
    }
    std::cerr << "fuel exhausted\n";
    return 2;
  }
  if (!opt.type.empty()) {
    TermPtr a = parse_term(slurp(opt.type), symbols);
    TranslateOutcome out = translate_type(emb, Context{}, a, fuel);
    if (const auto* t = std::get_if<TermPtr>(&out)) {
      std::cout << to_string(*t, tables) << "\n";
      return 0;
    }
    if (const auto* bad = std::get_if<Ill>(&out)) {
      std::cerr << bad->rule << ": " << bad->detail << "\n";
      return 1;
    }
    std::cerr << "fuel exhausted\n";
    return 2;
  }
  std::cout << to_string(emb.signature);
  return 0;
}

int run_complete(const Options& opt) {
  CompletedSpec cspec = minimal_completion(load_spec(opt.spec));
  std::cout << to_string(cspec.completed);
  return 0;
}

int run_invert(const Options& opt) {
  EmbeddedSystem emb = build_embedding(load_spec(opt.spec));
  SymbolTable symbols{&lpi_base_spec(), &emb.signature};
  TermPtr t = parse_term(slurp(opt.termfile), symbols);
  InverseOutcome out = opt.as_type ? inverse_type(emb, t) : inverse_term(emb, t);
  if (const auto* bad = std::get_if<OutsideImage>(&out)) {
    std::cerr << "outside the image: " << bad->detail << "\n";
    return 1;
  }
  PrintTables tables{&emb.source, nullptr};
  std::cout << to_string(std::get<TermPtr>(out), tables) << "\n";
  return 0;
}

void dump_extraction(const ExtractionTrace& tr, const EmbeddedSystem& emb,
                     const Specification& spec) {
  PrintTables lt{&lpi_base_spec(), &emb.signature};
  PrintTables st{&spec, nullptr};
  std::cerr << "input: " << to_string(tr.input, lt) << "\n";
  if (tr.translated_ctx.size())
    std::cerr << "translated context:\n" << to_string(tr.translated_ctx, lt);
  if (tr.translated_type)
    std::cerr << "translated type: " << to_string(tr.translated_type, lt) << "\n";
  for (std::size_t i = 1; i < tr.kind_elim_steps.size(); ++i)
    std::cerr << "kind step " << i << ": " << to_string(tr.kind_elim_steps[i], lt) << "\n";
  if (tr.inverted) std::cerr << "inverted: " << to_string(tr.inverted, st) << "\n";
  for (std::size_t i = 1; i < tr.tau_steps.size(); ++i)
    std::cerr << "tau step " << i << ": " << to_string(tr.tau_steps[i], st) << "\n";
  if (tr.witness) std::cerr << "witness: " << to_string(tr.witness, st) << "\n";
  if (!tr.ok()) std::cerr << "failed at " << tr.failed_stage << ": " << tr.failure_detail << "\n";
}

int run_extract(const Options& opt) {
  Specification spec = load_spec(opt.spec);
  EmbeddedSystem emb = build_embedding(spec);
  CompletedSpec cspec = minimal_completion(spec);
  SymbolTable src_symbols{&spec, nullptr};
  Context src_ctx;
  if (!opt.ctx.empty()) src_ctx = parse_context(slurp(opt.ctx), src_symbols);
  TermPtr src_type = parse_term(slurp(opt.type), src_symbols);
  SymbolTable lpi_symbols{&lpi_base_spec(), &emb.signature};
  TermPtr n = parse_term(slurp(opt.termfile), lpi_symbols);
  Fuel fuel{opt.fuel};
  ExtractionTrace tr = extract_witness(emb, cspec, src_ctx, src_type, n, fuel);
  if (opt.trace) dump_extraction(tr, emb, spec);
  if (tr.ok()) {
    std::cout << to_string(tr.witness, PrintTables{&spec, nullptr}) << "\n";
    return 0;
  }
  std::cerr << tr.failed_stage << ": " << tr.failure_detail << "\n";
  return tr.fuel_exhausted ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checker for pure type systems and the lambda-Pi calculus modulo rewriting"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--fuel", opt.fuel, "reduction budget")->capture_default_str();
  app.add_flag("--trace", opt.trace, "print an audit trail to stderr");

  auto* pts = app.add_subcommand("pts-check", "type-check a term in a pure type system");
  pts->add_option("--spec", opt.spec, "stock system name or specification file")->required();
  pts->add_option("--ctx", opt.ctx, "context file");
  pts->add_option("--type", opt.type, "expected type file");
  pts->add_option("termfile", opt.termfile, "term file")->required();

  auto* lpi = app.add_subcommand("lpi-check", "type-check a term modulo a rewrite signature");
  lpi->add_option("--sig", opt.sig, "signature file")->required();
  lpi->add_option("--ctx", opt.ctx, "context file");
  lpi->add_option("--type", opt.type, "expected type file");
  lpi->add_option("termfile", opt.termfile, "term file")->required();

  auto* embed = app.add_subcommand("embed", "translate a system, term, or type into lambda-Pi");
  embed->add_option("--spec", opt.spec, "stock system name or specification file")->required();
  embed->add_flag("--emit-signature", opt.emit_signature, "print the generated signature");
  embed->add_option("--term", opt.term, "source term file to translate");
  embed->add_option("--type", opt.type, "source type file to translate");

  auto* complete = app.add_subcommand("complete", "print the minimal full completion");
  complete->add_option("--spec", opt.spec, "stock system name or specification file")
      ->required();

  auto* invert = app.add_subcommand("invert", "map a lambda-Pi term back to the source system");
  invert->add_option("--spec", opt.spec, "stock system name or specification file")->required();
  invert->add_flag("--as-type", opt.as_type, "invert as a type instead of a term");
  invert->add_option("termfile", opt.termfile, "term file")->required();

  auto* extract = app.add_subcommand("extract", "run the full conservativity pipeline");
  extract->add_option("--spec", opt.spec, "stock system name or specification file")->required();
  extract->add_option("--ctx", opt.ctx, "source context file");
  extract->add_option("--type", opt.type, "source type file")->required();
  extract->add_option("termfile", opt.termfile, "lambda-Pi term file")->required();

  for (auto* sub : {pts, lpi, embed, complete, invert, extract}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (pts->parsed()) return run_pts_check(opt);
    if (lpi->parsed()) return run_lpi_check(opt);
    if (embed->parsed()) return run_embed(opt);
    if (complete->parsed()) return run_complete(opt);
    if (invert->parsed()) return run_invert(opt);
    return run_extract(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line << ", column " << e.col << ": " << e.what()
              << "\n";
    return 3;
  } catch (const EmbeddingError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
}
