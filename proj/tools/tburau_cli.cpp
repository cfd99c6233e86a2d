// Command-line front end: Thompson element arithmetic, the discrete
// Godbillon-Vey cocycle, Burau matrices, the braided representation, Neretin
// spheromorphisms, and the seeded verification suites.
//
// Output is JSON lines (one value per line); --pretty switches to indented
// JSON. Exit codes: 0 success, 1 domain/parse error, 2 invariant violation.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tburau/json_io.hpp"
#include "tburau/verify.hpp"

using namespace tburau;

namespace {

int g_indent = -1;  // -1 = compact json lines

void emit(const json& j) { std::cout << j.dump(g_indent) << "\n"; }

// positional arguments are file paths or inline JSON
json load_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open file: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + " in " + arg);
  }
}

std::vector<std::pair<int, int>> parse_braid_word(const std::string& text) {
  // letters like "s1 s2^-1 s3"
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    if (tok.size() < 2 || tok[0] != 's') throw ParseError("bad braid letter: " + tok);
    size_t caret = tok.find('^');
    int idx = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    int exp = 1;
    if (caret != std::string::npos) exp = std::stoi(tok.substr(caret + 1));
    if (exp != 1 && exp != -1) throw ParseError("braid exponents must be +-1: " + tok);
    out.push_back({idx, exp});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for Thompson's group T, its braided extension and the "
               "Burau representation"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent JSON output");

  std::string file_a, file_b, file_c;
  long long seed = 0, ncases = 100;
  int window = 6, n_strands = 3, radius = 3;
  bool reduced = false;
  std::string braid_text, suite_name = "all", t_eval;

  auto* thom = app.add_subcommand("thom", "Thompson group element operations");
  thom->require_subcommand(1);
  auto* thom_compose = thom->add_subcommand("compose", "compose two elements (left after right)");
  thom_compose->add_option("garg", file_a)->required();
  thom_compose->add_option("harg", file_b)->required();
  auto* thom_inv = thom->add_subcommand("inv", "invert an element");
  thom_inv->add_option("garg", file_a)->required();
  auto* thom_eval = thom->add_subcommand("eval", "evaluate the circle map at a dyadic");
  thom_eval->add_option("garg", file_a)->required();
  thom_eval->add_option("xarg", file_b, "dyadic {num, level}")->required();
  auto* thom_reduce = thom->add_subcommand("reduce", "reduce a symbol");
  thom_reduce->add_option("sarg", file_a)->required();

  auto* gv_cmd = app.add_subcommand("gv", "discrete Godbillon-Vey cocycle value");
  gv_cmd->add_option("garg", file_a)->required();
  gv_cmd->add_option("harg", file_b)->required();

  auto* gvd = app.add_subcommand("gv-defect", "cocycle defect of gv on a triple");
  gvd->add_option("garg", file_a)->required();
  gvd->add_option("harg", file_b)->required();
  gvd->add_option("karg", file_c)->required();

  auto* burau = app.add_subcommand("burau", "Burau matrix of a braid word in B_n");
  burau->add_option("--n", n_strands, "number of strands")->required();
  burau->add_option("word", braid_text, "letters like \"s1 s2^-1\"")->required();
  burau->add_flag("--reduced", reduced, "reduced (n-1)x(n-1) variant");
  burau->add_option("--t-eval", t_eval, "also print a numeric evaluation at this t (display only)");

  auto* braided = app.add_subcommand("braided", "braided Thompson group operations");
  braided->require_subcommand(1);
  auto* brho = braided->add_subcommand("rho", "structured operator of a braided word");
  brho->add_option("word", file_a, "word JSON: twists {edge,exp} and sections {section}")
      ->required();
  brho->add_option("--window", window, "geodesic radius of the dense rendering");
  auto* bext = braided->add_subcommand("ext-cocycle", "extension cocycle of two T elements");
  bext->add_option("garg", file_a)->required();
  bext->add_option("harg", file_b)->required();
  auto* brel = braided->add_subcommand("relations", "run the braid-relation gate");
  brel->add_option("--window", window, "geodesic radius of the gate");

  auto* ner = app.add_subcommand("neretin", "spheromorphism operations");
  ner->require_subcommand(1);
  auto* ncomp = ner->add_subcommand("compose", "compose two spheromorphisms");
  ncomp->add_option("garg", file_a)->required();
  ncomp->add_option("harg", file_b)->required();
  auto* nidx = ner->add_subcommand("index", "Fredholm index of a spheromorphism");
  nidx->add_option("garg", file_a)->required();
  auto* nsig = ner->add_subcommand("sign-cocycle", "signature cocycle of two spheromorphisms");
  nsig->add_option("garg", file_a)->required();
  nsig->add_option("harg", file_b)->required();

  auto* tree = app.add_subcommand("tree", "decorated tree utilities");
  tree->require_subcommand(1);
  auto* tdot = tree->add_subcommand("dot", "DOT export of a truncation");
  tdot->add_option("--radius", radius, "geodesic radius");

  auto* ver = app.add_subcommand("verify", "seeded verification suites");
  ver->add_option("suite", suite_name,
                  "thompson-laws | gv-cocycle | burau-relations | rho-homomorphism | "
                  "extension-cocycle | neretin-cocycle | determinant-oracle | all")
      ->required();
  ver->add_option("--seed", seed, "PRNG seed");
  ver->add_option("--cases", ncases, "cases per property");

  CLI11_PARSE(app, argc, argv);
  g_indent = pretty ? 2 : -1;

  try {
    if (thom_compose->parsed()) {
      emit(to_json(compose(telement_from_json(load_arg(file_a)),
                           telement_from_json(load_arg(file_b)))));
    } else if (thom_inv->parsed()) {
      emit(to_json(inverse(telement_from_json(load_arg(file_a)))));
    } else if (thom_eval->parsed()) {
      TElement g = telement_from_json(load_arg(file_a));
      Dyadic x = dyadic_from_json(load_arg(file_b));
      emit(to_json(to_plmap(g).eval(x)));
    } else if (thom_reduce->parsed()) {
      emit(to_json(telement_from_json(load_arg(file_a))));
    } else if (gv_cmd->parsed()) {
      emit(json(gv(telement_from_json(load_arg(file_a)), telement_from_json(load_arg(file_b)))));
    } else if (gvd->parsed()) {
      emit(json(gv_defect(telement_from_json(load_arg(file_a)),
                          telement_from_json(load_arg(file_b)),
                          telement_from_json(load_arg(file_c)))));
    } else if (burau->parsed()) {
      auto word = parse_braid_word(braid_text);
      LaurentMatrix m = reduced ? burau_reduced(word, n_strands)
                                : burau_unreduced(word, n_strands);
      json out = to_json(m);
      if (!t_eval.empty()) {
        std::complex<double> tv(std::stod(t_eval), 0.0);
        json num = json::array();
        for (const auto& [rc, v] : m.entries()) {
          auto val = v.eval(tv);
          num.push_back(json::array(
              {m.rows()[rc.first], m.cols()[rc.second], val.real(), val.imag()}));
        }
        out["numeric_at_t"] = num;
      }
      emit(out);
    } else if (brho->parsed()) {
      ATElement a = atelement_from_json(load_arg(file_a));
      StructuredOperator op = rho(a);
      json out = to_json(op);
      out["projection"] = to_json(a.projection());
      out["window"] = window_render(op, window);
      emit(out);
    } else if (bext->parsed()) {
      emit(json(extension_cocycle(telement_from_json(load_arg(file_a)),
                                  telement_from_json(load_arg(file_b)))));
    } else if (brel->parsed()) {
      for (const auto& r : suite_burau_relations(0, 40, window)) emit(r.to_json_line());
    } else if (ncomp->parsed()) {
      emit(to_json(sphero_compose(sphero_from_json(load_arg(file_a)),
                                  sphero_from_json(load_arg(file_b)))));
    } else if (nidx->parsed()) {
      emit(json(fredholm_index(sphero_from_json(load_arg(file_a)))));
    } else if (nsig->parsed()) {
      emit(json(signature_cocycle(sphero_from_json(load_arg(file_a)),
                                  sphero_from_json(load_arg(file_b)))));
    } else if (tdot->parsed()) {
      std::cout << tree_dot(radius);
    } else if (ver->parsed()) {
      auto results = run_suite(suite_name, static_cast<uint64_t>(seed), ncases);
      bool all_pass = true;
      for (const auto& r : results) {
        emit(r.to_json_line());
        all_pass = all_pass && r.pass;
      }
      emit(json{{"suite", suite_name}, {"all_pass", all_pass}});
      if (!all_pass) return 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const DimensionError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const OrderError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const ContractViolation& e) {
    std::cerr << "invariant violation [contract]: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
