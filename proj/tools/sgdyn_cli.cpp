// Batch verifier and expression evaluator for semigroup actions by surjective
// local homeomorphisms: cocycle checks, interaction-group and groupoid
// convolution identities, dictionary search, all in exact arithmetic.

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sgdyn/operators.hpp"
#include "sgdyn/suites.hpp"

namespace {

using namespace sgdyn;

struct SystemChoice {
  Action action;
  Cocycle cocycle;
};

SystemChoice make_system(const std::string& name, const std::string& dict_path) {
  if (name == "shift") {
    Action a = shift_action();
    return {a, iterate_cocycle(a)};
  }
  if (name == "ledrappier") {
    Action a = ledrappier_action();
    return {a, product_cocycle(a)};
  }
  if (name == "counterexample") {
    Action a = counterexample_action();
    return {a, product_candidate(a)};
  }
  if (name == "circle") {
    Action a = Action::circle();
    return {a, circle_cocycle(a)};
  }
  if (name == "ca") {
    if (dict_path.empty()) throw std::invalid_argument("--system ca needs --dict");
    Action a = Action::single(Endo::cellular(Dictionary::parse_file(dict_path)));
    return {a, iterate_cocycle(a)};
  }
  throw std::invalid_argument("unknown system: " + name);
}

LatticeElement parse_elt(const LatticeGroup& grp, const std::string& s) {
  if (grp.kind() == LatticeKind::positive_rationals) {
    Rational q = Rational::parse(s);
    if (q.num() <= 0) throw std::invalid_argument("circle group element must be positive");
    return grp.from_integer(q.num()) * grp.from_integer(q.den()).inverse();
  }
  std::vector<long long> v;
  std::string body = s;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw std::invalid_argument("malformed tuple: " + s);
    body = body.substr(1, body.size() - 2);
  }
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(std::stoll(part));
  if (static_cast<int>(v.size()) != grp.dim())
    throw std::invalid_argument("tuple arity mismatch: " + s);
  return grp.from_vector(v);
}

// Prefix expression syntax: operators V[g=..] L[n=..] A[n=..] E[n=..] W[k=..]
// applied left to right to a final atom ind(word) | const(a/b) | 1 | x.
Observable parse_expr(const Action& act, const std::string& text) {
  std::stringstream ss(text);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  if (tokens.empty()) throw std::invalid_argument("empty expression");

  auto atom_tok = tokens.back();
  Observable expr = [&]() -> Observable {
    if (atom_tok == "1") return Observable::constant(Scalar(Rational(1)));
    if (atom_tok == "x") return Observable::circle_poly({Rational(0), Rational(1)});
    if (atom_tok.rfind("ind(", 0) == 0 && atom_tok.back() == ')')
      return Observable::cylinder(
          CylinderFunction::indicator(atom_tok.substr(4, atom_tok.size() - 5)));
    if (atom_tok.rfind("const(", 0) == 0 && atom_tok.back() == ')')
      return Observable::constant(
          Scalar(Rational::parse(atom_tok.substr(6, atom_tok.size() - 7))));
    throw std::invalid_argument("unknown atom: " + atom_tok);
  }();

  for (size_t i = tokens.size() - 1; i-- > 0;) {
    const std::string& t = tokens[i];
    auto open = t.find('['), eq = t.find('='), close = t.find(']');
    if (open == std::string::npos || eq == std::string::npos || close == std::string::npos)
      throw std::invalid_argument("malformed operator token: " + t);
    std::string head = t.substr(0, open);
    std::string arg = t.substr(eq + 1, close - eq - 1);
    if (head == "V") {
      expr = Observable::interaction(parse_elt(act.group(), arg), expr);
    } else if (head == "L") {
      expr = Observable::transfer(parse_elt(act.group(), arg), expr);
    } else if (head == "A") {
      expr = Observable::alpha(parse_elt(act.group(), arg), expr);
    } else if (head == "E") {
      expr = Observable::expectation(parse_elt(act.group(), arg), expr);
    } else if (head == "W") {
      expr = Observable::poly_w(std::stoll(arg), expr);
    } else {
      throw std::invalid_argument("unknown operator: " + head);
    }
  }
  return expr;
}

// Per-suite defaults where the generic depth-4/box-3 pair would be
// needlessly slow (convolution, operators) or wrong-shaped (circle boxes are
// plain integer bounds).
void apply_suite_defaults(RunConfig& cfg, int depth_flag, int box_flag) {
  int depth = 4, box = 3;
  if (cfg.suite == "convolution" || cfg.suite == "operators" || cfg.suite == "groupoid") {
    depth = 3;
    box = 2;
  } else if (cfg.suite == "circle") {
    depth = 4;
    box = 6;
  }
  cfg.depth = depth_flag > 0 ? depth_flag : depth;
  cfg.box = box_flag > 0 ? box_flag : box;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verifier for semigroup actions, transfer operators and groupoid algebras"};
  app.require_subcommand(1);

  std::string format = "text";
  int jobs = 1;
  bool timings = false;
  app.add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", jobs, "worker threads for the sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--timings", timings, "include elapsed_ms in reports");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  int depth_flag = -1, box_flag = -1;
  std::string dict_path;
  verify->add_option("suite", suite, "one of: scalar lattice cocycle operators groupoid "
                                     "convolution ledrappier circle counterexample")
      ->required();
  verify->add_option("--depth", depth_flag, "sample depth (default 4; 3 for convolution/operators)");
  verify->add_option("--box", box_flag, "generator box bound (default 3; 2 for "
                                        "convolution/operators, 6 for circle)");
  verify->add_option("--dict", dict_path, "dictionary file (width=p header, one word per line)");

  // search-dictionaries
  auto* search = app.add_subcommand("search-dictionaries",
                                    "enumerate progressive dictionaries of a width");
  int width = 3;
  int search_depth = 4;
  search->add_option("--width", width, "window width p (<= 5)")->required();
  search->add_option("--depth", search_depth, "sample depth for the commutation sweeps");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate an operator expression at a point");
  std::string expr_text, at_point, system_name = "ledrappier", eval_dict;
  eval->add_option("expr", expr_text, "prefix expression, e.g. \"V[g=(1,-1)] ind(1)\"")
      ->required();
  eval->add_option("--at", at_point, "point literal, e.g. \"|0\" or \"1/3\"")->required();
  eval->add_option("--system", system_name, "shift | ledrappier | counterexample | circle | ca");
  eval->add_option("--dict", eval_dict, "dictionary file for --system ca");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      RunConfig cfg;
      cfg.suite = suite;
      bool known = false;
      for (const auto& name : suite_names()) known = known || name == suite;
      if (!known) throw std::invalid_argument("unknown suite: " + suite);
      apply_suite_defaults(cfg, depth_flag, box_flag);
      cfg.dictionary_path = dict_path;
      cfg.format = format;
      cfg.jobs = jobs;
      cfg.timings = timings;
      Report rep = run_suite(cfg);
      std::cout << rep.render(format);
      return rep.all_passed() ? 0 : 1;
    }
    if (search->parsed()) {
      RunConfig cfg;
      cfg.suite = "search-dictionaries";
      cfg.depth = search_depth;
      cfg.format = format;
      cfg.jobs = jobs;
      cfg.timings = timings;
      Report rep = search_dictionaries(width, cfg);
      std::cout << rep.render(format);
      return rep.all_passed() ? 0 : 1;
    }
    if (eval->parsed()) {
      SystemChoice sys = make_system(system_name, eval_dict);
      Observable expr = parse_expr(sys.action, expr_text);
      Evaluator ev(sys.action, sys.cocycle);
      Scalar result = ev.eval(expr, Point::parse(at_point));
      if (format == "json") {
        std::cout << "{\"expr\": \"" << expr_text << "\", \"at\": \"" << at_point
                  << "\", \"value\": \"" << result.str() << "\"}\n";
      } else {
        std::cout << result.str() << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
