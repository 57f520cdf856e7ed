// Command line front end for the congruence enumeration library.
//
//   tcenum_cli <input.pres> [--strategy hlt|felsch|felsch-mod|alt:H,F]
//              [--kind right|left|twosided] [--max-nodes N] [--max-steps N]
//              [--order shortlex|lex] [--output classes|normal-forms|dot|
//              stats|all] [--stephen WORD] [--rees W1,W2,...]
//
// Exit codes: 0 on a completed (or closed) run, 2 when a node or step limit
// aborted the run, 1 on usage or parse errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <tcenum/tcenum.hpp>

using namespace tcenum;

namespace {

int const EXIT_LIMIT = 2;

std::string status_name(EnumStatus s) {
  switch (s) {
    case EnumStatus::complete: return "complete";
    case EnumStatus::node_limit: return "node-limit";
    case EnumStatus::step_limit: return "step-limit";
  }
  return "?";
}

void print_stats(std::ostream& out, EnumerationResult const& res) {
  out << "status=" << status_name(res.status) << "\n";
  if (res.status == EnumStatus::complete) {
    out << "classes=" << res.class_count << "\n";
  }
  out << "active_nodes=" << res.graph.active_count() << "\n";
  out << "nodes_defined=" << res.stats.nodes_defined << "\n";
  out << "peak_active=" << res.stats.peak_active << "\n";
  out << "tc1=" << res.stats.tc1 << "\n";
  out << "tc2=" << res.stats.tc2 << "\n";
  out << "tc3=" << res.stats.tc3 << "\n";
}

void print_classes(std::ostream& out, EnumerationResult const& res,
                   std::string const& letters) {
  auto reps = normal_forms(res);
  out << reps.size() << " classes\n";
  for (std::size_t i = 0; i < reps.size(); ++i) {
    out << i << "\t" << word_to_string(reps[i], letters) << "\n";
  }
}

void print_normal_forms(std::ostream& out, EnumerationResult const& res,
                        std::string const& letters) {
  for (auto const& w : normal_forms(res)) {
    out << word_to_string(w, letters) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congruence enumeration on finitely presented monoids"};
  std::string input_path;
  std::string strategy_name = "hlt";
  std::string kind_name;
  std::string order_name = "shortlex";
  std::string output = "classes";
  std::size_t max_nodes = std::size_t(1) << 24;
  std::size_t max_steps = 0;  // 0 = unlimited
  std::string stephen_word;
  std::string rees_words;

  app.add_option("input", input_path, "presentation file")->required();
  app.add_option("--strategy", strategy_name,
                 "hlt, felsch, felsch-mod or alt:<h>,<f>");
  app.add_option("--kind", kind_name,
                 "override the congruence kind (right, left, twosided)");
  app.add_option("--order", order_name, "standardization order: shortlex, lex");
  app.add_option("--output", output, "classes, normal-forms, dot, stats, all");
  app.add_option("--max-nodes", max_nodes, "active node cap");
  app.add_option("--max-steps", max_steps, "primitive step cap (0 = none)");
  app.add_option("--stephen", stephen_word,
                 "run Stephen's procedure for this word instead");
  app.add_option("--rees", rees_words,
                 "comma-separated generators of a right ideal: enumerate its "
                 "Rees congruence");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::ifstream file(input_path);
  if (!file) {
    std::cerr << "error: cannot open '" << input_path << "'\n";
    return 1;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();

  ParsedInput in;
  try {
    in = parse_presentation(buffer.str());
  } catch (ParseError const& e) {
    std::cerr << "error: " << input_path << ": " << e.what() << "\n";
    return 1;
  }

  if (!kind_name.empty()) {
    if (kind_name == "right") {
      in.kind = CongruenceKind::right;
    } else if (kind_name == "left") {
      in.kind = CongruenceKind::left;
    } else if (kind_name == "twosided") {
      in.kind = CongruenceKind::twosided;
    } else {
      std::cerr << "error: unknown kind '" << kind_name << "'\n";
      return 1;
    }
  }

  Strategy strategy;
  if (strategy_name == "hlt") {
    strategy.kind = Strategy::hlt;
  } else if (strategy_name == "felsch") {
    strategy.kind = Strategy::felsch;
  } else if (strategy_name == "felsch-mod") {
    strategy.kind = Strategy::felsch_mod;
  } else if (strategy_name.rfind("alt:", 0) == 0) {
    strategy.kind = Strategy::alternating;
    auto rest = strategy_name.substr(4);
    auto comma = rest.find(',');
    try {
      if (comma == std::string::npos) {
        throw std::invalid_argument("missing comma");
      }
      strategy.hlt_steps = std::stoul(rest.substr(0, comma));
      strategy.felsch_steps = std::stoul(rest.substr(comma + 1));
    } catch (std::exception const&) {
      std::cerr << "error: bad alternating spec '" << strategy_name << "'\n";
      return 1;
    }
    if (strategy.hlt_steps == 0 || strategy.felsch_steps == 0) {
      std::cerr << "error: alternating periods must be >= 1\n";
      return 1;
    }
  } else {
    std::cerr << "error: unknown strategy '" << strategy_name << "'\n";
    return 1;
  }

  bool lex_order;
  if (order_name == "shortlex") {
    lex_order = false;
  } else if (order_name == "lex") {
    lex_order = true;
  } else {
    std::cerr << "error: unknown order '" << order_name << "'\n";
    return 1;
  }

  Limits limits;
  limits.max_nodes = max_nodes;
  if (max_steps != 0) {
    limits.max_steps = max_steps;
  }

  auto parse_word_arg = [&](std::string const& s) -> std::optional<Word> {
    Word w;
    if (s == "1") {
      return w;
    }
    for (char c : s) {
      auto pos = in.letters.find(c);
      if (pos == std::string::npos) {
        std::cerr << "error: unknown letter '" << c << "'\n";
        return std::nullopt;
      }
      w.push_back(static_cast<Letter>(pos));
    }
    return w;
  };

  try {
    if (!stephen_word.empty()) {
      auto w = parse_word_arg(stephen_word);
      if (!w.has_value()) {
        return 1;
      }
      StephenGraph st(in.presentation, *w);
      auto status = st.run(limits);
      if (status != StephenStatus::closed) {
        std::cout << "status=" << (status == StephenStatus::node_limit
                                       ? "node-limit"
                                       : "step-limit")
                  << "\n";
        std::cout << "active_nodes=" << st.graph().active_count() << "\n";
        return EXIT_LIMIT;
      }
      std::cout << "status=closed\n";
      std::cout << "active_nodes=" << st.graph().active_count() << "\n";
      std::cout << "accept_node=" << st.accept_node() << "\n";
      if (output == "dot" || output == "all") {
        std::cout << to_dot(st.graph(), &in.letters);
      }
      return 0;
    }

    EnumerationResult res = [&] {
      if (!rees_words.empty()) {
        std::vector<Word> ideal;
        std::string cur;
        std::istringstream ws(rees_words);
        while (std::getline(ws, cur, ',')) {
          auto w = parse_word_arg(cur);
          if (!w.has_value()) {
            throw ParseError(0, "bad ideal word");
          }
          ideal.push_back(*w);
        }
        return run_rees(in.presentation, ideal, strategy, limits);
      }
      Session session(in.presentation, in.pairs, in.kind);
      return run(session, strategy, limits);
    }();

    std::string letters = in.letters;
    if (!rees_words.empty()) {
      letters.push_back('@');  // name for the implicit zero letter
    }

    if (res.status != EnumStatus::complete) {
      // Never report a class count for an aborted run.
      print_stats(std::cout, res);
      return EXIT_LIMIT;
    }
    if (lex_order) {
      standardize(res.graph, natural_order(res.graph.alphabet_size()), false);
    }
    if (output == "classes") {
      print_classes(std::cout, res, letters);
    } else if (output == "normal-forms") {
      print_normal_forms(std::cout, res, letters);
    } else if (output == "dot") {
      std::cout << to_dot(res.graph, &letters);
    } else if (output == "stats") {
      print_stats(std::cout, res);
    } else if (output == "all") {
      print_stats(std::cout, res);
      print_classes(std::cout, res, letters);
      std::cout << to_dot(res.graph, &letters);
    } else {
      std::cerr << "error: unknown output '" << output << "'\n";
      return 1;
    }
    return 0;
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
