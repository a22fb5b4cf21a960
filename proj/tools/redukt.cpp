// Command-line front end. Documents are rendered by the same handlers the
// HTTP service uses.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "redukt/service.hpp"
#include "redukt/validators.hpp"

using namespace redukt;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

// Problem names, or fo:<file> holding formula text or a problem document.
json problem_arg(const std::string& arg) {
  if (arg.rfind("fo:", 0) != 0) {
    try {
      parse_problem_name(arg);
    } catch (const Error&) {
      throw Error(ErrorCode::BadParameters,
                  "unknown problem '" + arg +
                      "'; expected <k>-clique, <k>-is, <k>-vc, <k>-fvs, hamcycle-u, "
                      "hamcycle-d, empty or fo:<file>");
    }
    return arg;
  }
  const std::string text = read_input(arg.substr(3));
  try {
    json doc = json::parse(text);
    if (doc.is_object()) return doc;
  } catch (const json::exception&) {
  }
  return json{{"fo", text}};
}

int report_error(const service::Result& r) {
  std::cerr << r.text();
  return 2;
}

int exit_code(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Valid: return 0;
    case VerdictStatus::Invalid: return 3;
    case VerdictStatus::Unknown: return 4;
  }
  return 4;
}

VerdictStatus status_of(const json& verdict) {
  const std::string s = verdict.at("status");
  if (s == "valid") return VerdictStatus::Valid;
  if (s == "invalid") return VerdictStatus::Invalid;
  return VerdictStatus::Unknown;
}

// ---- enumerate-gadgets

struct Row {
  std::string id;
  json gadget;
  Verdict verdict;
};

std::vector<Row> enumerate_family(const std::string& family, int max_nodes, bool paths_only,
                                  const ProblemDef& p, const ProblemDef& p_star) {
  auto scope = [&](const std::string& why) {
    return Error(ErrorCode::BadParameters, "pair " + problem_name(p) + "," +
                                               problem_name(p_star) + " outside the " + family +
                                               " characterization: " + why);
  };
  const auto* a = std::get_if<BuiltIn>(&p);
  const auto* b = std::get_if<BuiltIn>(&p_star);
  if (!a || !b) throw scope("built-in problems required");
  std::vector<Row> rows;
  auto add = [&](const GadgetSpec& g, Verdict v) {
    rows.push_back({gadget_id(g), to_json(g), std::move(v)});
  };
  if (family == "edge") {
    if (a->kind != ProblemKind::VertexCover || b->kind != ProblemKind::FeedbackVertexSet ||
        a->k != b->k || a->k < 1)
      throw scope("needs <k>-vc,<k>-fvs");
    for (const auto& g : edge_gadget_family(max_nodes)) add(g, validate_vc_fvs_edge(g, a->k));
  } else if (family == "global") {
    if (a->kind != ProblemKind::Clique || b->kind != ProblemKind::Clique || a->k < 1 ||
        a->k >= b->k)
      throw scope("needs <k>-clique,<l>-clique with k < l");
    for (const auto& g : global_gadget_family(max_nodes))
      add(g, validate_clique_global(g, a->k, b->k));
  } else if (family == "node") {
    if (a->kind != ProblemKind::HamCycleD || b->kind != ProblemKind::HamCycleU)
      throw scope("needs hamcycle-d,hamcycle-u");
    if (max_nodes > 3) throw scope("node graphs are limited to 3 nodes");
    for (const auto& g : node_gadget_family(max_nodes, paths_only)) add(g, validate_hc_node(g));
  } else {
    throw Error(ErrorCode::BadParameters, "family must be edge, node or global");
  }
  return rows;
}

std::string render_rows(const std::vector<Row>& rows, const std::string& format) {
  if (format == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      json j{{"id", r.id}, {"gadget", r.gadget}, {"status", to_string(r.verdict.status)}};
      if (r.verdict.counterexample) j["counterexample_size"] = r.verdict.counterexample->size();
      out.push_back(std::move(j));
    }
    return out.dump(2) + "\n";
  }
  std::string out = "gadget\tverdict\tcounterexample_size\n";
  for (const auto& r : rows) {
    out += r.id + "\t" + to_string(r.verdict.status) + "\t" +
           (r.verdict.counterexample ? std::to_string(r.verdict.counterexample->size()) : "-") +
           "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"redukt: validation engine for cookbook reductions"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Output file (default stdout)");

  std::string reduction_path, structure_path;
  auto* apply_cmd = app.add_subcommand("apply", "Apply a cookbook reduction to a structure");
  apply_cmd->add_option("--reduction", reduction_path, "Reduction or gadget document")->required();
  apply_cmd->add_option("--structure", structure_path, "Structure document")->required();

  std::string candidate_path, source_name, target_name;
  std::optional<int> budget;
  auto* validate_cmd = app.add_subcommand("validate", "Decide whether a candidate is a reduction");
  validate_cmd->add_option("--candidate", candidate_path, "Reduction, gadget or interpretation")
      ->required();
  validate_cmd->add_option("--source", source_name, "Source problem")->required();
  validate_cmd->add_option("--target", target_name, "Target problem")->required();
  validate_cmd->add_option("--budget", budget, "Largest source size for brute-force search");

  std::string stage = "plain";
  std::optional<int> check;
  auto* translate_cmd = app.add_subcommand("translate", "Translate to a QF interpretation");
  translate_cmd->add_option("--reduction", reduction_path, "Reduction document")->required();
  translate_cmd->add_option("--stage", stage, "copying or plain")
      ->check(CLI::IsMember({"copying", "plain"}));
  translate_cmd->add_option("--check", check,
                            "Compare with apply on all sources of size 2 up to this size");

  std::string family, pair, format = "tsv";
  int max_nodes = 3;
  bool paths_only = false;
  auto* enum_cmd = app.add_subcommand("enumerate-gadgets", "Classify a gadget family");
  enum_cmd->add_option("--family", family, "edge, node or global")
      ->required()
      ->check(CLI::IsMember({"edge", "node", "global"}));
  enum_cmd->add_option("--max-nodes", max_nodes, "Largest gadget or node graph");
  enum_cmd->add_option("--pair", pair, "Source and target problem, comma-separated")->required();
  enum_cmd->add_flag("--paths-only", paths_only, "Node family: only the path node graph");
  enum_cmd->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  service::Config config;
  std::string bind, ui;
  std::optional<int> max_n;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--bind", bind, "host:port");
  serve_cmd->add_option("--ui", ui, "Directory with the static UI bundle");
  serve_cmd->add_option("--max-n", max_n, "Budget ceiling");

  CLI11_PARSE(app, argc, argv);

  try {
    config = service::Config::from_env();

    if (*apply_cmd) {
      json req{{"reduction", parse_document(read_input(reduction_path))},
               {"structure", parse_document(read_input(structure_path))}};
      auto r = service::handle_apply(req.dump());
      if (r.status != 200) return report_error(r);
      write_output(output, r.text());
      return 0;
    }

    if (*validate_cmd) {
      json req{{"candidate", parse_document(read_input(candidate_path))},
               {"source_problem", problem_arg(source_name)},
               {"target_problem", problem_arg(target_name)}};
      if (budget) req["budget"] = *budget;
      auto r = service::handle_validate(req.dump(), config);
      if (r.status != 200) return report_error(r);
      write_output(output, r.text());
      return exit_code(status_of(r.body));
    }

    if (*translate_cmd) {
      const json reduction = parse_document(read_input(reduction_path));
      auto r = service::handle_translate(json{{"reduction", reduction}, {"stage", stage}}.dump());
      if (r.status != 200) return report_error(r);
      write_output(output, r.text());
      if (!check) return 0;
      const CookbookReduction rho = reduction_from_json(reduction);
      const QfInterpretation psi = interpretation_from_json(r.body);
      InterpretationEvaluator eval(psi);
      int checked = 0, mismatches = 0;
      // The tuple encoding needs two distinct source elements.
      for (int n = 2; n <= *check; ++n)
        for (const auto& s : enumerate_structures(rho.source_schema(), n, canonical_options())) {
          ++checked;
          if (!isomorphic(eval.run(s).structure, apply(rho, s))) ++mismatches;
        }
      std::cerr << "checked " << checked << " sources of size 2.." << *check << ", "
                << mismatches << " mismatches\n";
      return mismatches == 0 ? 0 : 3;
    }

    if (*enum_cmd) {
      const auto comma = pair.find(',');
      if (comma == std::string::npos)
        throw Error(ErrorCode::BadParameters, "--pair needs two problems separated by a comma");
      const ProblemDef p = parse_problem_name(pair.substr(0, comma));
      const ProblemDef p_star = parse_problem_name(pair.substr(comma + 1));
      write_output(output, render_rows(enumerate_family(family, max_nodes, paths_only, p, p_star),
                                       format));
      return 0;
    }

    if (*serve_cmd) {
      if (!bind.empty()) config.bind = bind;
      if (!ui.empty()) config.ui_dir = ui;
      if (max_n) config.max_n = *max_n;
      service::Server server(config);
      std::cerr << "listening on " << config.bind << "\n";
      if (!server.listen()) {
        std::cerr << "cannot bind " << config.bind << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
