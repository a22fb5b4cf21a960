#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "redukt/formula.hpp"
#include "redukt/json_io.hpp"

namespace redukt {

enum class ProblemKind { Clique, IndependentSet, VertexCover, FeedbackVertexSet, HamCycleU, HamCycleD };

struct BuiltIn {
  ProblemKind kind = ProblemKind::Clique;
  // Clique and IndependentSet: exactly k nodes. VertexCover and
  // FeedbackVertexSet: at most k nodes. Unused for HamCycle.
  int k = 0;
};

struct FoDefined {
  Formula sentence;
  Schema schema = Schema::undirected_graph();
};

struct EmptyProblem {};

using ProblemDef = std::variant<BuiltIn, FoDefined, EmptyProblem>;

bool needs_parameter(ProblemKind kind);
const char* to_string(ProblemKind kind);

// Node subset, or the cyclic order of a Hamiltonian cycle.
struct Witness {
  std::vector<int> nodes;
};

struct Decision {
  bool member = false;
  std::optional<Witness> witness;
};

// Schema the problem's instances live over; nullopt for the empty problem.
std::optional<Schema> problem_schema(const ProblemDef& p);

Decision decide(const ProblemDef& p, const Structure& s);
// FO-defined problems have no witness; their membership is re-checked.
bool verify_witness(const ProblemDef& p, const Structure& s, const Witness& w);

// "<k>-clique", "<k>-is", "<k>-vc", "<k>-fvs", "hamcycle-u", "hamcycle-d",
// "empty".
std::string problem_name(const ProblemDef& p);
ProblemDef parse_problem_name(const std::string& name);

// {kind, k?}, {fo: text, schema?} or {kind: "empty"}.
json to_json(const ProblemDef& p);
ProblemDef problem_from_json(const json& doc);
json to_json(const Witness& w, const Structure& s);

// Built-in kinds with their parameter requirements, for listings.
json problem_registry();

namespace sentences {
// Canonical existential sentences: k distinct pairwise (non-)adjacent nodes.
Formula clique(int k);
Formula independent_set(int k);
}  // namespace sentences

}  // namespace redukt
