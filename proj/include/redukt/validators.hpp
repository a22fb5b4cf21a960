#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "redukt/cookbook.hpp"
#include "redukt/interpretation.hpp"
#include "redukt/problems.hpp"

namespace redukt {

enum class VerdictStatus { Valid, Invalid, Unknown };
const char* to_string(VerdictStatus s);

struct Membership {
  bool member = false;
  std::optional<Witness> witness;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  // Which decider answered: clique-global, vc-fvs-edge, hc-node,
  // exists-star or brute-force.
  std::string decider;
  // Valid: satisfied conditions. Invalid: the failing condition, if any.
  std::vector<std::string> conditions;
  std::optional<Structure> counterexample;
  // The candidate's output on the counterexample.
  std::optional<Structure> image;
  Membership source, target;
  // Largest source size searched.
  std::optional<int> bound;
};

json to_json(const Verdict& v);

// Output of the candidate on a source structure.
using Transform = std::function<Structure(const Structure&)>;

// Builds an Invalid verdict after checking that membership actually differs;
// nullopt when it does not.
std::optional<Verdict> invalid_verdict(const ProblemDef& p, const ProblemDef& p_star,
                                       const Structure& cex, const Transform& f,
                                       std::string decider);

// ---- characterization validators

Verdict validate_clique_global(const GlobalGadget& g, int k, int l);
Verdict validate_vc_fvs_edge(const EdgeGadget& g, int k);
// Node graphs with more than 3 nodes throw NodeGraphTooLarge.
Verdict validate_hc_node(const NodeGadget& g);

// The six path gadgets 1-2-3 accepted by validate_hc_node, as cross-edge
// lists.
std::vector<std::vector<std::pair<std::string, std::string>>> golden_hc_gadgets();

// ---- generic deciders

// Throws ExplosionGuard when the small-model enumeration is out of reach.
// With min_size > 1 only structures with at least that many elements count.
Verdict decide_exists_star_pair(const Formula& phi, const Formula& phi_star,
                                const QfInterpretation& psi, int min_size = 0);

// Searches canonical source structures of size 0..n_max in order of size and
// then canonical code. Never returns Valid.
Verdict refute_by_search(const Schema& source, const Transform& f, const ProblemDef& p,
                         const ProblemDef& p_star, int n_max);
Verdict brute_force_refute(const CookbookReduction& rho, const ProblemDef& p,
                           const ProblemDef& p_star, int n_max);

// ---- gadget families

// Distinguished c, d plus up to max_nodes - 2 fresh nodes w1, w2, ...; every
// labelled graph with an automorphism swapping c and d.
std::vector<EdgeGadget> edge_gadget_family(int max_nodes);
// Every labelled graph on 1..n, n <= max_nodes, with every subset A.
std::vector<GlobalGadget> global_gadget_family(int max_nodes);
// Directed-source node gadgets: every labelled node graph on 1..n,
// n <= max_nodes (only the path 1-2-..-n when paths_only), with every set of
// cross edges.
std::vector<NodeGadget> node_gadget_family(int max_nodes, bool paths_only = false);

// Compact description such as "n=3 c-d c-w1" or "1-2 2-3 | 3>1<".
std::string gadget_id(const GadgetSpec& g);

// ---- dispatcher

using Candidate = std::variant<CookbookReduction, QfInterpretation>;

inline constexpr int kDefaultBudgetUndirected = 6;
inline constexpr int kDefaultBudgetDirected = 5;

int default_budget(const Schema& source);

Verdict validate(const Candidate& candidate, const ProblemDef& p, const ProblemDef& p_star,
                 std::optional<int> budget = std::nullopt);

}  // namespace redukt
