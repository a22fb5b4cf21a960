#include "redukt/validators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "redukt/graphs.hpp"

namespace redukt {

namespace {

using CrossSet = std::set<std::pair<int, int>>;

constexpr int kMaxRawLog2 = 24;
constexpr double kMaxEvaluationWork = 1e8;

Membership membership(const ProblemDef& p, const Structure& s) {
  auto d = decide(p, s);
  return {d.member, d.witness};
}

json membership_doc(const Membership& m, const Structure& s) {
  json j{{"member", m.member}};
  if (m.witness) j["witness"] = to_json(*m.witness, s);
  return j;
}

void require_schema(const ProblemDef& p, const Schema& schema, const char* side) {
  auto ps = problem_schema(p);
  if (ps && !(*ps == schema))
    throw Error(ErrorCode::SchemaMismatch,
                std::string(side) + " problem " + problem_name(p) + " does not match the schema");
}

const BuiltIn* builtin(const ProblemDef& p, ProblemKind kind) {
  const auto* b = std::get_if<BuiltIn>(&p);
  return b && b->kind == kind ? b : nullptr;
}

bool exists_star(const Formula& f) {
  auto t = fragment(f);
  return t == FragmentTag::ExistsStar || t == FragmentTag::QuantifierFree;
}

const FoDefined* exists_star_problem(const ProblemDef& p) {
  const auto* f = std::get_if<FoDefined>(&p);
  return f && exists_star(f->sentence) ? f : nullptr;
}

Verdict valid_verdict(std::string decider, std::vector<std::string> conditions) {
  Verdict v;
  v.status = VerdictStatus::Valid;
  v.decider = std::move(decider);
  v.conditions = std::move(conditions);
  return v;
}

// Emits `cex` when it separates the problems, else falls back to search.
Verdict characterization_failure(const ProblemDef& p, const ProblemDef& p_star,
                                 const CookbookReduction& rho, const Structure& cex,
                                 const std::string& decider, const std::string& condition,
                                 int fallback_bound) {
  auto f = [&rho](const Structure& s) { return apply(rho, s); };
  if (auto v = invalid_verdict(p, p_star, cex, f, decider)) {
    v->conditions = {condition};
    return *v;
  }
  Verdict v = refute_by_search(rho.source_schema(), f, p, p_star, fallback_bound);
  v.decider = decider;
  v.conditions = {condition};
  return v;
}

std::string pair_list(const CrossSet& s) {
  std::string out = "{";
  for (auto [i, j] : s) {
    if (out.size() > 1) out += ", ";
    out += "(" + std::to_string(i) + ">," + std::to_string(j) + "<)";
  }
  return out + "}";
}

std::vector<CrossSet> golden_closure() {
  const std::vector<CrossSet> base = {
      {{3, 1}}, {{1, 3}}, {{1, 1}, {3, 1}}, {{1, 1}, {1, 3}}, {{1, 3}, {3, 3}}, {{3, 1}, {3, 3}},
  };
  std::set<CrossSet> closed(base.begin(), base.end());
  for (const auto& s : base) {
    CrossSet swapped, reversed;
    for (auto [i, j] : s) {
      swapped.emplace(j, i);
      reversed.emplace(4 - i, 4 - j);
    }
    closed.insert(swapped);
    closed.insert(reversed);
  }
  return {closed.begin(), closed.end()};
}

}  // namespace

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Valid: return "valid";
    case VerdictStatus::Invalid: return "invalid";
    case VerdictStatus::Unknown: return "unknown";
  }
  return "unknown";
}

json to_json(const Verdict& v) {
  json j{{"status", to_string(v.status)}, {"decider", v.decider}};
  if (!v.conditions.empty()) j["conditions"] = v.conditions;
  if (v.counterexample) {
    j["counterexample"] = to_json(*v.counterexample);
    j["source"] = membership_doc(v.source, *v.counterexample);
  }
  if (v.image) {
    j["image"] = to_json(*v.image);
    j["target"] = membership_doc(v.target, *v.image);
  }
  if (v.bound) j["bound"] = *v.bound;
  return j;
}

std::optional<Verdict> invalid_verdict(const ProblemDef& p, const ProblemDef& p_star,
                                       const Structure& cex, const Transform& f,
                                       std::string decider) {
  Structure image = f(cex);
  Membership src = membership(p, cex);
  Membership tgt = membership(p_star, image);
  if (src.member == tgt.member) return std::nullopt;
  Verdict v;
  v.status = VerdictStatus::Invalid;
  v.decider = std::move(decider);
  v.counterexample = cex;
  v.image = std::move(image);
  v.source = std::move(src);
  v.target = std::move(tgt);
  return v;
}

// ---------------------------------------------------------------- characterizations

Verdict validate_clique_global(const GlobalGadget& g, int k, int l) {
  if (k < 1 || k >= l) throw Error(ErrorCode::BadParameters, "need 1 <= k < l");
  const CookbookReduction rho = from_gadget(g);
  const ProblemDef p = BuiltIn{ProblemKind::Clique, k};
  const ProblemDef p_star = BuiltIn{ProblemKind::Clique, l};
  const Structure inner = induced_substructure(g.graph, g.distinguished);
  auto has_clique = [](const Structure& s, int m) {
    return decide(BuiltIn{ProblemKind::Clique, m}, s).member;
  };
  const std::string a = "(a) the gadget has no " + std::to_string(l) + "-clique";
  const std::string b = "(b) A contains a " + std::to_string(l - k) + "-clique";
  const std::string c = "(c) A contains no " + std::to_string(l - k + 1) + "-clique";
  const std::string dec = "clique-global";
  if (has_clique(g.graph, l))
    return characterization_failure(p, p_star, rho, graphs::empty(0), dec, a, k);
  if (!has_clique(inner, l - k))
    return characterization_failure(p, p_star, rho, graphs::complete(k), dec, b, k);
  if (has_clique(inner, l - k + 1))
    return characterization_failure(p, p_star, rho, graphs::complete(k - 1), dec, c, k);
  return valid_verdict(dec, {a, b, c});
}

Verdict validate_vc_fvs_edge(const EdgeGadget& g, int k) {
  if (k < 1) throw Error(ErrorCode::BadParameters, "need k >= 1");
  const CookbookReduction rho = from_gadget(g);
  const ProblemDef p = BuiltIn{ProblemKind::VertexCover, k};
  const ProblemDef p_star = BuiltIn{ProblemKind::FeedbackVertexSet, k};
  const ProblemDef fvs1 = BuiltIn{ProblemKind::FeedbackVertexSet, 1};
  const ProblemDef fvs0 = BuiltIn{ProblemKind::FeedbackVertexSet, 0};
  const int c = g.graph.require(g.c), d = g.graph.require(g.d);
  const std::string a = "(a) {" + g.c + "} and {" + g.d + "} are feedback vertex sets";
  const std::string b = "(b) the empty set is not a feedback vertex set";
  const std::string dec = "vc-fvs-edge";
  if (!verify_witness(fvs1, g.graph, Witness{{c}}) || !verify_witness(fvs1, g.graph, Witness{{d}}))
    return characterization_failure(p, p_star, rho, graphs::path(2 * k + 1), dec, a, 3 * k + 1);
  if (verify_witness(fvs0, g.graph, Witness{}))
    return characterization_failure(p, p_star, rho, graphs::path(3 * k + 1), dec, b, 3 * k + 1);
  return valid_verdict(dec, {a, b});
}

std::vector<std::vector<std::pair<std::string, std::string>>> golden_hc_gadgets() {
  std::vector<std::vector<std::pair<std::string, std::string>>> out;
  for (const auto& s : golden_closure()) {
    std::vector<std::pair<std::string, std::string>> cross;
    for (auto [i, j] : s) cross.emplace_back(element_label(i - 1, 3), element_label(j - 1, 3));
    out.push_back(std::move(cross));
  }
  return out;
}

Verdict validate_hc_node(const NodeGadget& g) {
  const Structure& ng = g.node_graph;
  if (ng.size() > 3)
    throw Error(ErrorCode::NodeGraphTooLarge, "node graph has more than 3 nodes");
  if (!g.directed_source)
    throw Error(ErrorCode::BadGadget, "the characterization covers directed sources only");
  const CookbookReduction rho = from_gadget(g);
  const std::string dec = "hc-node";

  if (ng.size() == 3 && ng.tuple_count(0) == 4) {
    const auto golden = golden_closure();
    std::vector<int> pi(3);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      // pi maps node graph elements onto path positions 0-1-2.
      bool path = true;
      for (std::size_t q = 0; q < ng.tuple_count(0); ++q)
        path = path && std::abs(pi[ng.tuple(0, q)[0]] - pi[ng.tuple(0, q)[1]]) == 1;
      if (!path) continue;
      CrossSet mapped;
      for (const auto& [a, b] : g.cross_edges)
        mapped.emplace(pi[ng.require(a)] + 1, pi[ng.require(b)] + 1);
      if (std::find(golden.begin(), golden.end(), mapped) != golden.end()) {
        std::vector<int> order(3);
        for (int e = 0; e < 3; ++e) order[pi[e]] = e;
        return valid_verdict(
            dec, {"node graph is the path " + ng.name(order[0]) + "-" + ng.name(order[1]) +
                      "-" + ng.name(order[2]),
                  "cross edges " + pair_list(mapped) + " form a standard gadget"});
      }
    } while (std::next_permutation(pi.begin(), pi.end()));
  }
  Verdict v = brute_force_refute(rho, BuiltIn{ProblemKind::HamCycleD, 0},
                                 BuiltIn{ProblemKind::HamCycleU, 0}, 4);
  v.decider = dec;
  v.conditions = {"not a standard path gadget"};
  return v;
}

// ---------------------------------------------------------------- generic deciders

Verdict decide_exists_star_pair(const Formula& phi, const Formula& phi_star,
                                const QfInterpretation& psi, int min_size) {
  if (!exists_star(phi) || !exists_star(phi_star))
    throw Error(ErrorCode::NotInFragment, "both problems must be existential sentences");
  if (!free_variables(phi).empty() || !free_variables(phi_star).empty())
    throw Error(ErrorCode::UnboundVariable, "problem formulas must be sentences");
  check_schema(phi, psi.source);
  check_schema(phi_star, psi.target);

  Formula theta = iff(phi, inverse_substitute(psi, phi_star));
  if (min_size >= 2) {
    std::vector<std::string> vs;
    std::vector<Formula> distinct;
    for (int i = 0; i < min_size; ++i) {
      vs.push_back("_m" + std::to_string(i));
      for (int j = 0; j < i; ++j) distinct.push_back(not_equal(vs[j], vs[i]));
    }
    theta = implies(exists(vs, conj(distinct)), theta);
  }
  // Evaluation cost grows like bound^quantifiers on each structure.
  const int bound = small_model_bound(theta);
  const double work = std::pow(std::max(bound, 1), quantifier_count(theta));
  if (free_slot_count(psi.source, bound) > kMaxRawLog2 || work > kMaxEvaluationWork)
    throw Error(ErrorCode::ExplosionGuard,
                "validity check needs structures up to size " + std::to_string(bound) +
                    " with " + std::to_string(quantifier_count(theta)) + " quantifiers");
  const ValidityResult r = decide_forall_exists_validity(theta, psi.source, bound);
  const std::string dec = "exists-star";
  if (r.valid) {
    Verdict v = valid_verdict(dec, {"phi <-> I^-1(phi*) holds on all structures up to size " +
                                    std::to_string(r.bound)});
    v.bound = r.bound;
    return v;
  }
  const ProblemDef p = FoDefined{phi, psi.source};
  const ProblemDef p_star = FoDefined{phi_star, psi.target};
  InterpretationEvaluator eval(psi);
  auto v = invalid_verdict(p, p_star, *r.counter_model,
                           [&](const Structure& s) { return eval.run(s).structure; }, dec);
  if (!v)
    throw Error(ErrorCode::SemanticsViolation,
                "counter-model does not separate the problems");
  v->bound = r.bound;
  return *v;
}

Verdict refute_by_search(const Schema& source, const Transform& f, const ProblemDef& p,
                         const ProblemDef& p_star, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::BadParameters, "negative search bound");
  require_schema(p, source, "source");
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  for (int n = 0; n <= n_max; ++n) {
    const auto candidates = enumerate_structures(source, n, canonical_options());
    std::atomic<std::size_t> next{0}, best{kNone};
    std::mutex error_mu;
    std::size_t error_at = kNone;
    std::exception_ptr error;

    auto work = [&] {
      for (std::size_t i; (i = next++) < candidates.size();) {
        if (i >= best.load()) return;
        try {
          const Structure& s = candidates[i];
          if (decide(p, s).member == decide(p_star, f(s)).member) continue;
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (i < error_at) {
            error_at = i;
            error = std::current_exception();
          }
        }
      }
    };
    const unsigned threads =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                              candidates.size() / 8 + 1);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    if (error && error_at < best.load()) std::rethrow_exception(error);
    if (best.load() != kNone) {
      auto v = invalid_verdict(p, p_star, candidates[best.load()], f, "brute-force");
      v->bound = n;
      return *v;
    }
  }
  Verdict v;
  v.status = VerdictStatus::Unknown;
  v.decider = "brute-force";
  v.bound = n_max;
  return v;
}

Verdict brute_force_refute(const CookbookReduction& rho, const ProblemDef& p,
                           const ProblemDef& p_star, int n_max) {
  auto report = validate_wellformed(rho);
  if (!report.ok())
    throw Error(ErrorCode::NotWellFormed, "reduction is not well-formed: " +
                                              report.violations.front().condition + " " +
                                              report.violations.front().detail);
  require_schema(p_star, rho.target_schema(), "target");
  return refute_by_search(
      rho.source_schema(), [&rho](const Structure& s) { return apply(rho, s); }, p, p_star,
      n_max);
}

// ---------------------------------------------------------------- dispatcher

int default_budget(const Schema& source) {
  return source == Schema::directed_graph() ? kDefaultBudgetDirected : kDefaultBudgetUndirected;
}

Verdict validate(const Candidate& candidate, const ProblemDef& p, const ProblemDef& p_star,
                 std::optional<int> budget) {
  const auto* fo = exists_star_problem(p);
  const auto* fo_star = exists_star_problem(p_star);

  if (const auto* psi = std::get_if<QfInterpretation>(&candidate)) {
    require_schema(p, psi->source, "source");
    require_schema(p_star, psi->target, "target");
    std::optional<std::string> note;
    if (fo && fo_star) {
      try {
        return decide_exists_star_pair(fo->sentence, fo_star->sentence, *psi);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ExplosionGuard) throw;
        note = e.what();
      }
    }
    InterpretationEvaluator eval(*psi);
    Verdict v = refute_by_search(
        psi->source, [&](const Structure& s) { return eval.run(s).structure; }, p, p_star,
        budget.value_or(default_budget(psi->source)));
    if (note) v.conditions.push_back("exists-star skipped: " + *note);
    return v;
  }

  const auto& rho = std::get<CookbookReduction>(candidate);
  require_schema(p, rho.source_schema(), "source");
  require_schema(p_star, rho.target_schema(), "target");
  if (auto spec = classify_gadget(rho)) {
    if (const auto* g = std::get_if<GlobalGadget>(&*spec)) {
      const auto *a = builtin(p, ProblemKind::Clique), *b = builtin(p_star, ProblemKind::Clique);
      if (a && b && a->k >= 1 && a->k < b->k) return validate_clique_global(*g, a->k, b->k);
    }
    if (const auto* g = std::get_if<EdgeGadget>(&*spec)) {
      const auto* a = builtin(p, ProblemKind::VertexCover);
      const auto* b = builtin(p_star, ProblemKind::FeedbackVertexSet);
      if (a && b && a->k == b->k && a->k >= 1) return validate_vc_fvs_edge(*g, a->k);
    }
    if (const auto* g = std::get_if<NodeGadget>(&*spec)) {
      if (g->directed_source && g->node_graph.size() <= 3 &&
          builtin(p, ProblemKind::HamCycleD) && builtin(p_star, ProblemKind::HamCycleU))
        return validate_hc_node(*g);
    }
  }
  std::optional<std::string> note;
  if (fo && fo_star) {
    // The translation agrees with apply only on sources with two or more
    // elements; smaller ones are checked directly.
    Verdict tiny = brute_force_refute(rho, p, p_star, 1);
    if (tiny.status == VerdictStatus::Invalid) return tiny;
    try {
      Verdict v = decide_exists_star_pair(fo->sentence, fo_star->sentence,
                                          cookbook_to_qf(rho, QfStage::Copying), 2);
      if (v.status == VerdictStatus::Invalid) {
        auto redone = invalid_verdict(
            p, p_star, *v.counterexample, [&rho](const Structure& s) { return apply(rho, s); },
            v.decider);
        if (!redone)
          throw Error(ErrorCode::SemanticsViolation,
                      "translation disagrees with apply on the counter-model");
        redone->bound = v.bound;
        return *redone;
      }
      v.conditions.push_back("sources with fewer than 2 elements checked with apply");
      return v;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ExplosionGuard) throw;
      note = e.what();
    }
  }
  Verdict v =
      brute_force_refute(rho, p, p_star, budget.value_or(default_budget(rho.source_schema())));
  if (note) v.conditions.push_back("exists-star skipped: " + *note);
  return v;
}

}  // namespace redukt

// ---------------------------------------------------------------- families

namespace redukt {

namespace {

// Every labelled undirected graph on the given names.
std::vector<Structure> labelled_graphs(const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  std::vector<Tuple> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
  std::vector<Structure> out;
  for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<Tuple> es;
    for (std::size_t q = 0; q < slots.size(); ++q)
      if (mask >> q & 1u) es.push_back(slots[q]);
    out.emplace_back(Schema::undirected_graph(), names, std::vector<std::vector<Tuple>>{es});
  }
  return out;
}

std::vector<std::string> numbered_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(element_label(i, n));
  return names;
}

std::string edge_list(const Structure& g) {
  std::string out;
  for (const auto& t : g.tuples(0)) {
    if (t[0] > t[1]) continue;
    if (!out.empty()) out += " ";
    out += g.name(t[0]) + "-" + g.name(t[1]);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

std::vector<EdgeGadget> edge_gadget_family(int max_nodes) {
  std::vector<EdgeGadget> out;
  for (int n = 2; n <= max_nodes; ++n) {
    std::vector<std::string> names{"c", "d"};
    for (int w = 1; w <= n - 2; ++w) names.push_back("w" + std::to_string(w));
    for (auto& g : labelled_graphs(names)) {
      EdgeGadget e{std::move(g), "c", "d"};
      try {
        from_gadget(e);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::LiftFailure) throw;
        continue;
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<GlobalGadget> global_gadget_family(int max_nodes) {
  std::vector<GlobalGadget> out;
  for (int n = 0; n <= max_nodes; ++n) {
    const auto names = numbered_names(n);
    for (const auto& g : labelled_graphs(names))
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::string> a;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1u) a.push_back(names[i]);
        out.push_back({g, a});
      }
  }
  return out;
}

std::vector<NodeGadget> node_gadget_family(int max_nodes, bool paths_only) {
  std::vector<NodeGadget> out;
  for (int n = paths_only ? max_nodes : 1; n <= max_nodes; ++n) {
    const auto names = numbered_names(n);
    std::vector<Structure> graphs_n;
    if (paths_only) graphs_n.push_back(graphs::path(n));
    else graphs_n = labelled_graphs(names);
    for (const auto& g : graphs_n)
      for (unsigned mask = 0; mask < (1u << (n * n)); ++mask) {
        std::vector<std::pair<std::string, std::string>> cross;
        for (int q = 0; q < n * n; ++q)
          if (mask >> q & 1u) cross.emplace_back(names[q / n], names[q % n]);
        out.push_back({g, cross, true});
      }
  }
  return out;
}

std::string gadget_id(const GadgetSpec& spec) {
  if (const auto* e = std::get_if<EdgeGadget>(&spec))
    return "n=" + std::to_string(e->graph.size()) + " " + edge_list(e->graph);
  if (const auto* n = std::get_if<NodeGadget>(&spec)) {
    std::string out = edge_list(n->node_graph) + " |";
    for (const auto& [a, b] : n->cross_edges) out += " " + a + ">" + b + "<";
    return out;
  }
  const auto& g = std::get<GlobalGadget>(spec);
  std::string out = "n=" + std::to_string(g.graph.size()) + " " + edge_list(g.graph) + " | A=";
  for (std::size_t i = 0; i < g.distinguished.size(); ++i)
    out += (i ? "," : "") + g.distinguished[i];
  return out;
}

}  // namespace redukt
