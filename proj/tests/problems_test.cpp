#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "redukt/cookbook.hpp"
#include "redukt/graphs.hpp"
#include "redukt/problems.hpp"

using namespace redukt;

namespace {

const Schema U = Schema::undirected_graph();
const Schema D = Schema::directed_graph();

BuiltIn clique(int k) { return {ProblemKind::Clique, k}; }
BuiltIn indep(int k) { return {ProblemKind::IndependentSet, k}; }
BuiltIn vc(int k) { return {ProblemKind::VertexCover, k}; }
BuiltIn fvs(int k) { return {ProblemKind::FeedbackVertexSet, k}; }
const BuiltIn hamu{ProblemKind::HamCycleU, 0};
const BuiltIn hamd{ProblemKind::HamCycleD, 0};

Structure path_abcd() {
  return Structure::from_names(U, {"a", "b", "c", "d"},
                               {{"E", {{"a", "b"}, {"b", "c"}, {"c", "d"}}}});
}

std::vector<Structure> all_graphs(int max_n) {
  std::vector<Structure> out;
  for (int n = 0; n <= max_n; ++n)
    for (auto& g : enumerate_structures(U, n)) out.push_back(std::move(g));
  return out;
}

Structure random_graph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<graphs::Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) es.push_back({i, j});
  return graphs::undirected(n, es);
}

// Independent acyclicity check: DFS looking for a back edge.
bool acyclic_without(const Structure& g, unsigned removed) {
  const int n = g.size();
  std::vector<int> state(n, 0);
  std::function<bool(int, int)> dfs = [&](int v, int parent) {
    state[v] = 1;
    for (int w = 0; w < n; ++w) {
      if (w == parent || (removed >> w & 1u) || !g.holds(0, {v, w})) continue;
      if (state[w] == 1) return false;
      if (state[w] == 0 && !dfs(w, v)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (int v = 0; v < n; ++v)
    if (!(removed >> v & 1u) && state[v] == 0 && !dfs(v, -1)) return false;
  return true;
}

bool brute_fvs(const Structure& g, int k) {
  for (unsigned m = 0; m < (1u << g.size()); ++m)
    if (__builtin_popcount(m) <= k && acyclic_without(g, m)) return true;
  return false;
}

// Out-nodes 3_x see only the middle-nodes, middle-nodes 2_x see everything,
// in-nodes 1_x see the middle-nodes and each other.
Structure g_star() {
  std::vector<std::string> names;
  for (int i = 1; i <= 3; ++i)
    for (const char* x : {"u", "v", "w"}) names.push_back(std::to_string(i) + "_" + x);
  auto idx = [](int i, int x) { return (i - 1) * 3 + x; };
  std::vector<Tuple> es;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      es.push_back({idx(3, x), idx(2, y)});
      es.push_back({idx(1, x), idx(2, y)});
      if (x < y) {
        es.push_back({idx(2, x), idx(2, y)});
        es.push_back({idx(1, x), idx(1, y)});
      }
    }
  return Structure(U, names, {es});
}

}  // namespace

TEST(Decide, TriangleHasThreeClique) {
  auto d = decide(clique(3), graphs::complete(3));
  ASSERT_TRUE(d.member);
  ASSERT_TRUE(d.witness);
  EXPECT_EQ(d.witness->nodes, (std::vector<int>{0, 1, 2}));
}

TEST(Decide, PathHasNoOneVertexCover) {
  EXPECT_FALSE(decide(vc(1), path_abcd()).member);
  auto two = decide(vc(2), path_abcd());
  ASSERT_TRUE(two.member);
  EXPECT_TRUE(verify_witness(vc(2), path_abcd(), *two.witness));
}

TEST(Decide, StarGadgetGraphIsNotHamiltonian) {
  const Structure g = g_star();
  EXPECT_EQ(g.size(), 9);
  EXPECT_EQ(g.tuple_count(0), 48u);
  EXPECT_FALSE(decide(hamu, g).member);
}

TEST(Decide, StarGadgetGraphArisesFromNodeGadgetOnTriangle) {
  NodeGadget gadget{graphs::path(3),
                    {{"1", "1"}, {"1", "2"}, {"2", "1"}, {"2", "2"}, {"2", "3"}, {"3", "2"}},
                    true};
  const Structure out = apply(from_gadget(gadget), graphs::directed_cycle(3));
  EXPECT_TRUE(isomorphic(out, g_star()));
  EXPECT_FALSE(decide(hamu, out).member);
}

TEST(Decide, HamiltonianCycleConventions) {
  EXPECT_FALSE(decide(hamu, graphs::complete(2)).member);
  EXPECT_TRUE(decide(hamu, graphs::cycle(3)).member);
  EXPECT_FALSE(decide(hamd, graphs::directed(1, {})).member);
  EXPECT_TRUE(decide(hamd, graphs::directed(2, {{0, 1}, {1, 0}})).member);
  EXPECT_FALSE(decide(hamd, graphs::directed(3, {{0, 1}, {1, 2}, {0, 2}})).member);
  auto d = decide(hamd, graphs::directed_cycle(4));
  ASSERT_TRUE(d.member);
  EXPECT_EQ(d.witness->nodes, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Decide, SchemaMismatch) {
  try {
    decide(hamd, graphs::cycle(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaMismatch);
  }
  EXPECT_THROW(verify_witness(clique(2), graphs::directed_cycle(3), {}), Error);
}

TEST(Decide, EmptyAndFoProblems) {
  EXPECT_FALSE(decide(EmptyProblem{}, graphs::complete(3)).member);
  EXPECT_FALSE(decide(EmptyProblem{}, graphs::directed(0, {})).member);
  FoDefined f{parse_formula("exists x. exists y. E(x,y)"), U};
  EXPECT_TRUE(decide(f, graphs::path(2)).member);
  EXPECT_FALSE(decide(f, graphs::empty(3)).member);
  EXPECT_FALSE(decide(f, graphs::path(2)).witness.has_value());
}

TEST(Verify, Examples) {
  const Structure p = path_abcd();
  const int b = p.require("b"), c = p.require("c");
  EXPECT_TRUE(verify_witness(vc(2), p, Witness{{b, c}}));
  EXPECT_FALSE(verify_witness(vc(1), p, Witness{{b}}));
  EXPECT_TRUE(verify_witness(fvs(0), p, Witness{}));
  EXPECT_FALSE(verify_witness(fvs(0), graphs::cycle(3), Witness{}));
  EXPECT_FALSE(verify_witness(clique(3), graphs::complete(3), Witness{{0, 1}}));
  EXPECT_FALSE(verify_witness(clique(2), graphs::complete(3), Witness{{0, 0}}));
  EXPECT_FALSE(verify_witness(hamu, graphs::cycle(4), Witness{{0, 2, 1, 3}}));
  EXPECT_TRUE(verify_witness(hamu, graphs::cycle(4), Witness{{0, 3, 2, 1}}));
}

TEST(Properties, CliqueAndIndependentSetMatchSentences) {
  for (const auto& g : all_graphs(5))
    for (int k = 0; k <= 6; ++k) {
      EXPECT_EQ(decide(clique(k), g).member, model_check(sentences::clique(k), g));
      EXPECT_EQ(decide(indep(k), g).member, model_check(sentences::independent_set(k), g));
    }
}

TEST(Properties, CliqueIndependentSetDuality) {
  for (const auto& g : all_graphs(5))
    for (int k = 0; k <= 5; ++k)
      EXPECT_EQ(decide(clique(k), g).member, decide(indep(k), graphs::complement(g)).member);
}

TEST(Properties, PositiveAnswersCarryVerifiedWitnesses) {
  std::mt19937 rng(20240611);
  std::vector<ProblemDef> problems;
  for (int k = 0; k <= 4; ++k) {
    problems.push_back(clique(k));
    problems.push_back(indep(k));
    problems.push_back(vc(k));
    problems.push_back(fvs(k));
  }
  problems.push_back(hamu);
  for (int round = 0; round < 200; ++round) {
    const Structure g = random_graph(rng, 3 + round % 6, 0.5);
    for (const auto& p : problems) {
      auto d = decide(p, g);
      if (!d.member) continue;
      ASSERT_TRUE(d.witness) << problem_name(p);
      EXPECT_TRUE(verify_witness(p, g, *d.witness)) << problem_name(p);
    }
  }
}

TEST(Properties, VertexCoverAgreesWithSubsetSearch) {
  for (const auto& g : all_graphs(5))
    for (int k = 0; k <= 5; ++k) {
      bool brute = false;
      for (unsigned m = 0; m < (1u << g.size()) && !brute; ++m) {
        if (__builtin_popcount(m) > k) continue;
        bool covers = true;
        for (const auto& t : g.tuples(0))
          if (!(m >> t[0] & 1u) && !(m >> t[1] & 1u)) covers = false;
        brute = covers;
      }
      EXPECT_EQ(decide(vc(k), g).member, brute);
    }
}

TEST(Properties, FeedbackVertexSetAgreesWithDfs) {
  std::vector<Structure> graphs_under_test = all_graphs(5);
  std::mt19937 rng(20240611);
  for (int round = 0; round < 150; ++round)
    graphs_under_test.push_back(random_graph(rng, 6 + round % 2, 0.3 + 0.1 * (round % 5)));
  for (const auto& g : graphs_under_test)
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(decide(fvs(k), g).member, brute_fvs(g, k));
}

TEST(Properties, HamiltonianAgreesWithPermutations) {
  std::mt19937 rng(20240611);
  for (int round = 0; round < 120; ++round) {
    const int n = 3 + round % 4;
    const Structure g = random_graph(rng, n, 0.55);
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    bool brute = false;
    do {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = g.holds(0, {p[i], p[(i + 1) % n]});
      brute = ok;
    } while (!brute && std::next_permutation(p.begin() + 1, p.end()));
    EXPECT_EQ(decide(hamu, g).member, brute);
  }
}

TEST(Naming, RoundTrips) {
  for (const std::string name : {"3-clique", "2-is", "1-vc", "4-fvs", "hamcycle-u",
                                 "hamcycle-d", "empty"})
    EXPECT_EQ(problem_name(parse_problem_name(name)), name);
  EXPECT_THROW(parse_problem_name("clique"), Error);
  EXPECT_THROW(parse_problem_name("3-hamcycle-u"), Error);
  EXPECT_THROW(parse_problem_name("x-vc"), Error);
}

TEST(Naming, JsonDocuments) {
  auto p = problem_from_json(json{{"kind", "vertex-cover"}, {"k", 2}});
  EXPECT_EQ(problem_name(p), "2-vc");
  EXPECT_EQ(to_json(p), (json{{"kind", "vertex-cover"}, {"k", 2}}));
  EXPECT_EQ(problem_name(problem_from_json(to_json(ProblemDef{hamd}))), "hamcycle-d");
  auto f = problem_from_json(json{{"fo", "forall x. exists y. E(x,y)"}});
  EXPECT_TRUE(std::holds_alternative<FoDefined>(f));
  EXPECT_EQ(problem_name(problem_from_json(to_json(f))), problem_name(f));

  auto code = [](const json& j) {
    try {
      problem_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Malformed;
  };
  EXPECT_EQ(code(json{{"kind", "clique"}}), ErrorCode::BadParameters);
  EXPECT_EQ(code(json{{"kind", "hamcycle-u"}, {"k", 1}}), ErrorCode::BadParameters);
  EXPECT_EQ(code(json{{"kind", "clique"}, {"k", -1}}), ErrorCode::BadParameters);
  EXPECT_EQ(code(json{{"fo", "exists x. P(x)"}}), ErrorCode::SchemaMismatch);
  EXPECT_EQ(code(json{{"fo", "E(x,y)"}}), ErrorCode::UnboundVariable);
  EXPECT_EQ(problem_registry().size(), 7u);
}

TEST(Naming, WitnessUsesElementNames) {
  const Structure p = path_abcd();
  auto d = decide(vc(2), p);
  EXPECT_EQ(to_json(*d.witness, p), (json{"a", "c"}));
}
