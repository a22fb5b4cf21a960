#include "redukt/problems.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace redukt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct KindName {
  ProblemKind kind;
  const char* name;
  const char* short_name;
};

constexpr KindName kKinds[] = {
    {ProblemKind::Clique, "clique", "clique"},
    {ProblemKind::IndependentSet, "independent-set", "is"},
    {ProblemKind::VertexCover, "vertex-cover", "vc"},
    {ProblemKind::FeedbackVertexSet, "feedback-vertex-set", "fvs"},
    {ProblemKind::HamCycleU, "hamcycle-u", "hamcycle-u"},
    {ProblemKind::HamCycleD, "hamcycle-d", "hamcycle-d"},
};

std::optional<ProblemKind> kind_from_string(const std::string& s) {
  for (const auto& k : kKinds)
    if (s == k.name || s == k.short_name) return k.kind;
  return std::nullopt;
}

const char* short_name(ProblemKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.short_name;
  return "?";
}

using Matrix = std::vector<std::vector<char>>;

Matrix adjacency(const Structure& s) {
  const int n = s.size();
  Matrix adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < s.tuple_count(0); ++i) {
    auto t = s.tuple(0, i);
    adj[t[0]][t[1]] = 1;
  }
  return adj;
}

void check_schema_of(const ProblemDef& p, const Structure& s) {
  auto schema = problem_schema(p);
  if (schema && !(s.schema() == *schema))
    throw Error(ErrorCode::SchemaMismatch,
                "structure schema does not match problem " + problem_name(p));
}

void check_k(const BuiltIn& b) {
  if (needs_parameter(b.kind) && b.k < 0)
    throw Error(ErrorCode::BadParameters, "parameter k must be non-negative");
}

// Exactly k pairwise adjacent nodes (or pairwise non-adjacent when `want` is 0).
bool find_clique(const Matrix& adj, int k, char want, std::vector<int>& chosen, int from) {
  if (static_cast<int>(chosen.size()) == k) return true;
  const int n = static_cast<int>(adj.size());
  for (int v = from; v < n; ++v) {
    if (n - v < k - static_cast<int>(chosen.size())) return false;
    bool ok = true;
    for (int u : chosen)
      if (adj[u][v] != want) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(v);
    if (find_clique(adj, k, want, chosen, v + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

bool find_cover(const Matrix& adj, int budget, std::vector<char>& in, std::vector<int>& chosen) {
  const int n = static_cast<int>(adj.size());
  for (int u = 0; u < n; ++u) {
    if (in[u]) continue;
    for (int v = u + 1; v < n; ++v) {
      if (in[v] || !adj[u][v]) continue;
      if (budget == 0) return false;
      for (int pick : {u, v}) {
        in[pick] = 1;
        chosen.push_back(pick);
        if (find_cover(adj, budget - 1, in, chosen)) return true;
        chosen.pop_back();
        in[pick] = 0;
      }
      return false;
    }
  }
  return true;
}

// Nodes of a shortest cycle of the undirected graph minus `removed`, or empty.
std::vector<int> shortest_cycle(const Matrix& adj, const std::vector<char>& removed) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> best;
  for (int root = 0; root < n; ++root) {
    if (removed[root]) continue;
    std::vector<int> dist(n, -1), parent(n, -1);
    std::deque<int> queue{root};
    dist[root] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < n; ++v) {
        if (!adj[u][v] || removed[v] || v == parent[u]) continue;
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
          continue;
        }
        // Non-tree edge closes a closed walk through the root; it contains a
        // cycle, and the overall minimum over roots is a shortest cycle.
        std::vector<int> a, b;
        for (int x = u; x >= 0; x = parent[x]) a.push_back(x);
        for (int x = v; x >= 0; x = parent[x]) b.push_back(x);
        while (a.size() > 1 && b.size() > 1 && a[a.size() - 2] == b[b.size() - 2]) {
          a.pop_back();
          b.pop_back();
        }
        std::vector<int> cyc(a.begin(), a.end());
        cyc.insert(cyc.end(), b.rbegin() + 1, b.rend());
        if (cyc.size() >= 3 && (best.empty() || cyc.size() < best.size())) best = cyc;
      }
    }
  }
  return best;
}

bool find_fvs(const Matrix& adj, int budget, std::vector<char>& removed,
              std::vector<int>& chosen) {
  auto cyc = shortest_cycle(adj, removed);
  if (cyc.empty()) return true;
  if (budget == 0) return false;
  std::sort(cyc.begin(), cyc.end());
  for (int v : cyc) {
    removed[v] = 1;
    chosen.push_back(v);
    if (find_fvs(adj, budget - 1, removed, chosen)) return true;
    chosen.pop_back();
    removed[v] = 0;
  }
  return false;
}

bool extend_path(const Matrix& adj, std::vector<int>& path, std::vector<char>& used) {
  const int n = static_cast<int>(adj.size());
  if (static_cast<int>(path.size()) == n) return adj[path.back()][path.front()] != 0;
  for (int v = 0; v < n; ++v) {
    if (used[v] || !adj[path.back()][v]) continue;
    used[v] = 1;
    path.push_back(v);
    if (extend_path(adj, path, used)) return true;
    path.pop_back();
    used[v] = 0;
  }
  return false;
}

std::optional<std::vector<int>> hamiltonian_cycle(const Matrix& adj, int min_nodes) {
  const int n = static_cast<int>(adj.size());
  if (n < min_nodes) return std::nullopt;
  for (int v = 0; v < n; ++v) {
    bool out = false, in = false;
    for (int u = 0; u < n; ++u) {
      out = out || adj[v][u];
      in = in || adj[u][v];
    }
    if (!out || !in) return std::nullopt;
  }
  std::vector<int> path{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  if (extend_path(adj, path, used)) return path;
  return std::nullopt;
}

bool distinct_in_range(const std::vector<int>& nodes, int n) {
  std::vector<char> seen(n, 0);
  for (int v : nodes) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool forest_without(const Matrix& adj, const std::vector<int>& removed_nodes) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> removed(n, 0);
  for (int v : removed_nodes) removed[v] = 1;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (!adj[u][v] || removed[u] || removed[v]) continue;
      int a = find(u), b = find(v);
      if (a == b) return false;
      parent[a] = b;
    }
  return true;
}

Decision decide_builtin(const BuiltIn& b, const Structure& s) {
  check_k(b);
  const Matrix adj = adjacency(s);
  const int n = s.size();
  std::vector<int> chosen;
  Decision d;
  switch (b.kind) {
    case ProblemKind::Clique:
    case ProblemKind::IndependentSet:
      d.member = b.k <= n &&
                 find_clique(adj, b.k, b.kind == ProblemKind::Clique ? 1 : 0, chosen, 0);
      break;
    case ProblemKind::VertexCover: {
      std::vector<char> in(n, 0);
      d.member = find_cover(adj, b.k, in, chosen);
      break;
    }
    case ProblemKind::FeedbackVertexSet: {
      std::vector<char> removed(n, 0);
      d.member = find_fvs(adj, b.k, removed, chosen);
      break;
    }
    case ProblemKind::HamCycleU:
    case ProblemKind::HamCycleD: {
      auto cyc = hamiltonian_cycle(adj, b.kind == ProblemKind::HamCycleU ? 3 : 2);
      d.member = cyc.has_value();
      if (cyc) d.witness = Witness{*cyc};
      return d;
    }
  }
  if (d.member) {
    std::sort(chosen.begin(), chosen.end());
    d.witness = Witness{chosen};
  }
  return d;
}

bool verify_builtin(const BuiltIn& b, const Structure& s, const Witness& w) {
  check_k(b);
  const Matrix adj = adjacency(s);
  const int n = s.size();
  const auto& nodes = w.nodes;
  if (!distinct_in_range(nodes, n)) return false;
  const int size = static_cast<int>(nodes.size());
  switch (b.kind) {
    case ProblemKind::Clique:
    case ProblemKind::IndependentSet: {
      if (size != b.k) return false;
      const char want = b.kind == ProblemKind::Clique ? 1 : 0;
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
          if (adj[nodes[i]][nodes[j]] != want) return false;
      return true;
    }
    case ProblemKind::VertexCover: {
      if (size > b.k) return false;
      std::vector<char> in(n, 0);
      for (int v : nodes) in[v] = 1;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (adj[u][v] && !in[u] && !in[v]) return false;
      return true;
    }
    case ProblemKind::FeedbackVertexSet:
      return size <= b.k && forest_without(adj, nodes);
    case ProblemKind::HamCycleU:
    case ProblemKind::HamCycleD: {
      const int min_nodes = b.kind == ProblemKind::HamCycleU ? 3 : 2;
      if (n < min_nodes || size != n) return false;
      for (int i = 0; i < n; ++i)
        if (!adj[nodes[i]][nodes[(i + 1) % n]]) return false;
      return true;
    }
  }
  return false;
}

Formula pairwise(int k, bool adjacent) {
  std::vector<std::string> vars;
  for (int i = 1; i <= k; ++i) vars.push_back("x" + std::to_string(i));
  std::vector<Formula> parts;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      parts.push_back(not_equal(vars[i], vars[j]));
      Formula e = atom("E", std::vector<std::string>{vars[i], vars[j]});
      parts.push_back(adjacent ? e : negate(e));
    }
  Formula body = conj(std::move(parts));
  return vars.empty() ? body : exists(vars, body);
}

}  // namespace

bool needs_parameter(ProblemKind kind) {
  return kind != ProblemKind::HamCycleU && kind != ProblemKind::HamCycleD;
}

const char* to_string(ProblemKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "?";
}

std::optional<Schema> problem_schema(const ProblemDef& p) {
  return std::visit(
      Overloaded{[](const BuiltIn& b) -> std::optional<Schema> {
                   return b.kind == ProblemKind::HamCycleD ? Schema::directed_graph()
                                                           : Schema::undirected_graph();
                 },
                 [](const FoDefined& f) -> std::optional<Schema> { return f.schema; },
                 [](const EmptyProblem&) -> std::optional<Schema> { return std::nullopt; }},
      p);
}

Decision decide(const ProblemDef& p, const Structure& s) {
  check_schema_of(p, s);
  return std::visit(
      Overloaded{[&](const BuiltIn& b) { return decide_builtin(b, s); },
                 [&](const FoDefined& f) { return Decision{model_check(f.sentence, s), {}}; },
                 [](const EmptyProblem&) { return Decision{}; }},
      p);
}

bool verify_witness(const ProblemDef& p, const Structure& s, const Witness& w) {
  check_schema_of(p, s);
  return std::visit(
      Overloaded{[&](const BuiltIn& b) { return verify_builtin(b, s, w); },
                 [&](const FoDefined& f) { return model_check(f.sentence, s); },
                 [](const EmptyProblem&) { return false; }},
      p);
}

std::string problem_name(const ProblemDef& p) {
  return std::visit(
      Overloaded{[](const BuiltIn& b) {
                   std::string base = short_name(b.kind);
                   return needs_parameter(b.kind) ? std::to_string(b.k) + "-" + base : base;
                 },
                 [](const FoDefined& f) { return "fo:" + to_infix(f.sentence); },
                 [](const EmptyProblem&) { return std::string("empty"); }},
      p);
}

ProblemDef parse_problem_name(const std::string& name) {
  if (name == "empty") return EmptyProblem{};
  if (auto kind = kind_from_string(name); kind && !needs_parameter(*kind))
    return BuiltIn{*kind, 0};
  auto dash = name.find('-');
  if (dash != std::string::npos && dash > 0) {
    const std::string num = name.substr(0, dash);
    if (std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
        num.size() <= 4) {
      if (auto kind = kind_from_string(name.substr(dash + 1));
          kind && needs_parameter(*kind))
        return BuiltIn{*kind, std::stoi(num)};
    }
  }
  throw Error(ErrorCode::BadParameters, "unknown problem '" + name + "'");
}

json to_json(const ProblemDef& p) {
  return std::visit(
      Overloaded{[](const BuiltIn& b) {
                   json j{{"kind", to_string(b.kind)}};
                   if (needs_parameter(b.kind)) j["k"] = b.k;
                   return j;
                 },
                 [](const FoDefined& f) {
                   return json{{"fo", to_infix(f.sentence)}, {"schema", to_json(f.schema)}};
                 },
                 [](const EmptyProblem&) { return json{{"kind", "empty"}}; }},
      p);
}

ProblemDef problem_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::Malformed, "problem must be an object");
  if (doc.contains("fo")) {
    if (!doc["fo"].is_string()) throw Error(ErrorCode::Malformed, "'fo' must be a string");
    FoDefined f;
    f.sentence = parse_formula(doc["fo"].get<std::string>());
    if (doc.contains("schema")) f.schema = schema_from_json(doc["schema"]);
    check_schema(f.sentence, f.schema);
    if (!free_variables(f.sentence).empty())
      throw Error(ErrorCode::UnboundVariable, "problem formula must be a sentence");
    return f;
  }
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw Error(ErrorCode::Malformed, "problem needs 'kind' or 'fo'");
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "empty") return EmptyProblem{};
  auto k = kind_from_string(kind);
  if (!k) throw Error(ErrorCode::BadParameters, "unknown problem kind '" + kind + "'");
  BuiltIn b{*k, 0};
  if (needs_parameter(*k)) {
    if (!doc.contains("k") || !doc["k"].is_number_integer())
      throw Error(ErrorCode::BadParameters, kind + " needs an integer 'k'");
    b.k = doc["k"].get<int>();
    check_k(b);
  } else if (doc.contains("k")) {
    throw Error(ErrorCode::BadParameters, kind + " takes no parameter");
  }
  return b;
}

json to_json(const Witness& w, const Structure& s) {
  json nodes = json::array();
  for (int v : w.nodes) nodes.push_back(s.name(v));
  return nodes;
}

json problem_registry() {
  json out = json::array();
  for (const auto& k : kKinds)
    out.push_back({{"kind", k.name},
                   {"short", k.short_name},
                   {"parameter", needs_parameter(k.kind)},
                   {"schema", to_json(*problem_schema(BuiltIn{k.kind, 0}))}});
  out.push_back({{"kind", "empty"}, {"short", "empty"}, {"parameter", false}});
  return out;
}

namespace sentences {

Formula clique(int k) { return pairwise(k, true); }
Formula independent_set(int k) { return pairwise(k, false); }

}  // namespace sentences

}  // namespace redukt
