#include "redukt/graphs.hpp"

namespace redukt::graphs {

namespace {

Structure build(const Schema& schema, int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<Tuple>> rels(1);
  for (auto [u, v] : edges) rels[0].push_back({u, v});
  return Structure::numbered(schema, n, std::move(rels));
}

}  // namespace

Structure undirected(int n, const std::vector<Edge>& edges) {
  return build(Schema::undirected_graph(), n, edges);
}

Structure directed(int n, const std::vector<Edge>& edges) {
  return build(Schema::directed_graph(), n, edges);
}

Structure empty(int n) { return undirected(n, {}); }

Structure complete(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return undirected(n, es);
}

Structure path(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return undirected(n, es);
}

Structure cycle(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  if (n >= 3) es.push_back({n - 1, 0});
  return undirected(n, es);
}

Structure directed_cycle(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  if (n >= 2) es.push_back({n - 1, 0});
  return directed(n, es);
}

Structure complement(const Structure& g) {
  if (!is_undirected_graph(g))
    throw Error(ErrorCode::SchemaMismatch, "complement needs an undirected graph");
  std::vector<std::vector<Tuple>> rels(1);
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (!g.holds(0, {i, j})) rels[0].push_back({i, j});
  return Structure(g.schema(), g.universe(), std::move(rels));
}

bool is_undirected_graph(const Structure& s) {
  return s.schema() == Schema::undirected_graph();
}

bool is_directed_graph(const Structure& s) { return s.schema() == Schema::directed_graph(); }

}  // namespace redukt::graphs
