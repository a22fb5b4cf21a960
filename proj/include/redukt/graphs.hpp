#pragma once

#include <utility>
#include <vector>

#include "redukt/structures.hpp"

// Small graph constructors over the standard graph schemas. Nodes are
// labelled 1..n (see element_label); edge endpoints are 0-based.
namespace redukt::graphs {

using Edge = std::pair<int, int>;

Structure undirected(int n, const std::vector<Edge>& edges);
Structure directed(int n, const std::vector<Edge>& edges);

Structure empty(int n);
Structure complete(int n);
Structure path(int n);
Structure cycle(int n);
Structure directed_cycle(int n);

// Loop-free complement of an undirected graph.
Structure complement(const Structure& g);

bool is_undirected_graph(const Structure& s);
bool is_directed_graph(const Structure& s);

}  // namespace redukt::graphs
