#pragma once

// Interpretations shared by the interpretation tests and the acceptance run.

#include <string>
#include <utility>
#include <vector>

#include "redukt/interpretation.hpp"

namespace corpus {

using namespace redukt;

// Undirected graphs with a strict linear order.
inline Schema ordered_graphs() {
  return Schema({{"E", 2, true, true}, {"<", 2, false, true}});
}

inline QfInterpretation make(const Schema& target, int d, const std::string& universe,
                             const std::string& equivalence,
                             const std::vector<std::string>& relations, int copies = 1) {
  QfInterpretation psi;
  psi.source = ordered_graphs();
  psi.target = target;
  psi.dimension = d;
  psi.copies = copies;
  psi.universe = parse_formula(universe);
  if (!equivalence.empty()) psi.equivalence = parse_formula(equivalence);
  for (const auto& r : relations) psi.relations.push_back(parse_formula(r));
  normalize(psi);
  return psi;
}

// Set-respecting interpretations over ordered graphs, dimension at most 2.
inline std::vector<std::pair<std::string, QfInterpretation>> set_respecting() {
  const Schema G = Schema::undirected_graph();
  const std::string pair_eq = "(x1 = y1 & x2 = y2) | (x1 = y2 & x2 = y1)";
  return {
      {"identity", interpretations::identity(ordered_graphs())},
      {"identity-forget-order", make(G, 1, "true", "", {"E(x,y)"})},
      {"complement", interpretations::complement(ordered_graphs())},
      {"complete", make(G, 1, "true", "", {"x != y"})},
      {"edgeless", make(G, 1, "true", "", {"false"})},
      {"line-graph",
       make(G, 2, "E(x1,x2)", pair_eq,
            {"(x1 = y1 | x1 = y2 | x2 = y1 | x2 = y2) & !(" + pair_eq + ")"})},
      {"ordered-pairs", make(G, 2, "x1 < x2", "", {"E(x1,y1) & E(x2,y2)"})},
      {"subdivided-clique",
       make(G, 2, "x1 = x2 | x1 < x2", "",
            {"(x1 = x2 & y1 < y2 & (x1 = y1 | x1 = y2)) | "
             "(y1 = y2 & x1 < x2 & (y1 = x1 | y1 = x2))"})},
      {"arc-reversal", make(G, 2, "E(x1,x2)", "", {"x2 = y1 & x1 = y2"})},
      {"two-copies",
       make(G, 1, "true", "", {"(E(x,y) & jx = jy) | (x = y & jx != jy)"}, 2)},
      {"square", make(G, 2, "true", "", {"(x1 = y1 & E(x2,y2)) | (x2 = y2 & E(x1,y1))"})},
      {"unordered-pairs",
       make(G, 2, "true", pair_eq,
            {"((E(x1,y1) & E(x2,y2)) | (E(x1,y2) & E(x2,y1))) & !(" + pair_eq + ")"})},
  };
}

}  // namespace corpus
