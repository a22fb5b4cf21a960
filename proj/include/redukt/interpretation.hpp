#pragma once

#include <string>
#include <vector>

#include "redukt/cookbook.hpp"
#include "redukt/formula.hpp"
#include "redukt/json_io.hpp"

namespace redukt {

// Quantifier-free interpretation. With copies > 1 every block carries a
// copy variable after its d element variables, ranging over 1..copies.
struct QfInterpretation {
  Schema source, target;
  int dimension = 1;
  int copies = 1;
  // blocks[b] are the variables of the b-th tuple. universe uses block 0,
  // equivalence blocks 0 and 1, relation r the first arity(r) blocks.
  std::vector<std::vector<std::string>> blocks;
  Formula universe;
  // Null means tuple equality.
  Formula equivalence;
  // One per target symbol.
  std::vector<Formula> relations;

  int width() const { return dimension + (copies > 1 ? 1 : 0); }
  int block_count() const;
};

// x, y, z, u, v, w, then x7, x8, ...; "x" for d = 1, "x1".."xd" otherwise,
// copy variable "jx".
std::vector<std::string> default_block(int b, int dimension, int copies);
std::vector<std::vector<std::string>> default_blocks(int count, int dimension, int copies);

// Fills in missing blocks, then checks shapes, schemas and free variables.
void normalize(QfInterpretation& psi);

json to_json(const QfInterpretation& psi);
QfInterpretation interpretation_from_json(const json& doc);

struct Evaluation {
  Structure structure;
  // representatives[i]: lex-least member of output element i; the copy
  // number is the last entry when copying.
  std::vector<std::vector<int>> representatives;
  std::vector<std::vector<std::vector<int>>> classes;
};

class InterpretationEvaluator {
 public:
  explicit InterpretationEvaluator(QfInterpretation psi);

  Evaluation run(const Structure& s) const;
  const QfInterpretation& interpretation() const { return psi_; }

 private:
  struct Split;
  QfInterpretation psi_;
  CompiledFormula universe_;
  std::vector<std::shared_ptr<const Split>> equivalence_;
  std::vector<std::shared_ptr<const Split>> relations_;
};

Evaluation eval_interpretation_detailed(const QfInterpretation& psi, const Structure& s);
Structure eval_interpretation(const QfInterpretation& psi, const Structure& s);

// Formula over the source schema true in s iff phi_star holds in psi(s).
// Variable v becomes v_1..v_d; with copies its copy number is expanded into
// one disjunct (or conjunct) per copy.
Formula inverse_substitute(const QfInterpretation& psi, const Formula& phi_star);

// ---- translations

enum class QfStage { Copying, Plain };

QfInterpretation cookbook_to_qf(const CookbookReduction& rho, QfStage stage = QfStage::Plain);
QfInterpretation eliminate_copy_constants(const QfInterpretation& psi);

// Needs a binary symbol "<" in the source schema.
CookbookReduction qf_to_cookbook(const QfInterpretation& psi);

// All structures on n elements where "<" is the order of the indices.
std::vector<Structure> ordered_structures(const Schema& schema, int n);

// ---- a few standard interpretations

namespace interpretations {
QfInterpretation identity(const Schema& schema);
// Undirected graphs: E becomes non-adjacency.
QfInterpretation complement(const Schema& schema);
}  // namespace interpretations

}  // namespace redukt
