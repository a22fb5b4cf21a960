#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "redukt/structures.hpp"

namespace redukt {

enum class FormulaKind { True, False, Atom, Equal, Not, And, Or, Implies, Iff, Forall, Exists };

struct Term {
  std::string var;  // empty for constants
  int value = 0;

  static Term variable(std::string v) { return {std::move(v), 0}; }
  static Term constant(int c) { return {"", c}; }
  bool is_constant() const { return var.empty(); }
  bool operator==(const Term&) const = default;
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind;
  std::string name;  // relation symbol (Atom) or bound variable (quantifiers)
  std::vector<Term> terms;
  std::vector<Formula> children;
};

// ---- construction

Formula f_true();
Formula f_false();
Formula atom(std::string rel, std::vector<Term> args);
Formula atom(std::string rel, const std::vector<std::string>& vars);
Formula equal(Term a, Term b);
Formula equal(const std::string& a, const std::string& b);
Formula not_equal(const std::string& a, const std::string& b);
Formula negate(Formula f);
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula forall(std::string v, Formula body);
Formula exists(std::string v, Formula body);
Formula forall(const std::vector<std::string>& vs, Formula body);
Formula exists(const std::vector<std::string>& vs, Formula body);

bool structurally_equal(const Formula& a, const Formula& b);

// ---- text forms

// (forall x (exists y (E x y))), (= x y), (not f), (and f...), (or f...),
// (implies a b), (iff a b), true, false; integers are constants.
std::string to_sexpr(const Formula& f);
Formula parse_sexpr(const std::string& text);
// Infix form; grammar in docs/formula-grammar.md.
std::string to_infix(const Formula& f);
Formula parse_infix(const std::string& text);
// S-expression when the text parses as one, infix otherwise.
Formula parse_formula(const std::string& text);

// ---- syntax queries

// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);
int quantifier_count(const Formula& f);
bool is_quantifier_free(const Formula& f);
// Throws SchemaMismatch on unknown symbols or arity mismatches.
void check_schema(const Formula& f, const Schema& schema);
// Replaces free occurrences of variables; targets must not be captured.
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& names);

// ---- normal forms

Formula nnf(const Formula& f);

enum class PrenexPreference { ForallFirst, ExistsFirst };

struct PrenexForm {
  // (is_forall, variable) from outermost to innermost.
  std::vector<std::pair<bool, std::string>> prefix;
  Formula matrix;
  Formula formula() const;
};

PrenexForm prenex(const Formula& f, PrenexPreference pref = PrenexPreference::ForallFirst);

enum class FragmentTag { QuantifierFree, ExistsStar, ForallExists, General };
const char* to_string(FragmentTag t);
FragmentTag fragment(const Formula& f);

// ---- semantics

using Assignment = std::map<std::string, int>;

// Element indices for variables; constants denote themselves.
bool model_check(const Formula& f, const Structure& s, const Assignment& assignment = {});

// Compiled evaluator over numbered variable slots.
class CompiledFormula {
 public:
  CompiledFormula() = default;
  // slots[i] names the variable stored in env[i]; every free variable must
  // have a slot.
  CompiledFormula(const Formula& f, const Schema& schema, const std::vector<std::string>& slots);

  bool eval(const Structure& s, std::vector<int>& env) const;
  // Kleene evaluation; env entries < 0 are unassigned. Returns 0, 1 or 2
  // (unknown).
  int eval_partial(const Structure& s, std::vector<int>& env) const;
  int slot_count() const { return slots_; }

 private:
  struct Node {
    FormulaKind kind;
    int rel = -1;
    std::vector<int> args;  // slot index, or -1 for the constant in consts
    std::vector<int> consts;
    std::vector<int> kids;
    int var = -1;
  };

  bool eval_node(int n, const Structure& s, std::vector<int>& env) const;
  int partial_node(int n, const Structure& s, std::vector<int>& env) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  int slots_ = 0;
};

// ---- validity of forall*exists* sentences

struct ValidityResult {
  bool valid = true;
  int bound = 0;
  std::optional<Structure> counter_model;
};

// Decides whether `phi` (free variables read universally) holds in every
// finite `schema`-structure, including the empty one. Throws NotInFragment
// unless phi is forall*exists*. `bound_override` replaces the small-model
// bound when non-negative.
ValidityResult decide_forall_exists_validity(const Formula& phi, const Schema& schema,
                                             int bound_override = -1);

// Number of existential variables in the prenex form of the negation.
int small_model_bound(const Formula& phi);

}  // namespace redukt
