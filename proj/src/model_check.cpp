#include <algorithm>
#include <array>

#include "redukt/formula.hpp"

namespace redukt {

namespace {
constexpr std::size_t kMaxAtomArity = 16;
}

CompiledFormula::CompiledFormula(const Formula& f, const Schema& schema,
                                 const std::vector<std::string>& slots) {
  check_schema(f, schema);
  slots_ = static_cast<int>(slots.size());
  std::vector<std::pair<std::string, int>> scope;
  for (int i = 0; i < slots_; ++i) scope.emplace_back(slots[i], i);

  auto lookup = [&](const std::string& v) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == v) return it->second;
    throw Error(ErrorCode::UnboundVariable, "variable " + v + " is not bound");
  };

  std::function<int(const Formula&)> compile = [&](const Formula& g) -> int {
    Node n;
    n.kind = g->kind;
    if (g->kind == FormulaKind::Atom) {
      n.rel = static_cast<int>(*schema.find(g->name));
      if (g->terms.size() > kMaxAtomArity)
        throw Error(ErrorCode::ArityLimitExceeded, "atom arity above " + std::to_string(kMaxAtomArity));
    }
    for (const auto& t : g->terms) {
      n.args.push_back(t.is_constant() ? -1 : lookup(t.var));
      n.consts.push_back(t.value);
    }
    if (g->kind == FormulaKind::Forall || g->kind == FormulaKind::Exists) {
      n.var = slots_++;
      scope.emplace_back(g->name, n.var);
      n.kids.push_back(compile(g->children[0]));
      scope.pop_back();
    } else {
      for (const auto& c : g->children) n.kids.push_back(compile(c));
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  };
  root_ = compile(f);
}

bool CompiledFormula::eval(const Structure& s, std::vector<int>& env) const {
  if (static_cast<int>(env.size()) < slots_) env.resize(slots_, -1);
  return eval_node(root_, s, env);
}

int CompiledFormula::eval_partial(const Structure& s, std::vector<int>& env) const {
  if (static_cast<int>(env.size()) < slots_) env.resize(slots_, -1);
  return partial_node(root_, s, env);
}

bool CompiledFormula::eval_node(int id, const Structure& s, std::vector<int>& env) const {
  const Node& n = nodes_[id];
  switch (n.kind) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: {
      std::array<int, kMaxAtomArity> buf;
      const std::size_t k = n.args.size();
      for (std::size_t i = 0; i < k; ++i) {
        buf[i] = n.args[i] < 0 ? n.consts[i] : env[n.args[i]];
        if (buf[i] < 0 || buf[i] >= s.size()) return false;
      }
      return s.holds(n.rel, std::span<const int>(buf.data(), k));
    }
    case FormulaKind::Equal: {
      int a = n.args[0] < 0 ? n.consts[0] : env[n.args[0]];
      int b = n.args[1] < 0 ? n.consts[1] : env[n.args[1]];
      return a == b;
    }
    case FormulaKind::Not: return !eval_node(n.kids[0], s, env);
    case FormulaKind::And:
      for (int k : n.kids)
        if (!eval_node(k, s, env)) return false;
      return true;
    case FormulaKind::Or:
      for (int k : n.kids)
        if (eval_node(k, s, env)) return true;
      return false;
    case FormulaKind::Implies: return !eval_node(n.kids[0], s, env) || eval_node(n.kids[1], s, env);
    case FormulaKind::Iff: return eval_node(n.kids[0], s, env) == eval_node(n.kids[1], s, env);
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const bool all = n.kind == FormulaKind::Forall;
      const int saved = env[n.var];
      bool result = all;
      for (int e = 0; e < s.size(); ++e) {
        env[n.var] = e;
        if (eval_node(n.kids[0], s, env) != all) {
          result = !all;
          break;
        }
      }
      env[n.var] = saved;
      return result;
    }
  }
  return false;
}

int CompiledFormula::partial_node(int id, const Structure& s, std::vector<int>& env) const {
  const Node& n = nodes_[id];
  switch (n.kind) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      for (int a : n.args)
        if (a >= 0 && env[a] < 0) return 2;
      return eval_node(id, s, env) ? 1 : 0;
    case FormulaKind::Not: {
      int v = partial_node(n.kids[0], s, env);
      return v == 2 ? 2 : 1 - v;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      const int absorbing = n.kind == FormulaKind::And ? 0 : 1;
      bool unknown = false;
      for (int k : n.kids) {
        int v = partial_node(k, s, env);
        if (v == absorbing) return absorbing;
        unknown |= v == 2;
      }
      return unknown ? 2 : 1 - absorbing;
    }
    case FormulaKind::Implies: {
      int a = partial_node(n.kids[0], s, env);
      if (a == 0) return 1;
      int b = partial_node(n.kids[1], s, env);
      if (b == 1) return 1;
      return a == 1 && b == 0 ? 0 : 2;
    }
    case FormulaKind::Iff: {
      int a = partial_node(n.kids[0], s, env);
      int b = partial_node(n.kids[1], s, env);
      if (a == 2 || b == 2) return 2;
      return a == b ? 1 : 0;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const int absorbing = n.kind == FormulaKind::Forall ? 0 : 1;
      const int saved = env[n.var];
      int result = 1 - absorbing;
      for (int e = 0; e < s.size(); ++e) {
        env[n.var] = e;
        int v = partial_node(n.kids[0], s, env);
        if (v == absorbing) {
          result = absorbing;
          break;
        }
        if (v == 2) result = 2;
      }
      env[n.var] = saved;
      return result;
    }
    default: return eval_node(id, s, env) ? 1 : 0;
  }
}

bool model_check(const Formula& f, const Structure& s, const Assignment& assignment) {
  std::vector<std::string> slots;
  std::vector<int> env;
  for (const auto& [v, e] : assignment) {
    slots.push_back(v);
    env.push_back(e);
  }
  CompiledFormula c(f, s.schema(), slots);
  return c.eval(s, env);
}

ValidityResult decide_forall_exists_validity(const Formula& phi, const Schema& schema,
                                             int bound_override) {
  const FragmentTag tag = fragment(phi);
  if (tag == FragmentTag::General)
    throw Error(ErrorCode::NotInFragment, "formula is not in the forall*exists* fragment");
  check_schema(phi, schema);
  const Formula closed = forall(free_variables(phi), phi);
  ValidityResult r;
  r.bound = bound_override >= 0 ? bound_override : small_model_bound(phi);
  const CompiledFormula c(closed, schema, {});
  std::vector<int> env;
  for (int n = 0; n <= r.bound && r.valid; ++n) {
    for_each_structure(schema, n, canonical_options(), [&](const Structure& s) {
      if (c.eval(s, env)) return true;
      r.valid = false;
      r.counter_model = s;
      return false;
    });
  }
  return r;
}

}  // namespace redukt
