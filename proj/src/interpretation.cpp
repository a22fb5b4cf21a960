#include "redukt/interpretation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace redukt {

namespace {

const char* const kLetters[] = {"x", "y", "z", "u", "v", "w"};

std::string tuple_text(const Structure& s, const std::vector<int>& t, int dimension) {
  std::string out = "(";
  for (int p = 0; p < dimension; ++p) out += (p ? "," : "") + s.name(t[p]);
  if (static_cast<int>(t.size()) > dimension) out += ";" + std::to_string(t[dimension]);
  return out + ")";
}

[[noreturn]] void congruence_error(const std::string& what) {
  throw Error(ErrorCode::NotACongruence, what);
}

std::vector<Formula> top_level(const Formula& f, FormulaKind k) {
  if (f->kind == k) return f->children;
  return {f};
}

}  // namespace

int QfInterpretation::block_count() const {
  int b = equivalence ? 2 : 1;
  for (const auto& sym : target.symbols()) b = std::max(b, sym.arity);
  return b;
}

std::vector<std::string> default_block(int b, int dimension, int copies) {
  const std::string letter = b < 6 ? kLetters[b] : "x" + std::to_string(b + 1) + "_";
  std::vector<std::string> out;
  if (dimension == 1) out.push_back(letter);
  else
    for (int p = 1; p <= dimension; ++p) out.push_back(letter + std::to_string(p));
  if (copies > 1) out.push_back("j" + letter);
  return out;
}

std::vector<std::vector<std::string>> default_blocks(int count, int dimension, int copies) {
  std::vector<std::vector<std::string>> out;
  for (int b = 0; b < count; ++b) out.push_back(default_block(b, dimension, copies));
  return out;
}

void normalize(QfInterpretation& psi) {
  if (psi.dimension < 1) throw Error(ErrorCode::BadParameters, "dimension must be at least 1");
  if (psi.copies < 1) throw Error(ErrorCode::BadParameters, "copies must be at least 1");
  if (!psi.universe) psi.universe = f_true();
  if (psi.relations.size() != psi.target.size())
    throw Error(ErrorCode::Malformed, "need one formula per target symbol");
  const int need = psi.block_count();
  while (static_cast<int>(psi.blocks.size()) < need)
    psi.blocks.push_back(
        default_block(static_cast<int>(psi.blocks.size()), psi.dimension, psi.copies));
  std::set<std::string> seen;
  for (const auto& block : psi.blocks) {
    if (static_cast<int>(block.size()) != psi.width())
      throw Error(ErrorCode::Malformed, "variable block has the wrong width");
    for (const auto& v : block)
      if (!seen.insert(v).second) throw Error(ErrorCode::Malformed, "variable " + v + " repeated");
  }
  auto check = [&](const Formula& f, int blocks, const std::string& what) {
    if (!is_quantifier_free(f)) throw Error(ErrorCode::Malformed, what + " is not quantifier-free");
    check_schema(f, psi.source);
    std::set<std::string> allowed;
    for (int b = 0; b < blocks; ++b) allowed.insert(psi.blocks[b].begin(), psi.blocks[b].end());
    for (const auto& v : free_variables(f))
      if (!allowed.count(v))
        throw Error(ErrorCode::UnboundVariable, what + " uses variable " + v);
  };
  check(psi.universe, 1, "universe formula");
  if (psi.equivalence) check(psi.equivalence, 2, "equivalence formula");
  for (std::size_t r = 0; r < psi.target.size(); ++r)
    check(psi.relations[r], psi.target[r].arity, "formula for " + psi.target[r].name);
}

// ---------------------------------------------------------------- json

json to_json(const QfInterpretation& psi) {
  json rel = json::object();
  for (std::size_t r = 0; r < psi.target.size(); ++r)
    rel[psi.target[r].name] = to_sexpr(psi.relations[r]);
  return {{"source_schema", to_json(psi.source)},
          {"target_schema", to_json(psi.target)},
          {"dimension", psi.dimension},
          {"copies", psi.copies},
          {"variables", psi.blocks},
          {"universe", to_sexpr(psi.universe)},
          {"equivalence", psi.equivalence ? json(to_sexpr(psi.equivalence)) : json(nullptr)},
          {"relations", rel}};
}

QfInterpretation interpretation_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::Malformed, "interpretation must be an object");
  auto formula_at = [&](const json& v, const std::string& what) {
    if (!v.is_string()) throw Error(ErrorCode::Malformed, what + " must be a formula string");
    return parse_formula(v.get<std::string>());
  };
  QfInterpretation psi;
  try {
    psi.source = schema_from_json(doc.at("source_schema"));
    psi.target = schema_from_json(doc.at("target_schema"));
    psi.dimension = doc.value("dimension", 1);
    psi.copies = doc.value("copies", 1);
    if (doc.contains("variables"))
      psi.blocks = doc.at("variables").get<std::vector<std::vector<std::string>>>();
    if (doc.contains("universe")) psi.universe = formula_at(doc.at("universe"), "universe");
    if (doc.contains("equivalence") && !doc.at("equivalence").is_null())
      psi.equivalence = formula_at(doc.at("equivalence"), "equivalence");
    const json& rel = doc.at("relations");
    for (const auto& sym : psi.target.symbols()) {
      if (!rel.contains(sym.name))
        throw Error(ErrorCode::Malformed, "no formula for target symbol " + sym.name);
      psi.relations.push_back(formula_at(rel.at(sym.name), sym.name));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("interpretation document: ") + e.what());
  }
  normalize(psi);
  return psi;
}

// ---------------------------------------------------------------- evaluation

// A formula split into disjuncts of conjuncts. Conjuncts touching a single
// block are "pure" and become bits of that block's key; the positions
// touched by the other conjuncts become values of the key. The formula's
// value depends on the keys of its blocks only.
struct InterpretationEvaluator::Split {
  struct Disjunct {
    std::vector<std::vector<int>> required;  // per block, pure formula ids
    CompiledFormula whole;
  };
  int blocks = 0;
  std::vector<std::vector<CompiledFormula>> pure;
  std::vector<std::vector<int>> positions;
  std::vector<Disjunct> disjuncts;

  Split(const Formula& f, const QfInterpretation& psi, int nblocks) : blocks(nblocks) {
    std::map<std::string, std::pair<int, int>> where;  // variable -> (block, position)
    std::vector<std::string> slots;
    for (int b = 0; b < blocks; ++b)
      for (int p = 0; p < psi.width(); ++p) {
        where[psi.blocks[b][p]] = {b, p};
        slots.push_back(psi.blocks[b][p]);
      }
    pure.resize(blocks);
    std::vector<std::set<int>> pos(blocks);
    std::vector<std::map<std::string, int>> pure_ids(blocks);
    for (const auto& d : top_level(f, FormulaKind::Or)) {
      Disjunct dj;
      dj.required.resize(blocks);
      dj.whole = CompiledFormula(d, psi.source, slots);
      for (const auto& c : top_level(d, FormulaKind::And)) {
        std::set<int> touched;
        for (const auto& v : free_variables(c)) touched.insert(where.at(v).first);
        if (touched.size() <= 1) {
          const int b = touched.empty() ? 0 : *touched.begin();
          const std::string key = to_sexpr(c);
          auto it = pure_ids[b].find(key);
          if (it == pure_ids[b].end()) {
            it = pure_ids[b].emplace(key, static_cast<int>(pure[b].size())).first;
            pure[b].emplace_back(c, psi.source, psi.blocks[b]);
          }
          dj.required[b].push_back(it->second);
        } else {
          for (const auto& v : free_variables(c)) pos[where.at(v).first].insert(where.at(v).second);
        }
      }
      disjuncts.push_back(std::move(dj));
    }
    for (int b = 0; b < blocks; ++b) positions.emplace_back(pos[b].begin(), pos[b].end());
  }

  std::vector<int> key(int b, const Structure& s, const std::vector<int>& t) const {
    std::vector<int> k;
    std::vector<int> env = t;
    for (const auto& f : pure[b]) k.push_back(f.eval(s, env) ? 1 : 0);
    for (int p : positions[b]) k.push_back(t[p]);
    return k;
  }
};

namespace {

// Key ids of every universe tuple for one split.
struct Keys {
  std::vector<std::vector<int>> of;               // [block][tuple] -> key id
  std::vector<std::vector<int>> rep;              // [block][key id] -> tuple index
  std::vector<std::vector<std::vector<int>>> bits;  // [block][key id] -> key
};

template <class SplitT>
Keys compute_keys(const SplitT& sp, const Structure& s, const std::vector<std::vector<int>>& tuples) {
  Keys k;
  k.of.resize(sp.blocks);
  k.rep.resize(sp.blocks);
  k.bits.resize(sp.blocks);
  for (int b = 0; b < sp.blocks; ++b) {
    std::map<std::vector<int>, int> ids;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      auto key = sp.key(b, s, tuples[i]);
      auto [it, fresh] = ids.emplace(key, static_cast<int>(k.rep[b].size()));
      if (fresh) {
        k.rep[b].push_back(static_cast<int>(i));
        k.bits[b].push_back(std::move(key));
      }
      k.of[b].push_back(it->second);
    }
  }
  return k;
}

// Key ids of block b satisfying the pure formulas a disjunct requires.
std::vector<int> admissible(const Keys& k, int b, const std::vector<int>& required) {
  std::vector<int> out;
  for (std::size_t id = 0; id < k.bits[b].size(); ++id) {
    bool ok = true;
    for (int r : required) ok &= k.bits[b][id][r] == 1;
    if (ok) out.push_back(static_cast<int>(id));
  }
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

constexpr double kMaxUniverseCandidates = 1 << 24;

}  // namespace

InterpretationEvaluator::InterpretationEvaluator(QfInterpretation psi) : psi_(std::move(psi)) {
  normalize(psi_);
  universe_ = CompiledFormula(psi_.universe, psi_.source, psi_.blocks[0]);
  if (psi_.equivalence)
    equivalence_.push_back(std::make_shared<const Split>(psi_.equivalence, psi_, 2));
  for (std::size_t r = 0; r < psi_.target.size(); ++r)
    relations_.push_back(
        std::make_shared<const Split>(psi_.relations[r], psi_, psi_.target[r].arity));
}

Evaluation InterpretationEvaluator::run(const Structure& s) const {
  if (!(s.schema() == psi_.source))
    throw Error(ErrorCode::SchemaMismatch, "structure is not over the interpretation's source schema");
  const int d = psi_.dimension, w = psi_.width(), n = s.size();
  if (std::pow(static_cast<double>(n), d) * psi_.copies > kMaxUniverseCandidates)
    throw Error(ErrorCode::ExplosionGuard, "too many candidate tuples");

  // Universe tuples in lexicographic order, pruned on prefixes.
  std::vector<std::vector<int>> tuples;
  {
    std::vector<int> env(std::max(w, universe_.slot_count()), -1);
    auto rec = [&](auto&& self, int p) -> void {
      if (p == w) {
        if (universe_.eval(s, env)) tuples.emplace_back(env.begin(), env.begin() + w);
        return;
      }
      const int lo = p < d ? 0 : 1, hi = p < d ? n - 1 : psi_.copies;
      for (int v = lo; v <= hi; ++v) {
        env[p] = v;
        if (universe_.eval_partial(s, env) != 0) self(self, p + 1);
      }
      env[p] = -1;
    };
    rec(rec, 0);
  }
  auto text = [&](int i) { return tuple_text(s, tuples[i], d); };

  // Classes.
  const int T = static_cast<int>(tuples.size());
  std::vector<int> class_of(T);
  int class_count = 0;
  if (!psi_.equivalence) {
    std::iota(class_of.begin(), class_of.end(), 0);
    class_count = T;
  } else {
    const Split& sp = *equivalence_[0];
    Keys k = compute_keys(sp, s, tuples);
    const std::size_t K1 = k.rep[1].size();
    std::unordered_set<std::uint64_t> related;
    auto code = [&](int a, int b) { return static_cast<std::uint64_t>(a) * K1 + b; };
    std::vector<int> env(2 * w);
    for (const auto& dj : sp.disjuncts) {
      auto A0 = admissible(k, 0, dj.required[0]);
      auto A1 = admissible(k, 1, dj.required[1]);
      for (int a : A0)
        for (int b : A1) {
          if (related.count(code(a, b))) continue;
          const auto &ta = tuples[k.rep[0][a]], &tb = tuples[k.rep[1][b]];
          std::copy(ta.begin(), ta.end(), env.begin());
          std::copy(tb.begin(), tb.end(), env.begin() + w);
          if (dj.whole.eval(s, env)) related.insert(code(a, b));
        }
    }
    // Signatures: tuples with equal key pairs behave identically.
    std::map<std::pair<int, int>, int> sig_id;
    std::vector<int> sig_of(T), sig_first;
    std::vector<std::pair<int, int>> sig_keys;
    for (int i = 0; i < T; ++i) {
      auto key = std::make_pair(k.of[0][i], k.of[1][i]);
      auto [it, fresh] = sig_id.emplace(key, static_cast<int>(sig_keys.size()));
      if (fresh) {
        sig_keys.push_back(key);
        sig_first.push_back(i);
      }
      sig_of[i] = it->second;
    }
    const int S = static_cast<int>(sig_keys.size());
    auto rel = [&](int s1, int s2) { return related.count(code(sig_keys[s1].first, sig_keys[s2].second)) > 0; };
    std::vector<std::vector<int>> by_k0(k.rep[0].size()), by_k1(K1);
    for (int g = 0; g < S; ++g) {
      by_k0[sig_keys[g].first].push_back(g);
      by_k1[sig_keys[g].second].push_back(g);
      if (!rel(g, g))
        congruence_error("equivalence is not reflexive on " + text(sig_first[g]));
    }
    UnionFind uf(S);
    std::vector<std::pair<int, int>> edges;
    for (std::uint64_t c : related) {
      int a = static_cast<int>(c / K1), b = static_cast<int>(c % K1);
      for (int s1 : by_k0[a])
        for (int s2 : by_k1[b]) {
          if (!rel(s2, s1))
            congruence_error("equivalence is not symmetric: " + text(sig_first[s1]) + " ~ " +
                             text(sig_first[s2]) + " but not conversely");
          edges.emplace_back(s1, s2);
          uf.unite(s1, s2);
        }
    }
    std::map<int, long> edge_count, size;
    for (auto [a, b] : edges) ++edge_count[uf.find(a)];
    for (int g = 0; g < S; ++g) ++size[uf.find(g)];
    for (auto [root, sz] : size) {
      if (edge_count[root] == sz * sz) continue;
      for (int a = 0; a < S; ++a)
        for (int b = 0; b < S; ++b)
          if (uf.find(a) == root && uf.find(b) == root && !rel(a, b))
            congruence_error("equivalence is not transitive: " + text(sig_first[a]) + " and " +
                             text(sig_first[b]) + " are linked but not equivalent");
    }
    std::map<int, int> class_id;
    for (int i = 0; i < T; ++i) {
      auto [it, fresh] = class_id.emplace(uf.find(sig_of[i]), class_count);
      if (fresh) ++class_count;
      class_of[i] = it->second;
    }
  }

  std::vector<std::vector<int>> members(class_count);
  for (int i = 0; i < T; ++i) members[class_of[i]].push_back(i);
  std::vector<std::string> names;
  for (int c = 0; c < class_count; ++c) names.push_back(text(members[c][0]));

  // Relations.
  std::vector<std::vector<Tuple>> rels(psi_.target.size());
  for (std::size_t r = 0; r < psi_.target.size(); ++r) {
    const Split& sp = *relations_[r];
    const int a = sp.blocks;
    Keys k = compute_keys(sp, s, tuples);
    std::vector<std::vector<std::vector<int>>> class_keys(a, std::vector<std::vector<int>>(class_count));
    std::vector<std::vector<std::vector<int>>> key_classes(a);
    for (int b = 0; b < a; ++b) {
      key_classes[b].resize(k.rep[b].size());
      for (int c = 0; c < class_count; ++c) {
        std::set<int> ids;
        for (int i : members[c]) ids.insert(k.of[b][i]);
        class_keys[b][c].assign(ids.begin(), ids.end());
        for (int id : ids) key_classes[b][id].push_back(c);
      }
    }
    std::set<std::vector<int>> true_keys, candidates;
    std::vector<int> env(a * w);
    for (const auto& dj : sp.disjuncts) {
      std::vector<std::vector<int>> A;
      for (int b = 0; b < a; ++b) A.push_back(admissible(k, b, dj.required[b]));
      std::vector<int> combo(a);
      auto rec = [&](auto&& self, int b) -> void {
        if (b == a) {
          if (true_keys.count(combo)) return;
          if (!dj.whole.eval(s, env)) return;
          true_keys.insert(combo);
          std::vector<int> ct(a);
          auto spread = [&](auto&& again, int q) -> void {
            if (q == a) {
              candidates.insert(ct);
              return;
            }
            for (int c : key_classes[q][combo[q]]) {
              ct[q] = c;
              again(again, q + 1);
            }
          };
          spread(spread, 0);
          return;
        }
        for (int id : A[b]) {
          combo[b] = id;
          const auto& t = tuples[k.rep[b][id]];
          std::copy(t.begin(), t.end(), env.begin() + b * w);
          self(self, b + 1);
        }
      };
      rec(rec, 0);
    }
    for (const auto& ct : candidates) {
      std::vector<int> combo(a);
      auto check = [&](auto&& self, int b) -> void {
        if (b == a) {
          if (!true_keys.count(combo)) {
            std::string who;
            for (int q = 0; q < a; ++q) who += (q ? " " : "") + names[ct[q]];
            congruence_error("formula for " + psi_.target[r].name +
                             " is not compatible with the equivalence on " + who);
          }
          return;
        }
        for (int id : class_keys[b][ct[b]]) {
          combo[b] = id;
          self(self, b + 1);
        }
      };
      check(check, 0);
      rels[r].push_back(Tuple(ct.begin(), ct.end()));
    }
    const RelationSymbol& sym = psi_.target[r];
    if (sym.arity == 2) {
      std::set<Tuple> present(rels[r].begin(), rels[r].end());
      for (const auto& t : rels[r]) {
        if ((sym.symmetric || sym.irreflexive) && t[0] == t[1])
          throw Error(ErrorCode::InvalidStructure,
                      "formula for " + sym.name + " yields a loop at " + names[t[0]]);
        if (sym.symmetric && !present.count(Tuple{t[1], t[0]}))
          throw Error(ErrorCode::InvalidStructure, "formula for " + sym.name +
                                                       " is not symmetric on " + names[t[0]] +
                                                       " " + names[t[1]]);
      }
    }
  }

  Evaluation ev;
  ev.structure = Structure(psi_.target, names, std::move(rels));
  ev.representatives.resize(class_count);
  ev.classes.resize(class_count);
  for (int c = 0; c < class_count; ++c) {
    const int at = ev.structure.require(names[c]);
    ev.representatives[at] = tuples[members[c][0]];
    for (int i : members[c]) ev.classes[at].push_back(tuples[i]);
  }
  return ev;
}

Evaluation eval_interpretation_detailed(const QfInterpretation& psi, const Structure& s) {
  return InterpretationEvaluator(psi).run(s);
}

Structure eval_interpretation(const QfInterpretation& psi, const Structure& s) {
  return InterpretationEvaluator(psi).run(s).structure;
}

// ---------------------------------------------------------------- inverse substitution

namespace {

// Replaces copy variables by copy numbers in a quantifier-free formula and
// folds equalities between two numbers.
Formula bind_copies(const Formula& f, const std::map<std::string, int>& copy) {
  if (copy.empty()) return f;
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom:
    case FormulaKind::Equal: {
      auto node = std::make_shared<FormulaNode>(*f);
      for (auto& t : node->terms)
        if (!t.is_constant())
          if (auto it = copy.find(t.var); it != copy.end()) t = Term::constant(it->second);
      if (f->kind == FormulaKind::Equal && node->terms[0].is_constant() &&
          node->terms[1].is_constant())
        return node->terms[0] == node->terms[1] ? f_true() : f_false();
      return node;
    }
    default: {
      auto node = std::make_shared<FormulaNode>(*f);
      for (auto& c : node->children) c = bind_copies(c, copy);
      return node;
    }
  }
}

}  // namespace

Formula inverse_substitute(const QfInterpretation& psi_in, const Formula& phi_star) {
  QfInterpretation psi = psi_in;
  normalize(psi);
  check_schema(phi_star, psi.target);
  const int d = psi.dimension;
  const bool copying = psi.copies > 1;
  auto block = [&](const std::string& v) {
    std::vector<std::string> out;
    for (int p = 1; p <= d; ++p) out.push_back(v + "_" + std::to_string(p));
    return out;
  };
  // copy_of[v] is the copy number chosen for target variable v.
  std::map<std::string, int> copy_of;
  auto instantiate = [&](const Formula& f, const std::vector<Term>& args) {
    std::map<std::string, std::string> names;
    std::map<std::string, int> copies;
    for (std::size_t b = 0; b < args.size(); ++b) {
      if (args[b].is_constant())
        throw Error(ErrorCode::BadParameters, "target formula uses a constant");
      auto vs = block(args[b].var);
      for (int p = 0; p < d; ++p) names[psi.blocks[b][p]] = vs[p];
      if (copying) copies[psi.blocks[b][d]] = copy_of.at(args[b].var);
    }
    return rename_free(bind_copies(f, copies), names);
  };
  const bool trivial_universe = psi.universe->kind == FormulaKind::True;
  auto go = [&](auto&& self, const Formula& f) -> Formula {
    switch (f->kind) {
      case FormulaKind::True:
      case FormulaKind::False: return f;
      case FormulaKind::Atom:
        return instantiate(psi.relations[*psi.target.find(f->name)], f->terms);
      case FormulaKind::Equal: {
        if (psi.equivalence) return instantiate(psi.equivalence, f->terms);
        if (f->terms[0].is_constant() || f->terms[1].is_constant())
          throw Error(ErrorCode::BadParameters, "target formula uses a constant");
        if (copying && copy_of.at(f->terms[0].var) != copy_of.at(f->terms[1].var))
          return f_false();
        auto a = block(f->terms[0].var), b = block(f->terms[1].var);
        std::vector<Formula> eq;
        for (int p = 0; p < d; ++p) eq.push_back(equal(a[p], b[p]));
        return conj(eq);
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        // A chain of like quantifiers shares one block; each assignment of
        // copy numbers to the chain gives one disjunct (conjunct).
        const bool all = f->kind == FormulaKind::Forall;
        std::vector<std::string> chain;
        Formula inner = f;
        while (inner->kind == f->kind &&
               std::find(chain.begin(), chain.end(), inner->name) == chain.end()) {
          chain.push_back(inner->name);
          inner = inner->children[0];
        }
        std::map<std::string, int> saved;
        for (const auto& v : chain)
          if (auto it = copy_of.find(v); it != copy_of.end()) saved[v] = it->second;
        std::vector<Formula> parts;
        std::vector<int> pick(chain.size(), 1);
        while (true) {
          for (std::size_t i = 0; i < chain.size(); ++i) copy_of[chain[i]] = pick[i];
          Formula body = self(self, inner);
          if (!trivial_universe) {
            std::vector<Formula> guards;
            for (const auto& v : chain)
              guards.push_back(instantiate(psi.universe, {Term::variable(v)}));
            body = all ? implies(conj(guards), body) : conj({conj(guards), body});
          }
          parts.push_back(body);
          std::size_t i = 0;
          while (i < pick.size() && pick[i] == psi.copies) pick[i++] = 1;
          if (i == pick.size()) break;
          ++pick[i];
        }
        for (const auto& v : chain) {
          if (auto it = saved.find(v); it != saved.end()) copy_of[v] = it->second;
          else copy_of.erase(v);
        }
        Formula body = parts.size() == 1 ? parts[0] : all ? conj(parts) : disj(parts);
        for (auto v = chain.rbegin(); v != chain.rend(); ++v)
          body = all ? forall(block(*v), body) : exists(block(*v), body);
        return body;
      }
      default: {
        auto node = std::make_shared<FormulaNode>(*f);
        for (auto& c : node->children) c = self(self, c);
        return node;
      }
    }
  };
  return go(go, phi_star);
}

// ---------------------------------------------------------------- standard interpretations

namespace interpretations {

QfInterpretation identity(const Schema& schema) {
  QfInterpretation psi;
  psi.source = psi.target = schema;
  psi.universe = f_true();
  int blocks = 1;
  for (const auto& sym : schema.symbols()) blocks = std::max(blocks, sym.arity);
  psi.blocks = default_blocks(blocks, 1, 1);
  for (const auto& sym : schema.symbols()) {
    std::vector<std::string> vars;
    for (int b = 0; b < sym.arity; ++b) vars.push_back(psi.blocks[b][0]);
    psi.relations.push_back(atom(sym.name, vars));
  }
  normalize(psi);
  return psi;
}

QfInterpretation complement(const Schema& schema) {
  auto e = schema.find("E");
  if (!e || schema[*e].arity != 2)
    throw Error(ErrorCode::SchemaMismatch, "complement needs a binary symbol E");
  QfInterpretation psi;
  psi.source = schema;
  psi.target = Schema::undirected_graph();
  psi.universe = f_true();
  psi.blocks = default_blocks(2, 1, 1);
  psi.relations.push_back(conj({negate(atom("E", std::vector<std::string>{"x", "y"})), not_equal("x", "y")}));
  normalize(psi);
  return psi;
}

}  // namespace interpretations

}  // namespace redukt
