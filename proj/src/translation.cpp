#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "redukt/interpretation.hpp"

namespace redukt {

namespace {

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

// Every tuple of `from` maps into `to`, and the image carries no other tuples.
bool induced_embedding(const Structure& from, const Structure& to, const std::vector<int>& map) {
  std::vector<bool> in_image(to.size(), false);
  for (int v : map) in_image[v] = true;
  for (std::size_t r = 0; r < from.schema().size(); ++r) {
    for (std::size_t q = 0; q < from.tuple_count(r); ++q) {
      Tuple t;
      for (int e : from.tuple(r, q)) t.push_back(map[e]);
      if (!to.holds(r, t)) return false;
    }
    std::size_t inside = 0;
    for (std::size_t q = 0; q < to.tuple_count(r); ++q) {
      auto t = to.tuple(r, q);
      inside += std::all_of(t.begin(), t.end(), [&](int e) { return in_image[e]; });
    }
    if (inside != from.tuple_count(r)) return false;
  }
  return true;
}

// Gadget element e of instruction i stands for fresh element c of
// instruction inst, placed on the type positions P (1-based, into i's type).
struct Denotation {
  int inst = -1;
  std::vector<int> positions;
  int c = -1;
};

class CookbookTranslator {
 public:
  explicit CookbookTranslator(const CookbookReduction& rho) : rho_(rho), ins_(rho.instructions()) {
    if (!validate_wellformed(rho).ok())
      throw Error(ErrorCode::NotWellFormed, "reduction is not well-formed");
    k_ = rho.arity();
    dim_ = k_ + 1;
    ell_ = std::max(1, rho.max_gadget_size());
    for (std::size_t i = 0; i < ins_.size(); ++i) {
      auts_.push_back(automorphisms(ins_[i].type().structure()));
      lifts_.push_back(find_lift(static_cast<int>(i)));
    }
    for (std::size_t i = 0; i < ins_.size(); ++i) den_.push_back(denotations(static_cast<int>(i)));
  }

  QfInterpretation build() {
    QfInterpretation psi;
    psi.source = rho_.source_schema();
    psi.target = rho_.target_schema();
    psi.dimension = dim_;
    psi.copies = ell_;
    int blocks = 2;
    for (const auto& sym : psi.target.symbols()) blocks = std::max(blocks, sym.arity);
    psi.blocks = default_blocks(blocks, dim_, ell_);
    blocks_ = psi.blocks;

    std::vector<Formula> u;
    for (std::size_t i = 0; i < ins_.size(); ++i) {
      const int g = ins_[i].gadget().size();
      if (g == 0) continue;
      std::vector<Formula> copies;
      for (int e = 0; e < g; ++e) copies.push_back(copy_is(0, e + 1));
      u.push_back(conj({encodes(0, static_cast<int>(i)), disj(copies)}));
    }
    psi.universe = disj(u);
    psi.equivalence = equivalence();
    for (std::size_t r = 0; r < psi.target.size(); ++r) psi.relations.push_back(relation(r));
    normalize(psi);
    return psi;
  }

 private:
  int index_of(const Instruction* in) const { return static_cast<int>(in - ins_.data()); }

  // Homomorphism from Aut(type) to gadget automorphisms fixing tags of
  // inherited elements.
  std::vector<std::vector<int>> find_lift(int i) {
    const auto& auts = auts_[i];
    const int G = static_cast<int>(auts.size());
    std::map<std::vector<int>, int> index;
    for (int a = 0; a < G; ++a) index[auts[a]] = a;
    std::vector<std::vector<int>> product(G, std::vector<int>(G));
    for (int a = 0; a < G; ++a)
      for (int b = 0; b < G; ++b) product[a][b] = index.at(compose(auts[a], auts[b]));
    std::vector<std::vector<std::vector<int>>> options(G);
    for (int a = 0; a < G; ++a) options[a] = gadget_lifts(ins_[i], auts[a]);
    std::vector<std::vector<int>> h(G);
    auto consistent = [&](int upto) {
      for (int a = 0; a <= upto; ++a)
        for (int b = 0; b <= upto; ++b) {
          int c = product[a][b];
          if (c <= upto && h[c] != compose(h[a], h[b])) return false;
        }
      return true;
    };
    auto rec = [&](auto&& self, int a) -> bool {
      if (a == G) return true;
      for (const auto& cand : options[a]) {
        h[a] = cand;
        if (consistent(a) && self(self, a + 1)) return true;
      }
      h[a].clear();
      return false;
    };
    if (!rec(rec, 0))
      throw Error(ErrorCode::LiftFailure,
                  "gadget automorphisms admit no homomorphic lift for instruction " +
                      std::to_string(i));
    return h;
  }

  std::vector<Denotation> denotations(int i) {
    const Instruction& in = ins_[i];
    const Structure& t = in.type().structure();
    const int m = in.arity();
    std::vector<Denotation> out(in.gadget().size());
    for (int e = 0; e < in.gadget().size(); ++e) {
      const Tag& tag = in.tags()[e];
      if (in.is_fresh(e)) {
        out[e].inst = i;
        out[e].positions.resize(m);
        std::iota(out[e].positions.begin(), out[e].positions.end(), 1);
        out[e].c = e;
        continue;
      }
      std::vector<int> a;
      for (int b : tag.base) a.push_back(b - 1);
      auto occ = iso_type_occurrence(t, a, IsoChoice::LexLeast, k_);
      const Instruction* sub = rho_.find(occ.type);
      const int mc = static_cast<int>(a.size());
      bool found = false;
      for (const auto& beta : automorphisms(occ.type.structure())) {
        std::vector<int> pi(mc);
        for (int p = 0; p < mc; ++p) pi[p] = occ.iso[beta[p]];
        std::vector<int> map(sub->gadget().size(), -1);
        bool ok = true;
        for (int f = 0; f < sub->gadget().size() && ok; ++f) {
          Tag st = sub->tags()[f];
          for (int& b : st.base) b = pi[b - 1] + 1;
          std::sort(st.base.begin(), st.base.end());
          auto g = in.find(st);
          if (!g) ok = false;
          else map[f] = *g;
        }
        if (!ok || !induced_embedding(sub->gadget(), in.gadget(), map)) continue;
        std::vector<int> all(mc);
        std::iota(all.begin(), all.end(), 1);
        out[e].inst = index_of(sub);
        for (int p : pi) out[e].positions.push_back(p + 1);
        out[e].c = *sub->find(Tag{all, tag.copy});
        found = true;
        break;
      }
      if (!found) throw Error(ErrorCode::NotWellFormed, "inherited element has no sub-gadget");
    }
    return out;
  }

  // ---- formula pieces, cached so equal pieces share nodes

  const std::vector<std::string>& block(int b) const { return blocks_[b]; }
  const std::string& copy_var(int b) const { return blocks_[b].back(); }

  Formula copy_is(int b, int value) {
    if (ell_ == 1) return f_true();
    auto& f = copy_cache_[{b, value}];
    if (!f) f = equal(Term::variable(copy_var(b)), Term::constant(value));
    return f;
  }

  Formula set_encoding(int b, int m) {
    auto& f = psi_cache_[{b, m}];
    if (f) return f;
    const auto& x = block(b);
    std::vector<Formula> parts;
    if (m >= 1) parts.push_back(not_equal(x[m - 1], x[m]));
    for (int i = m; i < k_; ++i) parts.push_back(equal(x[i], x[i + 1]));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) parts.push_back(not_equal(x[i], x[j]));
    return f = conj(parts);
  }

  // Distinctness and the full atomic diagram of a type on the given variables.
  Formula diagram(int i, const std::vector<std::string>& vars) {
    const Structure& t = ins_[i].type().structure();
    const int m = t.size();
    const Schema& sc = t.schema();
    std::vector<Formula> parts;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) parts.push_back(not_equal(vars[p], vars[q]));
    for (std::size_t r = 0; r < sc.size(); ++r) {
      const RelationSymbol& sym = sc[r];
      Tuple tup(sym.arity, 0);
      auto rec = [&](auto&& self, int pos) -> void {
        if (pos == sym.arity) {
          if (sym.arity == 2 && (sym.symmetric || sym.irreflexive) && tup[0] == tup[1]) return;
          if (sym.arity == 2 && sym.symmetric && tup[0] > tup[1]) return;
          std::vector<std::string> args;
          for (int v : tup) args.push_back(vars[v]);
          Formula a = atom(sym.name, args);
          parts.push_back(t.holds(r, tup) ? a : negate(a));
          return;
        }
        for (int v = 0; v < m; ++v) {
          tup[pos] = v;
          self(self, pos + 1);
        }
      };
      rec(rec, 0);
    }
    return conj(parts);
  }

  // psi_m and the type diagram on block b.
  Formula encodes(int b, int i) {
    auto& f = encodes_cache_[{b, i}];
    if (f) return f;
    const int m = ins_[i].arity();
    std::vector<std::string> xs(block(b).begin(), block(b).begin() + m);
    return f = conj({set_encoding(b, m), diagram(i, xs)});
  }

  Formula equivalence() {
    std::vector<Formula> fresh_pairs, other;
    for (std::size_t i1 = 0; i1 < ins_.size(); ++i1)
      for (std::size_t e1 = 0; e1 < den_[i1].size(); ++e1)
        for (std::size_t i2 = 0; i2 < ins_.size(); ++i2)
          for (std::size_t e2 = 0; e2 < den_[i2].size(); ++e2) {
            const Denotation &d1 = den_[i1][e1], &d2 = den_[i2][e2];
            if (d1.inst != d2.inst) continue;
            const int C = d1.inst;
            for (std::size_t a = 0; a < auts_[C].size(); ++a) {
              if (lifts_[C][a][d2.c] != d1.c) continue;
              std::vector<Formula> parts = {encodes(0, static_cast<int>(i1)),
                                            copy_is(0, static_cast<int>(e1) + 1),
                                            encodes(1, static_cast<int>(i2)),
                                            copy_is(1, static_cast<int>(e2) + 1)};
              const auto& alpha = auts_[C][a];
              for (std::size_t q = 0; q < alpha.size(); ++q)
                parts.push_back(equal(block(0)[d1.positions[alpha[q]] - 1],
                                      block(1)[d2.positions[q] - 1]));
              const bool both_fresh = ins_[i1].is_fresh(static_cast<int>(e1)) &&
                                      ins_[i2].is_fresh(static_cast<int>(e2));
              (both_fresh ? fresh_pairs : other).push_back(conj(parts));
            }
          }
    fresh_pairs.insert(fresh_pairs.end(), other.begin(), other.end());
    return disj(fresh_pairs);
  }

  struct Choice {
    int inst, element, aut;
  };

  Formula relation(std::size_t r) {
    std::vector<Formula> out;
    for (std::size_t bi = 0; bi < ins_.size(); ++bi) {
      const Instruction& B = ins_[bi];
      const int mb = B.arity();
      const Structure& g = B.gadget();
      for (std::size_t q = 0; q < g.tuple_count(r); ++q) {
        auto tup = g.tuple(r, q);
        std::set<int> span;
        for (int e : tup) span.insert(B.tags()[e].base.begin(), B.tags()[e].base.end());
        if (static_cast<int>(span.size()) != mb) continue;
        const int arity = static_cast<int>(tup.size());
        // Per argument: encodings denoting the same fresh element.
        std::vector<std::vector<Choice>> options(arity);
        for (int p = 0; p < arity; ++p) {
          const Denotation& target = den_[bi][tup[p]];
          for (std::size_t i = 0; i < ins_.size(); ++i)
            for (std::size_t e = 0; e < den_[i].size(); ++e) {
              const Denotation& d = den_[i][e];
              if (d.inst != target.inst) continue;
              for (std::size_t a = 0; a < auts_[d.inst].size(); ++a)
                if (lifts_[d.inst][a][d.c] == target.c)
                  options[p].push_back({static_cast<int>(i), static_cast<int>(e), static_cast<int>(a)});
            }
        }
        std::vector<Choice> pick(arity);
        auto rec = [&](auto&& self, int p) -> void {
          if (p < arity) {
            for (const auto& c : options[p]) {
              pick[p] = c;
              self(self, p + 1);
            }
            return;
          }
          std::vector<Formula> parts;
          std::vector<std::string> z(mb);
          std::vector<Formula> links;
          for (int a = 0; a < arity; ++a) {
            const Choice& c = pick[a];
            parts.push_back(encodes(a, c.inst));
            parts.push_back(copy_is(a, c.element + 1));
            const Denotation& target = den_[bi][tup[a]];
            const Denotation& mine = den_[c.inst][c.element];
            const auto& alpha = auts_[mine.inst][c.aut];
            for (std::size_t qq = 0; qq < alpha.size(); ++qq) {
              const int zp = target.positions[alpha[qq]] - 1;
              const std::string& v = block(a)[mine.positions[qq] - 1];
              if (z[zp].empty()) z[zp] = v;
              else links.push_back(equal(z[zp], v));
            }
          }
          parts.insert(parts.end(), links.begin(), links.end());
          parts.push_back(diagram(static_cast<int>(bi), z));
          out.push_back(conj(parts));
        };
        rec(rec, 0);
      }
    }
    return disj(out);
  }

  const CookbookReduction& rho_;
  const std::vector<Instruction>& ins_;
  int k_ = 0, dim_ = 1, ell_ = 1;
  std::vector<std::vector<std::vector<int>>> auts_, lifts_;
  std::vector<std::vector<Denotation>> den_;
  std::vector<std::vector<std::string>> blocks_;
  std::map<std::pair<int, int>, Formula> copy_cache_, psi_cache_, encodes_cache_;
};

}  // namespace

// ---------------------------------------------------------------- constant elimination

QfInterpretation eliminate_copy_constants(const QfInterpretation& in) {
  QfInterpretation psi = in;
  normalize(psi);
  if (psi.copies == 1) return psi;
  const int ell = std::max(psi.copies, 3);
  const int d = psi.dimension;
  QfInterpretation out;
  out.source = psi.source;
  out.target = psi.target;
  out.dimension = d + ell;
  out.copies = 1;
  out.blocks = default_blocks(static_cast<int>(psi.blocks.size()), out.dimension, 1);

  std::map<std::string, int> copy_block;
  std::map<std::string, std::string> rename;
  for (std::size_t b = 0; b < psi.blocks.size(); ++b) {
    for (int p = 0; p < d; ++p) rename[psi.blocks[b][p]] = out.blocks[b][p];
    copy_block[psi.blocks[b][d]] = static_cast<int>(b);
  }
  std::map<std::pair<int, int>, Formula> cache;
  // The constant i is any tuple whose i-th entry is the only one that differs.
  auto constant = [&](int b, int i) {
    auto& f = cache[{b, i}];
    if (f) return f;
    const auto& w = out.blocks[b];
    auto at = [&](int p) { return w[d + p - 1]; };
    const int p0 = i != 1 ? 1 : 2;
    std::vector<Formula> parts;
    for (int p = 1; p <= ell; ++p)
      if (p != i && p != p0) parts.push_back(equal(at(p), at(p0)));
    parts.push_back(not_equal(at(i), at(p0)));
    return f = conj(parts);
  };
  auto same_copy = [&](int b1, int b2) {
    std::vector<Formula> alts;
    for (int i = 1; i <= psi.copies; ++i) alts.push_back(conj({constant(b1, i), constant(b2, i)}));
    return disj(alts);
  };
  auto go = [&](auto&& self, const Formula& f) -> Formula {
    switch (f->kind) {
      case FormulaKind::True:
      case FormulaKind::False: return f;
      case FormulaKind::Atom:
        for (const auto& t : f->terms)
          if (!t.is_constant() && copy_block.count(t.var))
            throw Error(ErrorCode::BadParameters, "copy variable used inside a relation atom");
        return rename_free(f, rename);
      case FormulaKind::Equal: {
        const Term &a = f->terms[0], &b = f->terms[1];
        const bool ca = !a.is_constant() && copy_block.count(a.var);
        const bool cb = !b.is_constant() && copy_block.count(b.var);
        if (ca && cb) return same_copy(copy_block[a.var], copy_block[b.var]);
        if (ca || cb) {
          const Term& var = ca ? a : b;
          const Term& other = ca ? b : a;
          if (!other.is_constant())
            throw Error(ErrorCode::BadParameters, "copy variable compared with an element");
          if (other.value < 1 || other.value > psi.copies) return f_false();
          return constant(copy_block[var.var], other.value);
        }
        return rename_free(f, rename);
      }
      default: {
        auto node = std::make_shared<FormulaNode>(*f);
        for (auto& c : node->children) c = self(self, c);
        return node;
      }
    }
  };
  std::vector<Formula> any_copy;
  for (int i = 1; i <= psi.copies; ++i) any_copy.push_back(constant(0, i));
  out.universe = conj({go(go, psi.universe), disj(any_copy)});
  if (psi.equivalence) {
    out.equivalence = go(go, psi.equivalence);
  } else {
    std::vector<Formula> eq;
    for (int p = 0; p < d; ++p) eq.push_back(equal(out.blocks[0][p], out.blocks[1][p]));
    eq.push_back(same_copy(0, 1));
    out.equivalence = conj(eq);
  }
  for (const auto& f : psi.relations) out.relations.push_back(go(go, f));
  normalize(out);
  return out;
}

QfInterpretation cookbook_to_qf(const CookbookReduction& rho, QfStage stage) {
  QfInterpretation copying = CookbookTranslator(rho).build();
  return stage == QfStage::Copying ? copying : eliminate_copy_constants(copying);
}

// ---------------------------------------------------------------- qf_to_cookbook

std::vector<Structure> ordered_structures(const Schema& schema, int n) {
  auto lt = schema.find("<");
  if (!lt || schema[*lt].arity != 2)
    throw Error(ErrorCode::MissingOrder, "schema has no binary order symbol <");
  std::vector<RelationSymbol> rest;
  std::vector<std::size_t> where;
  for (std::size_t r = 0; r < schema.size(); ++r)
    if (r != *lt) {
      rest.push_back(schema[r]);
      where.push_back(r);
    }
  std::vector<Tuple> order;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) order.push_back({a, b});
  std::vector<Structure> out;
  for_each_structure(Schema(rest), n, EnumerateOptions{}, [&](const Structure& s) {
    std::vector<std::vector<Tuple>> rels(schema.size());
    rels[*lt] = order;
    for (std::size_t r = 0; r < where.size(); ++r) rels[where[r]] = s.tuples(r);
    out.push_back(Structure::numbered(schema, n, std::move(rels)));
    return true;
  });
  return out;
}

CookbookReduction qf_to_cookbook(const QfInterpretation& psi_in) {
  InterpretationEvaluator ev(psi_in);
  const QfInterpretation& psi = ev.interpretation();
  if (!psi.source.find("<")) throw Error(ErrorCode::MissingOrder, "source schema has no <");
  const int d = psi.dimension;
  int r = 1;
  for (const auto& sym : psi.target.symbols()) r = std::max(r, sym.arity);
  const int max_m = d * r;
  if (max_m > kMaxReductionArity)
    throw Error(ErrorCode::ArityLimitExceeded,
                "types up to " + std::to_string(max_m) + " elements exceed cap " +
                    std::to_string(kMaxReductionArity));

  std::vector<Instruction> ins;
  for (int m = 0; m <= max_m; ++m)
    for (const Structure& t : ordered_structures(psi.source, m)) {
      Evaluation e = ev.run(t);
      const Structure& g = e.structure;
      auto set_of = [&](const std::vector<int>& tuple) {
        std::set<int> s(tuple.begin(), tuple.begin() + d);
        return std::vector<int>(s.begin(), s.end());
      };
      if (m <= 2 * d)
        for (std::size_t c = 0; c < e.classes.size(); ++c)
          for (const auto& member : e.classes[c])
            if (set_of(member) != set_of(e.representatives[c]))
              throw Error(ErrorCode::NotSetRespecting,
                          "tuples " + json(member).dump() + " and " +
                              json(e.representatives[c]).dump() + " over " + json(t.universe()).dump() +
                              " are equivalent but use different elements");
      // Number classes with equal element sets in representative order.
      std::vector<int> order(g.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return e.representatives[a] < e.representatives[b];
      });
      std::vector<Tag> tags(g.size());
      std::map<std::vector<int>, int> seen;
      int fresh = 0;
      for (int c : order) {
        Tag tag;
        for (int v : set_of(e.representatives[c])) tag.base.push_back(v + 1);
        tag.copy = ++seen[tag.base];
        fresh += static_cast<int>(tag.base.size()) == m;
        tags[c] = std::move(tag);
      }
      bool spanning = false;
      std::vector<std::vector<TagTuple>> rels(psi.target.size());
      for (std::size_t rr = 0; rr < psi.target.size(); ++rr)
        for (const auto& tup : g.tuples(rr)) {
          std::set<int> span;
          TagTuple tt;
          for (int e2 : tup) {
            span.insert(tags[e2].base.begin(), tags[e2].base.end());
            tt.push_back(tags[e2]);
          }
          spanning |= static_cast<int>(span.size()) == m;
          rels[rr].push_back(std::move(tt));
        }
      if (fresh == 0 && !spanning) continue;
      ins.push_back(make_instruction(t, psi.target, tags, rels));
    }
  return CookbookReduction(psi.source, psi.target, std::move(ins));
}

}  // namespace redukt
