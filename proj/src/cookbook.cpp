#include "redukt/cookbook.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace redukt {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::Malformed, what); }

std::string set_text(const std::vector<int>& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + "}";
}

std::vector<int> iota_vec(int n, int start = 0) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), start);
  return v;
}

// Calls visit(subset) for every m-subset of 0..n-1 in lexicographic order.
template <class F>
void for_each_subset(int n, int m, F&& visit) {
  if (m > n) return;
  std::vector<int> c = iota_vec(m);
  while (true) {
    visit(c);
    int i = m - 1;
    while (i >= 0 && c[i] == n - m + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  }
}

// 1-based base -> 0-based element list.
std::vector<int> zero_based(const std::vector<int>& base) {
  std::vector<int> v;
  v.reserve(base.size());
  for (int b : base) v.push_back(b - 1);
  return v;
}

std::vector<int> image_base(const std::vector<int>& base, const std::vector<int>& pi) {
  std::vector<int> v;
  v.reserve(base.size());
  for (int b : base) v.push_back(pi[b - 1] + 1);
  std::sort(v.begin(), v.end());
  return v;
}

// True iff `map` is an injective map from `from` into `to` that preserves
// and reflects every relation on its image.
bool is_embedding(const Structure& from, const Structure& to, const std::vector<int>& map) {
  std::vector<int> inv(to.size(), -1);
  for (int e = 0; e < from.size(); ++e) {
    if (map[e] < 0 || inv[map[e]] >= 0) return false;
    inv[map[e]] = e;
  }
  const int g = from.size();
  for (std::size_t r = 0; r < from.schema().size(); ++r) {
    const int ar = from.schema()[r].arity;
    std::vector<int> idx(ar, 0), a(ar), b(ar);
    if (ar == 0) {
      if (from.holds(r, std::span<const int>()) != to.holds(r, std::span<const int>()))
        return false;
      continue;
    }
    if (g == 0) continue;
    while (true) {
      for (int i = 0; i < ar; ++i) {
        a[i] = idx[i];
        b[i] = map[idx[i]];
      }
      if (from.holds(r, a) != to.holds(r, b)) return false;
      int i = ar - 1;
      while (i >= 0 && ++idx[i] == g) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  return true;
}

std::string applied_key(const std::vector<int>& base, int copy) {
  std::string k;
  for (int b : base) k += std::to_string(b) + ",";
  return k + "#" + std::to_string(copy);
}

}  // namespace

// ---------------------------------------------------------------- tags

json to_json(const Tag& t) { return json::array({t.base, t.copy}); }

std::string tag_name(const Tag& t) { return to_json(t).dump(); }

Tag tag_from_json(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_array() || !v[1].is_number_integer())
    malformed("tagged element must be [[positions...], copy]");
  Tag t;
  for (const auto& x : v[0]) {
    if (!x.is_number_integer()) malformed("tag positions must be integers");
    t.base.push_back(x.get<int>());
  }
  std::sort(t.base.begin(), t.base.end());
  if (std::adjacent_find(t.base.begin(), t.base.end()) != t.base.end())
    malformed("tag positions repeat");
  t.copy = v[1].get<int>();
  if (t.copy < 1) malformed("copy index must be positive");
  return t;
}

// ---------------------------------------------------------------- instructions

Instruction::Instruction(IsoType type, const Schema& target, std::vector<Tag> elements,
                         const std::vector<std::vector<TagTuple>>& relations)
    : type_(std::move(type)) {
  const int k = type_.arity();
  for (auto& t : elements) {
    std::sort(t.base.begin(), t.base.end());
    if (std::adjacent_find(t.base.begin(), t.base.end()) != t.base.end() ||
        (!t.base.empty() && (t.base.front() < 1 || t.base.back() > k)))
      throw Error(ErrorCode::InvalidStructure,
                  "tag base " + set_text(t.base) + " outside 1.." + std::to_string(k));
    if (t.copy < 1) throw Error(ErrorCode::InvalidStructure, "copy index must be positive");
  }
  std::map<Tag, int> pos;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!pos.emplace(elements[i], static_cast<int>(i)).second)
      throw Error(ErrorCode::InvalidStructure, "duplicate gadget element " + tag_name(elements[i]));
    names.push_back(tag_name(elements[i]));
  }
  if (relations.size() > target.size())
    throw Error(ErrorCode::SchemaMismatch, "more relations than target symbols");
  std::vector<std::vector<Tuple>> rels(target.size());
  for (std::size_t r = 0; r < relations.size(); ++r) {
    for (const auto& tt : relations[r]) {
      Tuple t;
      for (auto tag : tt) {
        std::sort(tag.base.begin(), tag.base.end());
        auto it = pos.find(tag);
        if (it == pos.end())
          throw Error(ErrorCode::UnknownElement, "gadget tuple uses unknown " + tag_name(tag));
        t.push_back(it->second);
      }
      rels[r].push_back(std::move(t));
    }
  }
  gadget_ = Structure(target, names, std::move(rels));
  tags_.resize(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    tags_[gadget_.require(names[i])] = elements[i];
}

std::optional<int> Instruction::find(const Tag& t) const {
  return gadget_.index_of(tag_name(t));
}

bool Instruction::is_fresh(int element) const {
  return static_cast<int>(tags_[element].base.size()) == arity();
}

int Instruction::fresh() const {
  int f = 0;
  for (int e = 0; e < gadget_.size(); ++e) f += is_fresh(e);
  return f;
}

Instruction make_instruction(const Structure& type, const Schema& target, std::vector<Tag> elements,
                             const std::vector<std::vector<TagTuple>>& relations) {
  auto lab = canonical_labeling(type);
  std::vector<int> pos(type.size());
  for (std::size_t p = 0; p < lab.first.size(); ++p) pos[lab.first[p]] = static_cast<int>(p);
  auto remap = [&](Tag t) {
    for (int& b : t.base) {
      if (b < 1 || b > type.size())
        throw Error(ErrorCode::InvalidStructure, "tag base outside the type universe");
      b = pos[b - 1] + 1;
    }
    std::sort(t.base.begin(), t.base.end());
    return t;
  };
  for (auto& t : elements) t = remap(t);
  auto rels = relations;
  for (auto& rel : rels)
    for (auto& tt : rel)
      for (auto& t : tt) t = remap(t);
  IsoType canon = IsoType::adopt(relabel_positions(type, lab.first), lab.code);
  return Instruction(std::move(canon), target, std::move(elements), rels);
}

// ---------------------------------------------------------------- reductions

CookbookReduction::CookbookReduction(Schema source, Schema target,
                                     std::vector<Instruction> instructions)
    : source_(std::move(source)), target_(std::move(target)),
      instructions_(std::move(instructions)) {
  std::sort(instructions_.begin(), instructions_.end(),
            [](const Instruction& a, const Instruction& b) { return a.type() < b.type(); });
  for (std::size_t i = 0; i < instructions_.size(); ++i) {
    const auto& in = instructions_[i];
    if (!(in.type().structure().schema() == source_))
      throw Error(ErrorCode::SchemaMismatch, "instruction type is not over the source schema");
    if (!(in.gadget().schema() == target_))
      throw Error(ErrorCode::SchemaMismatch, "gadget is not over the target schema");
    if (in.arity() > kMaxReductionArity)
      throw Error(ErrorCode::ArityLimitExceeded,
                  "instruction type of arity " + std::to_string(in.arity()) + " exceeds cap " +
                      std::to_string(kMaxReductionArity));
    if (!index_.emplace(std::make_pair(in.arity(), in.type().code()), i).second)
      throw Error(ErrorCode::InvalidStructure, "two instructions share a source type");
  }
}

const Instruction* CookbookReduction::find(const IsoType& t) const {
  auto it = index_.find({t.arity(), t.code()});
  return it == index_.end() ? nullptr : &instructions_[it->second];
}

int CookbookReduction::arity() const {
  int a = 0;
  for (const auto& in : instructions_) a = std::max(a, in.arity());
  return a;
}

int CookbookReduction::max_gadget_size() const {
  int a = 0;
  for (const auto& in : instructions_) a = std::max(a, in.gadget().size());
  return a;
}

// ---------------------------------------------------------------- automorphisms and lifts

std::vector<std::vector<int>> automorphisms(const Structure& s) {
  std::vector<std::vector<int>> out;
  for_each_embedding(s, s, [&](const std::vector<int>& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::vector<std::vector<int>> gadget_lifts(const Instruction& inst, const std::vector<int>& alpha,
                                           bool first_only) {
  const Structure& g = inst.gadget();
  const int n = g.size();
  std::vector<int> img(n, -1);
  std::vector<int> fresh;
  for (int e = 0; e < n; ++e) {
    if (inst.is_fresh(e)) {
      fresh.push_back(e);
      continue;
    }
    const Tag& t = inst.tags()[e];
    auto f = inst.find(Tag{image_base(t.base, alpha), t.copy});
    if (!f) return {};
    img[e] = *f;
  }
  std::vector<std::vector<int>> out;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == fresh.size()) {
      for (std::size_t r = 0; r < g.schema().size(); ++r)
        for (std::size_t q = 0; q < g.tuple_count(r); ++q) {
          auto t = g.tuple(r, q);
          Tuple m(t.size());
          for (std::size_t p = 0; p < t.size(); ++p) m[p] = img[t[p]];
          if (!g.holds(r, m)) return true;
        }
      out.push_back(img);
      return !first_only;
    }
    for (int f : fresh) {
      if (used[f]) continue;
      used[f] = true;
      img[fresh[i]] = f;
      bool go = self(self, i + 1);
      used[f] = false;
      img[fresh[i]] = -1;
      if (!go) return false;
    }
    return true;
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------- well-formedness

WellformedReport validate_wellformed(const CookbookReduction& rho) {
  WellformedReport rep;
  const auto& ins = rho.instructions();
  for (std::size_t i = 0; i < ins.size(); ++i) {
    const Instruction& in = ins[i];
    const Structure& t = in.type().structure();
    const Structure& g = in.gadget();
    const int k = in.arity();
    auto add = [&](const char* cond, std::string detail) {
      rep.violations.push_back({cond, i, std::move(detail)});
    };

    // P1
    for (const auto& tag : in.tags())
      for (int j = 1; j < tag.copy; ++j)
        if (!in.find(Tag{tag.base, j}))
          add("P1", tag_name(tag) + " present but " + tag_name(Tag{tag.base, j}) + " missing");

    // P2
    for (const auto& tag : in.tags()) {
      if (static_cast<int>(tag.base.size()) == k) continue;
      const Instruction* sub = rho.find(iso_type(t, zero_based(tag.base), k));
      if (!sub) {
        add("P2", "type of " + set_text(tag.base) + " used by " + tag_name(tag) +
                      " is not in the support");
        continue;
      }
      Tag orig{iota_vec(static_cast<int>(tag.base.size()), 1), tag.copy};
      if (!sub->find(orig))
        add("P2", tag_name(tag) + " has no original " + tag_name(orig));
    }

    // P3
    for (std::size_t r = 0; r < g.schema().size(); ++r)
      for (std::size_t q = 0; q < g.tuple_count(r); ++q) {
        std::set<int> u;
        for (int e : g.tuple(r, q)) u.insert(in.tags()[e].base.begin(), in.tags()[e].base.end());
        if (static_cast<int>(u.size()) == k) continue;
        std::vector<int> a(u.begin(), u.end());
        if (!rho.find(iso_type(t, zero_based(a), k))) {
          std::string tuple_text;
          for (int e : g.tuple(r, q)) tuple_text += (tuple_text.empty() ? "" : " ") + g.name(e);
          add("P3", g.schema()[r].name + "(" + tuple_text + ") spans " + set_text(a) +
                        " whose type is not in the support");
        }
      }

    // P4
    for (int m = 0; m < k; ++m)
      for_each_subset(k, m, [&](const std::vector<int>& a) {
        auto occ = iso_type_occurrence(t, a, IsoChoice::LexLeast, k);
        const Instruction* sub = rho.find(occ.type);
        if (!sub) return;
        bool found = false;
        for (const auto& beta : automorphisms(occ.type.structure())) {
          std::vector<int> pi(m);
          for (int p = 0; p < m; ++p) pi[p] = occ.iso[beta[p]];
          std::vector<int> map(sub->gadget().size(), -1);
          bool ok = true;
          for (int e = 0; e < sub->gadget().size() && ok; ++e) {
            const Tag& st = sub->tags()[e];
            auto f = in.find(Tag{image_base(st.base, pi), st.copy});
            if (!f) ok = false;
            else map[e] = *f;
          }
          if (ok && is_embedding(sub->gadget(), g, map)) {
            found = true;
            break;
          }
        }
        std::vector<int> a1;
        for (int x : a) a1.push_back(x + 1);
        if (!found)
          add("P4", "gadget of the type of " + set_text(a1) + " does not embed");
      });

    // P5 proxy
    for (const auto& alpha : automorphisms(t)) {
      if (!gadget_lifts(in, alpha, true).empty()) continue;
      std::vector<int> a1;
      for (int x : alpha) a1.push_back(x + 1);
      add("P5", "type automorphism " + set_text(a1) + " has no gadget lift");
    }
  }
  return rep;
}

json to_json(const WellformedReport& report, const CookbookReduction& rho) {
  json v = json::array();
  for (const auto& x : report.violations)
    v.push_back({{"condition", x.condition},
                 {"instruction", x.instruction},
                 {"type", to_json(rho.instructions()[x.instruction].type().structure())},
                 {"detail", x.detail}});
  return {{"ok", report.ok()}, {"violations", v}};
}

// ---------------------------------------------------------------- application

std::string applied_name(const Structure& s, const AppliedElement& e) {
  json base = json::array();
  for (int b : e.base) base.push_back(s.name(b));
  return json::array({base, e.copy}).dump();
}

namespace {

struct Occurrence {
  std::vector<int> set;
  const Instruction* inst;
  std::vector<int> iso;
};

}  // namespace

ApplyResult apply_detailed(const CookbookReduction& rho, const Structure& s,
                           const ApplyOptions& options) {
  if (!(s.schema() == rho.source_schema()))
    throw Error(ErrorCode::SchemaMismatch, "structure is not over the source schema");
  const int k = rho.arity();
  const int n = s.size();

  std::vector<Occurrence> occs;
  std::map<std::string, int> ids;
  std::vector<AppliedElement> elems;
  for (int m = 0; m <= std::min(k, n); ++m)
    for_each_subset(n, m, [&](const std::vector<int>& a) {
      auto occ = iso_type_occurrence(s, a, options.choice, k);
      const Instruction* in = rho.find(occ.type);
      if (!in) return;
      for (int e = 0; e < in->gadget().size(); ++e)
        if (in->is_fresh(e)) {
          int c = in->tags()[e].copy;
          ids.emplace(applied_key(a, c), static_cast<int>(elems.size()));
          elems.push_back({a, c});
        }
      occs.push_back({a, in, std::move(occ.iso)});
    });

  auto element_of = [&](const Occurrence& o, const Tag& t) {
    std::vector<int> base;
    for (int b : t.base) base.push_back(o.iso[b - 1]);
    std::sort(base.begin(), base.end());
    auto it = ids.find(applied_key(base, t.copy));
    if (it == ids.end())
      throw Error(ErrorCode::SemanticsViolation,
                  "gadget refers to missing element " + applied_name(s, {base, t.copy}));
    return it->second;
  };

  const Schema& target = rho.target_schema();
  std::vector<std::vector<Tuple>> rels(target.size());
  for (const auto& o : occs) {
    const Structure& g = o.inst->gadget();
    for (std::size_t r = 0; r < target.size(); ++r)
      for (std::size_t q = 0; q < g.tuple_count(r); ++q) {
        Tuple t;
        for (int e : g.tuple(r, q)) t.push_back(element_of(o, o.inst->tags()[e]));
        rels[r].push_back(std::move(t));
      }
  }

  std::vector<std::string> names;
  names.reserve(elems.size());
  for (const auto& e : elems) names.push_back(applied_name(s, e));
  ApplyResult res;
  res.structure = Structure(target, names, std::move(rels));
  res.origin.resize(elems.size());
  std::vector<int> out_index(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out_index[i] = res.structure.require(names[i]);
    res.origin[out_index[i]] = elems[i];
  }
  if (!options.verify) return res;

  const Structure& out = res.structure;
  // S2
  std::map<std::vector<int>, bool> supported;
  for (std::size_t r = 0; r < target.size(); ++r)
    for (std::size_t q = 0; q < out.tuple_count(r); ++q) {
      std::set<int> u;
      for (int e : out.tuple(r, q))
        u.insert(res.origin[e].base.begin(), res.origin[e].base.end());
      std::vector<int> a(u.begin(), u.end());
      auto it = supported.find(a);
      if (it == supported.end()) {
        bool ok = static_cast<int>(a.size()) <= k && rho.find(iso_type(s, a, k)) != nullptr;
        it = supported.emplace(a, ok).first;
      }
      if (!it->second)
        throw Error(ErrorCode::SemanticsViolation,
                    "tuple over elements spanning " + set_text(a) + " has unsupported type");
    }
  // S3
  std::map<const Instruction*, std::vector<std::vector<int>>> auts;
  for (const auto& o : occs) {
    auto& aut = auts[o.inst];
    if (aut.empty()) aut = automorphisms(o.inst->type().structure());
    const Structure& g = o.inst->gadget();
    bool found = false;
    for (const auto& alpha : aut) {
      Occurrence moved{o.set, o.inst, std::vector<int>(alpha.size())};
      for (std::size_t p = 0; p < alpha.size(); ++p) moved.iso[p] = o.iso[alpha[p]];
      std::vector<int> map(g.size());
      for (int e = 0; e < g.size(); ++e)
        map[e] = out_index[element_of(moved, o.inst->tags()[e])];
      if (is_embedding(g, out, map)) {
        found = true;
        break;
      }
    }
    if (!found) {
      std::vector<std::string> nm;
      for (int e : o.set) nm.push_back(s.name(e));
      throw Error(ErrorCode::SemanticsViolation,
                  "gadget does not embed at occurrence " + json(nm).dump());
    }
  }
  return res;
}

Structure apply(const CookbookReduction& rho, const Structure& s, const ApplyOptions& options) {
  return apply_detailed(rho, s, options).structure;
}

// ---------------------------------------------------------------- gadget subclasses

namespace {

const Schema& undirected() {
  static const Schema s = Schema::undirected_graph();
  return s;
}
const Schema& directed() {
  static const Schema s = Schema::directed_graph();
  return s;
}

Structure empty_type(const Schema& s) { return Structure::numbered(s, 0, {{}}); }
Structure vertex_type(const Schema& s) { return Structure::numbered(s, 1, {{}}); }
Structure edge_type(const Schema& s) { return Structure::numbered(s, 2, {{{0, 1}}}); }
Structure biedge_type() { return Structure::numbered(directed(), 2, {{{0, 1}, {1, 0}}}); }

void require_graph(const Structure& g, const char* what) {
  if (!(g.schema() == undirected()))
    throw Error(ErrorCode::BadGadget, std::string(what) + " must be an undirected graph");
}

using Edges = std::vector<TagTuple>;

// Copies the undirected edges of g, mapping node i to tag_of(i).
template <class F>
void copy_edges(const Structure& g, Edges& out, F&& tag_of) {
  for (std::size_t q = 0; q < g.tuple_count(0); ++q) {
    auto t = g.tuple(0, q);
    if (t[0] < t[1]) out.push_back({tag_of(t[0]), tag_of(t[1])});
  }
}

CookbookReduction finish(Schema source, std::vector<Instruction> ins) {
  CookbookReduction rho(std::move(source), undirected(), std::move(ins));
  auto rep = validate_wellformed(rho);
  for (const auto& v : rep.violations)
    if (v.condition == "P5") throw Error(ErrorCode::LiftFailure, "gadget reduction: " + v.detail);
  if (!rep.ok())
    throw Error(ErrorCode::BadGadget, "gadget reduction is not well-formed: " +
                                          rep.violations.front().condition + " " +
                                          rep.violations.front().detail);
  return rho;
}

CookbookReduction build(const EdgeGadget& e) {
  require_graph(e.graph, "edge gadget");
  const Structure& g = e.graph;
  auto c = g.index_of(e.c), d = g.index_of(e.d);
  if (!c || !d || *c == *d)
    throw Error(ErrorCode::BadGadget, "edge gadget needs two distinct distinguished nodes");
  std::vector<Tag> tags(g.size());
  int fresh = 0;
  for (int v = 0; v < g.size(); ++v) {
    if (v == *c) tags[v] = {{1}, 1};
    else if (v == *d) tags[v] = {{2}, 1};
    else tags[v] = {{1, 2}, ++fresh};
  }
  Edges edges;
  copy_edges(g, edges, [&](int v) { return tags[v]; });
  std::vector<Instruction> ins;
  ins.push_back(make_instruction(vertex_type(undirected()), undirected(), {{{1}, 1}}, {{}}));
  ins.push_back(make_instruction(edge_type(undirected()), undirected(), tags, {edges}));
  return finish(undirected(), std::move(ins));
}

CookbookReduction build(const NodeGadget& ng) {
  require_graph(ng.node_graph, "node graph");
  const Structure& g = ng.node_graph;
  const int k = g.size();
  std::set<std::pair<int, int>> cross;
  for (const auto& [a, b] : ng.cross_edges) {
    auto i = g.index_of(a), j = g.index_of(b);
    if (!i || !j) throw Error(ErrorCode::BadGadget, "cross edge names unknown node");
    cross.emplace(*i, *j);
  }
  auto copy_tags = [&](int pos) {
    std::vector<Tag> t;
    for (int i = 0; i < k; ++i) t.push_back({{pos}, i + 1});
    return t;
  };
  Edges vertex_edges;
  copy_edges(g, vertex_edges, [](int v) { return Tag{{1}, v + 1}; });
  auto pair_instruction = [&](const Structure& type, bool both_ways) {
    std::vector<Tag> tags = copy_tags(1);
    for (auto& t : copy_tags(2)) tags.push_back(t);
    Edges edges;
    copy_edges(g, edges, [](int v) { return Tag{{1}, v + 1}; });
    copy_edges(g, edges, [](int v) { return Tag{{2}, v + 1}; });
    for (auto [i, j] : cross) {
      edges.push_back({Tag{{1}, i + 1}, Tag{{2}, j + 1}});
      if (both_ways) edges.push_back({Tag{{2}, i + 1}, Tag{{1}, j + 1}});
    }
    return make_instruction(type, undirected(), tags, {edges});
  };
  const Schema& src = ng.directed_source ? directed() : undirected();
  std::vector<Instruction> ins;
  ins.push_back(make_instruction(vertex_type(src), undirected(), copy_tags(1), {vertex_edges}));
  if (ng.directed_source) {
    ins.push_back(pair_instruction(edge_type(directed()), false));
    ins.push_back(pair_instruction(biedge_type(), true));
  } else {
    ins.push_back(pair_instruction(edge_type(undirected()), true));
  }
  return finish(src, std::move(ins));
}

CookbookReduction build(const GlobalGadget& gg) {
  require_graph(gg.graph, "global graph");
  const Structure& g = gg.graph;
  std::set<int> dist;
  for (const auto& a : gg.distinguished) {
    auto i = g.index_of(a);
    if (!i) throw Error(ErrorCode::BadGadget, "distinguished node " + a + " not in global graph");
    dist.insert(*i);
  }
  std::vector<Tag> global;
  for (int v = 0; v < g.size(); ++v) global.push_back({{}, v + 1});
  Edges base;
  copy_edges(g, base, [](int v) { return Tag{{}, v + 1}; });

  std::vector<Instruction> ins;
  ins.push_back(make_instruction(empty_type(undirected()), undirected(), global, {base}));

  auto with_nodes = [&](int count) {
    auto tags = global;
    Edges edges = base;
    for (int p = 1; p <= count; ++p) {
      tags.push_back({{p}, 1});
      for (int a : dist) edges.push_back({Tag{{p}, 1}, Tag{{}, a + 1}});
    }
    if (count == 2) edges.push_back({Tag{{1}, 1}, Tag{{2}, 1}});
    return std::make_pair(tags, edges);
  };
  auto [vt, ve] = with_nodes(1);
  ins.push_back(make_instruction(vertex_type(undirected()), undirected(), vt, {ve}));
  auto [et, ee] = with_nodes(2);
  ins.push_back(make_instruction(edge_type(undirected()), undirected(), et, {ee}));
  return finish(undirected(), std::move(ins));
}

// Undirected graph on `names` with edges between the given index pairs.
Structure named_graph(std::vector<std::string> names, std::vector<Tuple> edges) {
  return Structure(undirected(), std::move(names), {std::move(edges)});
}

std::optional<GadgetSpec> reconstruct(const CookbookReduction& rho) {
  if (!(rho.target_schema() == undirected())) return std::nullopt;
  const bool dir = rho.source_schema() == directed();
  if (!dir && !(rho.source_schema() == undirected())) return std::nullopt;
  const Schema& src = rho.source_schema();
  const Instruction* vtx = rho.find(IsoType::of(vertex_type(src)));
  const Instruction* edge = rho.find(IsoType::of(edge_type(src)));
  if (!vtx || !edge) return std::nullopt;

  auto node_graph = [&]() -> std::optional<Structure> {
    const int k = vtx->gadget().size();
    for (const auto& t : vtx->tags())
      if (t.base != std::vector<int>{1} || t.copy > k) return std::nullopt;
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back(element_label(i, k));
    std::vector<Tuple> edges;
    for (const auto& t : vtx->gadget().tuples(0)) {
      const Tag &a = vtx->tags()[t[0]], &b = vtx->tags()[t[1]];
      edges.push_back({a.copy - 1, b.copy - 1});
    }
    return named_graph(names, edges);
  };
  auto cross_of = [&](const Instruction& in, int k) {
    std::vector<std::pair<std::string, std::string>> cross;
    for (const auto& t : in.gadget().tuples(0)) {
      const Tag &a = in.tags()[t[0]], &b = in.tags()[t[1]];
      if (a.base == std::vector<int>{1} && b.base == std::vector<int>{2})
        cross.emplace_back(element_label(a.copy - 1, k), element_label(b.copy - 1, k));
    }
    std::sort(cross.begin(), cross.end());
    return cross;
  };

  if (dir) {
    if (!rho.find(IsoType::of(biedge_type()))) return std::nullopt;
    auto ng = node_graph();
    if (!ng) return std::nullopt;
    return NodeGadget{*ng, cross_of(*edge, ng->size()), true};
  }

  if (const Instruction* glob = rho.find(IsoType::of(empty_type(undirected())))) {
    const int m = glob->gadget().size();
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back(element_label(i, m));
    std::vector<Tuple> edges;
    for (const auto& t : glob->gadget().tuples(0))
      edges.push_back({glob->tags()[t[0]].copy - 1, glob->tags()[t[1]].copy - 1});
    std::vector<std::string> dist;
    auto self = vtx->find(Tag{{1}, 1});
    if (!self) return std::nullopt;
    for (const auto& t : vtx->gadget().tuples(0))
      if (t[0] == *self) {
        const Tag& o = vtx->tags()[t[1]];
        if (!o.base.empty() || o.copy > m) return std::nullopt;
        dist.push_back(element_label(o.copy - 1, m));
      }
    std::sort(dist.begin(), dist.end());
    return GlobalGadget{named_graph(names, edges), dist};
  }

  if (vtx->gadget().size() == 1 && vtx->gadget().total_tuples() == 0) {
    const Structure& g = edge->gadget();
    int fresh = edge->fresh();
    std::vector<std::string> names(g.size());
    for (int e = 0; e < g.size(); ++e) {
      const Tag& t = edge->tags()[e];
      if (t.base == std::vector<int>{1} && t.copy == 1) names[e] = "c";
      else if (t.base == std::vector<int>{2} && t.copy == 1) names[e] = "d";
      else if (t.base.size() == 2) names[e] = "w" + element_label(t.copy - 1, fresh);
      else return std::nullopt;
    }
    return EdgeGadget{named_graph(names, g.tuples(0)), "c", "d"};
  }

  auto ng = node_graph();
  if (!ng) return std::nullopt;
  return NodeGadget{*ng, cross_of(*edge, ng->size()), false};
}

}  // namespace

CookbookReduction from_gadget(const GadgetSpec& spec) {
  return std::visit([](const auto& g) { return build(g); }, spec);
}

std::optional<GadgetSpec> classify_gadget(const CookbookReduction& rho) {
  std::optional<GadgetSpec> spec;
  try {
    spec = reconstruct(rho);
    if (spec && !(from_gadget(*spec) == rho)) spec.reset();
  } catch (const Error&) {
    spec.reset();
  }
  return spec;
}

// ---------------------------------------------------------------- documents

namespace {

json gadget_doc(const Instruction& in) {
  const Structure& g = in.gadget();
  json universe = json::array();
  for (const auto& t : in.tags()) universe.push_back(to_json(t));
  json rels = json::object();
  for (std::size_t r = 0; r < g.schema().size(); ++r) {
    json ts = json::array();
    for (std::size_t q = 0; q < g.tuple_count(r); ++q) {
      json t = json::array();
      for (int e : g.tuple(r, q)) t.push_back(to_json(in.tags()[e]));
      ts.push_back(std::move(t));
    }
    rels[g.schema()[r].name] = std::move(ts);
  }
  return {{"universe", universe}, {"relations", rels}};
}

json with_default_schema(json doc, const Schema& schema) {
  if (doc.is_object() && !doc.contains("schema")) doc["schema"] = to_json(schema);
  return doc;
}

Instruction instruction_from_json(const json& doc, const Schema& source, const Schema& target) {
  if (!doc.is_object() || !doc.contains("type") || !doc.contains("gadget"))
    malformed("instruction needs type and gadget");
  Structure type = structure_from_json(with_default_schema(doc["type"], source));
  if (!(type.schema() == source)) malformed("instruction type schema differs from source schema");
  const int k = type.size();
  // Type elements are named 1..k; order[p] is the element named p+1.
  std::vector<int> order(k, -1);
  for (int e = 0; e < k; ++e) {
    const std::string& nm = type.name(e);
    int v = 0;
    bool digits = !nm.empty() && nm.size() < 6 &&
                  std::all_of(nm.begin(), nm.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (digits) v = std::stoi(nm);
    if (!digits || v < 1 || v > k || order[v - 1] >= 0)
      malformed("type universe must be 1.." + std::to_string(k));
    order[v - 1] = e;
  }
  Structure numbered = relabel_positions(type, order);

  const json& g = doc["gadget"];
  if (!g.is_object() || !g.contains("universe") || !g["universe"].is_array())
    malformed("gadget needs a universe");
  std::vector<Tag> tags;
  for (const auto& e : g["universe"]) tags.push_back(tag_from_json(e));
  std::vector<std::vector<TagTuple>> rels(target.size());
  if (g.contains("relations")) {
    if (!g["relations"].is_object()) malformed("gadget relations must be a map");
    for (auto it = g["relations"].begin(); it != g["relations"].end(); ++it) {
      auto r = target.find(it.key());
      if (!r) malformed("gadget relation " + it.key() + " not in target schema");
      if (!it.value().is_array()) malformed("gadget relation must be a list");
      for (const auto& t : it.value()) {
        if (!t.is_array() || static_cast<int>(t.size()) != target[*r].arity)
          malformed("gadget tuple of wrong arity in " + it.key());
        TagTuple tt;
        for (const auto& x : t) tt.push_back(tag_from_json(x));
        rels[*r].push_back(std::move(tt));
      }
    }
  }
  try {
    return make_instruction(numbered, target, std::move(tags), rels);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidStructure || e.code() == ErrorCode::UnknownElement)
      malformed(e.what());
    throw;
  }
}

Structure graph_from_json(const json& doc) {
  Structure g = structure_from_json(with_default_schema(doc, undirected()));
  if (!(g.schema() == undirected())) malformed("gadget graphs must be undirected graphs");
  return g;
}

std::string string_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string())
    malformed(std::string("gadget spec needs string field ") + key);
  return doc[key].get<std::string>();
}

}  // namespace

json to_json(const CookbookReduction& rho) {
  json ins = json::array();
  for (const auto& in : rho.instructions())
    ins.push_back({{"type", to_json(in.type().structure())}, {"gadget", gadget_doc(in)}});
  return {{"source_schema", to_json(rho.source_schema())},
          {"target_schema", to_json(rho.target_schema())},
          {"instructions", ins}};
}

bool is_gadget_spec_document(const json& doc) {
  return doc.is_object() && doc.contains("gadget") && doc["gadget"].is_string();
}

CookbookReduction reduction_from_json(const json& doc) {
  if (is_gadget_spec_document(doc)) return from_gadget(gadget_spec_from_json(doc));
  if (!doc.is_object() || !doc.contains("source_schema") || !doc.contains("target_schema") ||
      !doc.contains("instructions"))
    malformed("reduction needs source_schema, target_schema and instructions");
  Schema source = schema_from_json(doc["source_schema"]);
  Schema target = schema_from_json(doc["target_schema"]);
  if (!doc["instructions"].is_array()) malformed("instructions must be a list");
  std::vector<Instruction> ins;
  for (const auto& i : doc["instructions"]) ins.push_back(instruction_from_json(i, source, target));
  try {
    return CookbookReduction(std::move(source), std::move(target), std::move(ins));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidStructure || e.code() == ErrorCode::SchemaMismatch)
      malformed(e.what());
    throw;
  }
}

json to_json(const GadgetSpec& spec) {
  auto graph = [](const Structure& g) {
    json d = to_json(g);
    d.erase("schema");
    return d;
  };
  if (const auto* e = std::get_if<EdgeGadget>(&spec))
    return {{"gadget", "edge"}, {"graph", graph(e->graph)}, {"c", e->c}, {"d", e->d}};
  if (const auto* n = std::get_if<NodeGadget>(&spec)) {
    json cross = json::array();
    for (const auto& [a, b] : n->cross_edges) cross.push_back({a, b});
    return {{"gadget", "node"},
            {"node_graph", graph(n->node_graph)},
            {"cross_edges", cross},
            {"source", n->directed_source ? "directed" : "undirected"}};
  }
  const auto& g = std::get<GlobalGadget>(spec);
  return {{"gadget", "global"}, {"graph", graph(g.graph)}, {"A", g.distinguished}};
}

GadgetSpec gadget_spec_from_json(const json& doc) {
  const std::string kind = string_field(doc, "gadget");
  if (kind == "edge") {
    if (!doc.contains("graph")) malformed("edge gadget needs graph");
    return EdgeGadget{graph_from_json(doc["graph"]), string_field(doc, "c"),
                      string_field(doc, "d")};
  }
  if (kind == "node") {
    if (!doc.contains("node_graph")) malformed("node gadget needs node_graph");
    NodeGadget n{graph_from_json(doc["node_graph"]), {}, true};
    if (doc.contains("cross_edges")) {
      if (!doc["cross_edges"].is_array()) malformed("cross_edges must be a list");
      for (const auto& p : doc["cross_edges"]) {
        if (!p.is_array() || p.size() != 2) malformed("cross edge must be a pair");
        n.cross_edges.emplace_back(element_key(p[0]), element_key(p[1]));
      }
    }
    if (doc.contains("source")) {
      std::string s = string_field(doc, "source");
      if (s != "directed" && s != "undirected") malformed("source must be directed or undirected");
      n.directed_source = s == "directed";
    }
    return n;
  }
  if (kind == "global") {
    if (!doc.contains("graph")) malformed("global gadget needs graph");
    GlobalGadget g{graph_from_json(doc["graph"]), {}};
    if (doc.contains("A")) {
      if (!doc["A"].is_array()) malformed("A must be a list");
      for (const auto& a : doc["A"]) g.distinguished.push_back(element_key(a));
    }
    return g;
  }
  malformed("unknown gadget kind " + kind);
}

// ---------------------------------------------------------------- recipes

Recipe build_recipe(const CookbookReduction& rho, int r) {
  if (r < rho.arity())
    throw Error(ErrorCode::BadParameters, "recipe arity below the reduction's arity");
  if (r > kMaxReductionArity)
    throw Error(ErrorCode::ArityLimitExceeded, "recipe arity above cap");
  const Schema& src = rho.source_schema();
  Recipe out;
  std::map<std::pair<int, std::string>, int> type_index;
  for (int m = 0; m <= r; ++m)
    for (const auto& s : enumerate_structures(src, m, canonical_options())) {
      IsoType t = IsoType::of(s);
      type_index[{m, t.code()}] = static_cast<int>(out.types.size());
      out.types.push_back(std::move(t));
    }

  std::vector<RelationSymbol> syms = rho.target_schema().symbols();
  const std::size_t inh = syms.size();
  syms.push_back({"Inh", 2, false, false});
  for (std::size_t i = 0; i < out.types.size(); ++i)
    syms.push_back({"Col_" + std::to_string(i), 1, false, false});
  Schema schema(syms);
  for (std::size_t i = 0; i + 1 < syms.size(); ++i)
    for (std::size_t j = i + 1; j < syms.size(); ++j)
      if (syms[i].name == syms[j].name)
        throw Error(ErrorCode::SchemaMismatch, "target schema clashes with recipe symbol " +
                                                   syms[i].name);

  std::vector<std::string> names;
  std::map<std::string, int> id;
  std::vector<std::vector<Tuple>> rels(schema.size());
  struct Pending {
    int from;
    int type;
    Tag tag;
  };
  std::vector<Pending> inherited;
  auto prefix = [](std::size_t i) { return "t" + std::to_string(i) + ":"; };

  for (std::size_t ti = 0; ti < out.types.size(); ++ti) {
    const IsoType& t = out.types[ti];
    const int k = t.arity();
    Structure g;
    std::vector<Tag> tags;
    if (const Instruction* in = rho.find(t)) {
      g = in->gadget();
      tags = in->tags();
    } else {
      auto res = apply_detailed(rho, t.structure());
      g = res.structure;
      for (const auto& o : res.origin) {
        Tag tag{{}, o.copy};
        for (int b : o.base) tag.base.push_back(b + 1);
        tags.push_back(tag);
      }
    }
    const int offset = static_cast<int>(names.size());
    for (int e = 0; e < g.size(); ++e) {
      names.push_back(prefix(ti) + tag_name(tags[e]));
      id[names.back()] = offset + e;
      rels[inh + 1 + ti].push_back({offset + e});
      if (static_cast<int>(tags[e].base.size()) < k) inherited.push_back({offset + e, static_cast<int>(ti), tags[e]});
    }
    for (std::size_t rr = 0; rr < inh; ++rr)
      for (std::size_t q = 0; q < g.tuple_count(rr); ++q) {
        Tuple tt;
        for (int e : g.tuple(rr, q)) tt.push_back(offset + e);
        rels[rr].push_back(std::move(tt));
      }
  }
  for (const auto& p : inherited) {
    const IsoType& t = out.types[p.type];
    IsoType sub = iso_type(t.structure(), zero_based(p.tag.base), t.arity());
    int si = type_index.at({sub.arity(), sub.code()});
    Tag orig{iota_vec(sub.arity(), 1), p.tag.copy};
    auto it = id.find(prefix(si) + tag_name(orig));
    if (it == id.end())
      throw Error(ErrorCode::SemanticsViolation,
                  "inherited element " + names[p.from] + " has no original");
    rels[inh].push_back({p.from, it->second});
  }
  out.structure = Structure(schema, std::move(names), std::move(rels));
  return out;
}

// ---------------------------------------------------------------- fixtures

namespace fixtures {

CookbookReduction vc_to_fvs() {
  const Schema& u = undirected();
  Tag a{{1}, 1}, b{{2}, 1}, ab{{1, 2}, 1};
  std::vector<Instruction> ins;
  ins.push_back(make_instruction(vertex_type(u), u, {a}, {{}}));
  ins.push_back(make_instruction(edge_type(u), u, {a, b, ab}, {{{a, b}, {a, ab}, {b, ab}}}));
  return CookbookReduction(u, u, std::move(ins));
}

CookbookReduction hamcycle() {
  const Schema& u = undirected();
  auto n = [](int p, int j) { return Tag{{p}, j}; };
  Edges paths = {{n(1, 1), n(1, 2)}, {n(1, 2), n(1, 3)}, {n(2, 1), n(2, 2)}, {n(2, 2), n(2, 3)}};
  std::vector<Tag> six = {n(1, 1), n(1, 2), n(1, 3), n(2, 1), n(2, 2), n(2, 3)};
  Edges dir = paths, bi = paths;
  dir.push_back({n(1, 3), n(2, 1)});
  bi.push_back({n(1, 3), n(2, 1)});
  bi.push_back({n(2, 3), n(1, 1)});
  std::vector<Instruction> ins;
  ins.push_back(make_instruction(vertex_type(directed()), u, {n(1, 1), n(1, 2), n(1, 3)},
                                 {{{n(1, 1), n(1, 2)}, {n(1, 2), n(1, 3)}}}));
  ins.push_back(make_instruction(edge_type(directed()), u, six, {dir}));
  ins.push_back(make_instruction(biedge_type(), u, six, {bi}));
  return CookbookReduction(directed(), u, std::move(ins));
}

CookbookReduction clique_3_to_4() {
  const Schema& u = undirected();
  Tag g{{}, 1}, a{{1}, 1}, b{{2}, 1};
  std::vector<Instruction> ins;
  ins.push_back(make_instruction(empty_type(u), u, {g}, {{}}));
  ins.push_back(make_instruction(vertex_type(u), u, {g, a}, {{{a, g}}}));
  ins.push_back(make_instruction(edge_type(u), u, {g, a, b}, {{{a, g}, {b, g}, {a, b}}}));
  return CookbookReduction(u, u, std::move(ins));
}

}  // namespace fixtures

}  // namespace redukt
