#include "redukt/structures.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace redukt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
    case ErrorCode::ArityLimitExceeded: return "ArityLimitExceeded";
    case ErrorCode::ExplosionGuard: return "ExplosionGuard";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotACongruence: return "NotACongruence";
    case ErrorCode::NotSetRespecting: return "NotSetRespecting";
    case ErrorCode::MissingOrder: return "MissingOrder";
    case ErrorCode::NotInFragment: return "NotInFragment";
    case ErrorCode::NotWellFormed: return "NotWellFormed";
    case ErrorCode::SemanticsViolation: return "SemanticsViolation";
    case ErrorCode::LiftFailure: return "LiftFailure";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::BadGadget: return "BadGadget";
    case ErrorCode::NodeGraphTooLarge: return "NodeGraphTooLarge";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Schema

Schema::Schema(std::vector<RelationSymbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (auto& sym : symbols_) {
    if (sym.name.empty()) throw Error(ErrorCode::Malformed, "empty relation name");
    if (!seen.insert(sym.name).second)
      throw Error(ErrorCode::Malformed, "duplicate relation symbol " + sym.name);
    if (sym.arity < 1)
      throw Error(ErrorCode::Malformed, "relation " + sym.name + " needs arity >= 1");
    if ((sym.symmetric || sym.irreflexive) && sym.arity != 2)
      throw Error(ErrorCode::Malformed,
                  "symmetric/irreflexive flags need a binary symbol: " + sym.name);
    if (sym.symmetric) sym.irreflexive = true;
  }
}

Schema Schema::undirected_graph() { return Schema({{"E", 2, true, true}}); }

Schema Schema::directed_graph() { return Schema({{"E", 2, false, true}}); }

std::optional<std::size_t> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

int Schema::max_arity() const {
  int m = 0;
  for (const auto& s : symbols_) m = std::max(m, s.arity);
  return m;
}

// ---------------------------------------------------------------- Structure

namespace {

constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

std::size_t power(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > kDenseLimit * 4 / base + 1) return kDenseLimit * 4;
    r *= base;
  }
  return r;
}

}  // namespace

Structure::Structure(Schema schema, std::vector<std::string> universe,
                     std::vector<std::vector<Tuple>> relations)
    : schema_(std::move(schema)) {
  const int n = static_cast<int>(universe.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return universe[a] < universe[b]; });
  std::vector<int> remap(n);
  universe_.reserve(n);
  for (int i = 0; i < n; ++i) {
    remap[order[i]] = i;
    universe_.push_back(universe[order[i]]);
    if (i > 0 && universe_[i] == universe_[i - 1])
      throw Error(ErrorCode::InvalidStructure, "duplicate element " + universe_[i]);
  }
  if (relations.size() > schema_.size())
    throw Error(ErrorCode::InvalidStructure, "more relations than schema symbols");
  relations.resize(schema_.size());

  flat_.resize(schema_.size());
  for (std::size_t r = 0; r < schema_.size(); ++r) {
    const auto& sym = schema_[r];
    std::vector<Tuple> ts;
    ts.reserve(relations[r].size() * (sym.symmetric ? 2 : 1));
    for (const auto& t : relations[r]) {
      if (static_cast<int>(t.size()) != sym.arity)
        throw Error(ErrorCode::InvalidStructure, "tuple of wrong arity in " + sym.name);
      Tuple m(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0 || t[i] >= n)
          throw Error(ErrorCode::UnknownElement, "tuple component out of range in " + sym.name);
        m[i] = remap[t[i]];
      }
      if (sym.irreflexive && m[0] == m[1])
        throw Error(ErrorCode::InvalidStructure,
                    "self-loop on " + universe_[m[0]] + " in " + sym.name);
      if (sym.symmetric) ts.push_back({m[1], m[0]});
      ts.push_back(std::move(m));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    auto& f = flat_[r];
    f.reserve(ts.size() * sym.arity);
    for (const auto& t : ts) f.insert(f.end(), t.begin(), t.end());
  }
  build_index();
}

void Structure::build_index() {
  const std::size_t n = universe_.size();
  dense_.assign(schema_.size(), {});
  if (n == 0) return;
  for (std::size_t r = 0; r < schema_.size(); ++r) {
    const int ar = schema_[r].arity;
    const std::size_t cells = power(n, ar);
    if (cells > kDenseLimit) continue;
    auto& bits = dense_[r];
    bits.assign((cells + 63) / 64, 0);
    const auto& f = flat_[r];
    for (std::size_t i = 0; i < f.size(); i += ar) {
      std::size_t idx = 0;
      for (int j = 0; j < ar; ++j) idx = idx * n + f[i + j];
      bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    }
  }
}

Structure Structure::from_names(
    Schema schema, std::vector<std::string> universe,
    const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>&
        relations) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < universe.size(); ++i) index[universe[i]] = static_cast<int>(i);
  std::vector<std::vector<Tuple>> rels(schema.size());
  for (const auto& [name, tuples] : relations) {
    auto r = schema.find(name);
    if (!r) throw Error(ErrorCode::SchemaMismatch, "unknown relation " + name);
    for (const auto& t : tuples) {
      Tuple m;
      for (const auto& e : t) {
        auto it = index.find(e);
        if (it == index.end()) throw Error(ErrorCode::UnknownElement, "unknown element " + e);
        m.push_back(it->second);
      }
      rels[*r].push_back(std::move(m));
    }
  }
  return Structure(std::move(schema), std::move(universe), std::move(rels));
}

std::string element_label(int i, int n) {
  std::string s = std::to_string(i + 1);
  if (n >= 10) {
    const std::size_t width = std::to_string(n).size();
    if (s.size() < width) s.insert(0, width - s.size(), '0');
  }
  return s;
}

Structure Structure::numbered(Schema schema, int n,
                              std::vector<std::vector<Tuple>> relations) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back(element_label(i, n));
  return Structure(std::move(schema), std::move(names), std::move(relations));
}

std::optional<int> Structure::index_of(std::string_view name) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == universe_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - universe_.begin());
}

int Structure::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw Error(ErrorCode::UnknownElement, "unknown element " + std::string(name));
  return *i;
}

std::size_t Structure::tuple_count(std::size_t rel) const {
  return flat_[rel].size() / schema_[rel].arity;
}

std::span<const int> Structure::tuple(std::size_t rel, std::size_t i) const {
  const std::size_t ar = schema_[rel].arity;
  return std::span<const int>(flat_[rel].data() + i * ar, ar);
}

std::vector<Tuple> Structure::tuples(std::size_t rel) const {
  std::vector<Tuple> out;
  const std::size_t cnt = tuple_count(rel);
  out.reserve(cnt);
  for (std::size_t i = 0; i < cnt; ++i) {
    auto t = tuple(rel, i);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

std::size_t Structure::total_tuples() const {
  std::size_t total = 0;
  for (std::size_t r = 0; r < schema_.size(); ++r) total += tuple_count(r);
  return total;
}

bool Structure::holds(std::size_t rel, std::span<const int> t) const {
  const auto& bits = dense_[rel];
  const std::size_t n = universe_.size();
  if (!bits.empty()) {
    std::size_t idx = 0;
    for (int v : t) idx = idx * n + v;
    return (bits[idx >> 6] >> (idx & 63)) & 1;
  }
  const auto& f = flat_[rel];
  const std::size_t ar = t.size();
  std::size_t lo = 0, hi = f.size() / ar;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (std::lexicographical_compare(f.begin() + mid * ar, f.begin() + (mid + 1) * ar,
                                     t.begin(), t.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < f.size() / ar && std::equal(t.begin(), t.end(), f.begin() + lo * ar);
}

// ---------------------------------------------------------------- substructures

Structure induced_substructure(const Structure& s, const std::vector<int>& elements) {
  std::vector<int> pos(s.size(), -1);
  std::vector<std::string> names;
  for (int e : elements) {
    if (e < 0 || e >= s.size())
      throw Error(ErrorCode::UnknownElement, "element index out of range");
    if (pos[e] >= 0) continue;
    pos[e] = static_cast<int>(names.size());
    names.push_back(s.name(e));
  }
  std::vector<std::vector<Tuple>> rels(s.schema().size());
  for (std::size_t r = 0; r < s.schema().size(); ++r) {
    for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
      auto t = s.tuple(r, i);
      Tuple m;
      bool inside = true;
      for (int v : t) {
        if (pos[v] < 0) { inside = false; break; }
        m.push_back(pos[v]);
      }
      if (inside) rels[r].push_back(std::move(m));
    }
  }
  return Structure(s.schema(), std::move(names), std::move(rels));
}

Structure induced_substructure(const Structure& s, const std::vector<std::string>& elements) {
  std::vector<int> idx;
  for (const auto& e : elements) idx.push_back(s.require(e));
  return induced_substructure(s, idx);
}

Structure relabel_positions(const Structure& s, const std::vector<int>& order) {
  std::vector<int> pos(s.size(), -1);
  for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = static_cast<int>(p);
  std::vector<std::vector<Tuple>> rels(s.schema().size());
  for (std::size_t r = 0; r < s.schema().size(); ++r) {
    for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
      auto t = s.tuple(r, i);
      Tuple m;
      bool inside = true;
      for (int v : t) {
        if (pos[v] < 0) { inside = false; break; }
        m.push_back(pos[v]);
      }
      if (inside) rels[r].push_back(std::move(m));
    }
  }
  return Structure::numbered(s.schema(), static_cast<int>(order.size()), std::move(rels));
}

// ---------------------------------------------------------------- canonical form

namespace {

struct SlotPattern {
  std::size_t rel;
  Tuple pos;
};

// patterns[p]: every (relation, tuple over positions 0..p) whose largest
// component is p, relation-major then lexicographic.
std::vector<std::vector<SlotPattern>> slot_patterns(const Schema& schema, int n) {
  std::vector<std::vector<SlotPattern>> out(n);
  for (int p = 0; p < n; ++p) {
    for (std::size_t r = 0; r < schema.size(); ++r) {
      const int ar = schema[r].arity;
      Tuple t(ar, 0);
      while (true) {
        if (std::find(t.begin(), t.end(), p) != t.end()) out[p].push_back({r, t});
        int i = ar - 1;
        while (i >= 0 && t[i] == p) t[i--] = 0;
        if (i < 0) break;
        ++t[i];
      }
    }
  }
  return out;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const Structure& s)
      : s_(s), n_(s.size()), patterns_(slot_patterns(s.schema(), s.size())) {
    offsets_.assign(n_ + 1, 0);
    for (int p = 0; p < n_; ++p) offsets_[p + 1] = offsets_[p] + patterns_[p].size();
    cur_.assign(offsets_[n_], '0');
    sigma_.assign(n_, -1);
    used_.assign(n_, 0);
  }

  CanonicalLabeling run() {
    dfs(0, false);
    return {best_, first_, last_};
  }

 private:
  void dfs(int p, bool tight_parent) {
    if (p == n_) {
      if (!have_best_ || !tight_parent) {
        best_ = cur_;
        first_ = last_ = sigma_;
        have_best_ = true;
        ++version_;
      } else {
        last_ = sigma_;
      }
      return;
    }
    Tuple mapped;
    for (int v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      sigma_[p] = v;
      used_[v] = 1;
      const std::size_t base = offsets_[p];
      for (std::size_t i = 0; i < patterns_[p].size(); ++i) {
        const auto& pat = patterns_[p][i];
        mapped.resize(pat.pos.size());
        for (std::size_t j = 0; j < pat.pos.size(); ++j) mapped[j] = sigma_[pat.pos[j]];
        // Present tuples encode as '0' so dense prefixes sort first.
        cur_[base + i] = s_.holds(pat.rel, mapped) ? '0' : '1';
      }
      bool tight = false;
      bool skip = false;
      if (have_best_ && tight_parent) {
        int c = cur_.compare(base, patterns_[p].size(), best_, base, patterns_[p].size());
        if (c > 0) skip = true;
        tight = (c == 0);
      }
      if (!skip) {
        const unsigned before = version_;
        dfs(p + 1, tight);
        if (version_ != before) tight_parent = true;
      }
      used_[v] = 0;
    }
  }

  const Structure& s_;
  int n_;
  std::vector<std::vector<SlotPattern>> patterns_;
  std::vector<std::size_t> offsets_;
  std::string cur_, best_;
  std::vector<int> sigma_, first_, last_;
  std::vector<char> used_;
  bool have_best_ = false;
  unsigned version_ = 0;
};

}  // namespace

CanonicalLabeling canonical_labeling(const Structure& s) { return Canonicalizer(s).run(); }

IsoType IsoType::of(const Structure& s) {
  auto lab = canonical_labeling(s);
  IsoType t;
  t.structure_ = relabel_positions(s, lab.first);
  t.code_ = std::move(lab.code);
  return t;
}

IsoType IsoType::adopt(Structure s, std::string code) {
  IsoType t;
  t.structure_ = std::move(s);
  t.code_ = std::move(code);
  return t;
}

TypeOccurrence iso_type_occurrence(const Structure& s, const std::vector<int>& a,
                                   IsoChoice choice, int max_arity) {
  if (max_arity > kHardMaxTypeArity)
    throw Error(ErrorCode::BadParameters, "type arity cap above hard limit 6");
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (static_cast<int>(sorted.size()) > max_arity)
    throw Error(ErrorCode::ArityLimitExceeded,
                "type of " + std::to_string(sorted.size()) + " elements exceeds cap " +
                    std::to_string(max_arity));
  Structure sub = induced_substructure(s, sorted);
  auto lab = canonical_labeling(sub);
  TypeOccurrence occ;
  occ.type = IsoType::adopt(relabel_positions(sub, lab.first), lab.code);
  const auto& pick = choice == IsoChoice::LexLeast ? lab.first : lab.last;
  occ.iso.reserve(pick.size());
  for (int p : pick) occ.iso.push_back(sorted[p]);
  return occ;
}

IsoType iso_type(const Structure& s, const std::vector<int>& a, int max_arity) {
  return iso_type_occurrence(s, a, IsoChoice::LexLeast, max_arity).type;
}

// ---------------------------------------------------------------- embeddings

Embedding Embedding::make(const Structure& from, const Structure& to, std::vector<int> map) {
  if (!(from.schema() == to.schema()))
    throw Error(ErrorCode::SchemaMismatch, "embedding between different schemas");
  if (static_cast<int>(map.size()) != from.size())
    throw Error(ErrorCode::InvalidStructure, "embedding map has wrong size");
  std::vector<char> hit(to.size(), 0);
  for (int v : map) {
    if (v < 0 || v >= to.size()) throw Error(ErrorCode::InvalidStructure, "image out of range");
    if (hit[v]++) throw Error(ErrorCode::InvalidStructure, "embedding map is not injective");
  }
  const auto patterns = slot_patterns(from.schema(), from.size());
  Tuple mapped;
  for (const auto& level : patterns) {
    for (const auto& pat : level) {
      mapped.resize(pat.pos.size());
      for (std::size_t j = 0; j < pat.pos.size(); ++j) mapped[j] = map[pat.pos[j]];
      if (from.holds(pat.rel, pat.pos) != to.holds(pat.rel, mapped))
        throw Error(ErrorCode::InvalidStructure, "map is not an induced embedding");
    }
  }
  return Embedding(std::move(map));
}

namespace {

// Per element and relation: how often it occurs at each tuple position.
std::vector<std::vector<std::size_t>> occurrence_profile(const Structure& s) {
  std::vector<std::vector<std::size_t>> prof(s.size());
  std::size_t width = 0;
  for (const auto& sym : s.schema().symbols()) width += sym.arity;
  for (auto& p : prof) p.assign(width, 0);
  std::size_t off = 0;
  for (std::size_t r = 0; r < s.schema().size(); ++r) {
    const int ar = s.schema()[r].arity;
    for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
      auto t = s.tuple(r, i);
      for (int j = 0; j < ar; ++j) ++prof[t[j]][off + j];
    }
    off += ar;
  }
  return prof;
}

class EmbeddingSearch {
 public:
  EmbeddingSearch(const Structure& a, const Structure& b, bool bijective,
                  const std::function<bool(const std::vector<int>&)>& visit)
      : a_(a), b_(b), visit_(visit), patterns_(slot_patterns(a.schema(), a.size())) {
    sigma_.assign(a.size(), -1);
    used_.assign(b.size(), 0);
    if (bijective) {
      pa_ = occurrence_profile(a);
      pb_ = occurrence_profile(b);
    }
  }

  void run() { dfs(0); }

 private:
  bool dfs(int p) {
    if (p == a_.size()) return visit_(sigma_);
    Tuple mapped;
    for (int v = 0; v < b_.size(); ++v) {
      if (used_[v]) continue;
      if (!pa_.empty() && pa_[p] != pb_[v]) continue;
      sigma_[p] = v;
      bool ok = true;
      for (const auto& pat : patterns_[p]) {
        mapped.resize(pat.pos.size());
        for (std::size_t j = 0; j < pat.pos.size(); ++j) mapped[j] = sigma_[pat.pos[j]];
        if (a_.holds(pat.rel, pat.pos) != b_.holds(pat.rel, mapped)) { ok = false; break; }
      }
      if (!ok) continue;
      used_[v] = 1;
      const bool go_on = dfs(p + 1);
      used_[v] = 0;
      if (!go_on) return false;
    }
    sigma_[p] = -1;
    return true;
  }

  const Structure& a_;
  const Structure& b_;
  const std::function<bool(const std::vector<int>&)>& visit_;
  std::vector<std::vector<SlotPattern>> patterns_;
  std::vector<int> sigma_;
  std::vector<char> used_;
  std::vector<std::vector<std::size_t>> pa_, pb_;
};

}  // namespace

void for_each_embedding(const Structure& from, const Structure& to,
                        const std::function<bool(const std::vector<int>&)>& visit) {
  if (!(from.schema() == to.schema())) return;
  if (from.size() > to.size()) return;
  EmbeddingSearch(from, to, false, visit).run();
}

std::vector<Embedding> enumerate_embeddings(const IsoType& t, const Structure& s) {
  std::vector<Embedding> out;
  for_each_embedding(t.structure(), s, [&](const std::vector<int>& m) {
    out.push_back(Embedding::make(t.structure(), s, m));
    return true;
  });
  return out;
}

std::optional<Embedding> find_isomorphism(const Structure& a, const Structure& b) {
  if (!(a.schema() == b.schema()) || a.size() != b.size()) return std::nullopt;
  for (std::size_t r = 0; r < a.schema().size(); ++r)
    if (a.tuple_count(r) != b.tuple_count(r)) return std::nullopt;
  std::optional<std::vector<int>> found;
  std::function<bool(const std::vector<int>&)> visit = [&](const std::vector<int>& m) {
    found = m;
    return false;
  };
  EmbeddingSearch(a, b, true, visit).run();
  if (!found) return std::nullopt;
  return Embedding::make(a, b, *found);
}

bool isomorphic(const Structure& a, const Structure& b) {
  return find_isomorphism(a, b).has_value();
}

// ---------------------------------------------------------------- enumeration

int free_slot_count(const Schema& schema, int n) {
  long long total = 0;
  for (const auto& sym : schema.symbols()) {
    if (sym.symmetric)
      total += static_cast<long long>(n) * (n - 1) / 2;
    else if (sym.irreflexive)
      total += static_cast<long long>(n) * (n - 1);
    else
      total += static_cast<long long>(power(n, sym.arity));
    if (total > 1000) return 1000;
  }
  return static_cast<int>(total);
}

namespace {

struct Slot {
  std::size_t rel;
  Tuple t;
};

// Free tuple positions whose largest component is `only_max`, or all of
// them when only_max < 0. Symmetric symbols contribute one slot per pair.
std::vector<Slot> free_slots(const Schema& schema, int n, int only_max) {
  std::vector<Slot> out;
  for (std::size_t r = 0; r < schema.size(); ++r) {
    const auto& sym = schema[r];
    Tuple t(sym.arity, 0);
    if (n == 0) continue;
    while (true) {
      const int mx = *std::max_element(t.begin(), t.end());
      const bool wanted = only_max < 0 || mx == only_max;
      if (wanted) {
        if (sym.symmetric) {
          if (t[0] < t[1]) out.push_back({r, t});
        } else if (sym.irreflexive) {
          if (t[0] != t[1]) out.push_back({r, t});
        } else {
          out.push_back({r, t});
        }
      }
      int i = sym.arity - 1;
      while (i >= 0 && t[i] == n - 1) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }
  return out;
}

void check_raw(const Schema& schema, int n, const EnumerateOptions& options) {
  const int slots = free_slot_count(schema, n);
  if (slots > options.max_raw_log2 || slots > 62)
    throw Error(ErrorCode::ExplosionGuard,
                "enumeration of size " + std::to_string(n) + " needs 2^" +
                    std::to_string(slots) + " candidates");
}

std::string schema_key(const Schema& schema, int n) {
  std::string key = std::to_string(n);
  for (const auto& s : schema.symbols())
    key += "|" + s.name + "/" + std::to_string(s.arity) + (s.symmetric ? "s" : "") +
           (s.irreflexive ? "i" : "");
  return key;
}

const std::vector<Structure>& canonical_structures(const Schema& schema, int n,
                                                   const EnumerateOptions& options) {
  static std::mutex mu;
  static std::map<std::string, std::vector<Structure>> cache;
  const std::string key = schema_key(schema, n);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  check_raw(schema, n, options);
  std::vector<Structure> result;
  if (n == 0) {
    result.push_back(Structure(schema, {}, {}));
  } else {
    const auto& smaller = canonical_structures(schema, n - 1, options);
    const auto ext = free_slots(schema, n, n - 1);
    std::map<std::string, Structure> found;
    for (const auto& base : smaller) {
      std::vector<std::vector<Tuple>> rels(schema.size());
      for (std::size_t r = 0; r < schema.size(); ++r) rels[r] = base.tuples(r);
      const std::uint64_t count = std::uint64_t{1} << ext.size();
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        auto cur = rels;
        for (std::size_t i = 0; i < ext.size(); ++i)
          if ((mask >> i) & 1) cur[ext[i].rel].push_back(ext[i].t);
        Structure s = Structure::numbered(schema, n, std::move(cur));
        auto lab = canonical_labeling(s);
        if (found.count(lab.code)) continue;
        found.emplace(lab.code, relabel_positions(s, lab.first));
      }
    }
    for (auto& [code, s] : found) result.push_back(std::move(s));
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(result)).first->second;
}

}  // namespace

void for_each_structure(const Schema& schema, int n, const EnumerateOptions& options,
                        const std::function<bool(const Structure&)>& visit) {
  if (n < 0) throw Error(ErrorCode::BadParameters, "negative structure size");
  check_raw(schema, n, options);
  if (options.canonical_only) {
    for (const auto& s : canonical_structures(schema, n, options)) {
      if (options.filter && !options.filter(s)) continue;
      if (!visit(s)) return;
    }
    return;
  }
  const auto slots = free_slots(schema, n, -1);
  const std::uint64_t count = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<std::vector<Tuple>> rels(schema.size());
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1) rels[slots[i].rel].push_back(slots[i].t);
    Structure s = Structure::numbered(schema, n, std::move(rels));
    if (options.filter && !options.filter(s)) continue;
    if (!visit(s)) return;
  }
}

std::vector<Structure> enumerate_structures(const Schema& schema, int n,
                                            const EnumerateOptions& options) {
  std::vector<Structure> out;
  for_each_structure(schema, n, options, [&](const Structure& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace redukt
