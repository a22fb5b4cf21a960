#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redukt/error.hpp"

namespace redukt {

struct RelationSymbol {
  std::string name;
  int arity = 0;
  bool symmetric = false;
  // Binary symbols only: forbids (v, v). Symmetric symbols are always irreflexive.
  bool irreflexive = false;

  bool operator==(const RelationSymbol&) const = default;
};

class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<RelationSymbol> symbols);

  // {E} symmetric and loop-free.
  static Schema undirected_graph();
  // {E} loop-free, not symmetric.
  static Schema directed_graph();

  const std::vector<RelationSymbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const RelationSymbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  int max_arity() const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<RelationSymbol> symbols_;
};

using Tuple = std::vector<int>;

// Finite relational structure. Elements are dense indices 0..n-1 ordered by
// their external names; tuples are kept sorted and duplicate-free.
class Structure {
 public:
  Structure() = default;

  // `relations[r]` holds tuples of indices into `universe` as passed in.
  // Symmetric relations are closed under reversal automatically.
  Structure(Schema schema, std::vector<std::string> universe,
            std::vector<std::vector<Tuple>> relations);

  static Structure from_names(
      Schema schema, std::vector<std::string> universe,
      const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>&
          relations);

  // Universe labelled 1..n (see element_label); tuples over 0..n-1.
  static Structure numbered(Schema schema, int n,
                            std::vector<std::vector<Tuple>> relations);

  const Schema& schema() const { return schema_; }
  int size() const { return static_cast<int>(universe_.size()); }
  const std::vector<std::string>& universe() const { return universe_; }
  const std::string& name(int e) const { return universe_[e]; }
  std::optional<int> index_of(std::string_view name) const;
  int require(std::string_view name) const;

  std::size_t tuple_count(std::size_t rel) const;
  std::span<const int> tuple(std::size_t rel, std::size_t i) const;
  std::vector<Tuple> tuples(std::size_t rel) const;
  std::size_t total_tuples() const;

  bool holds(std::size_t rel, std::span<const int> t) const;
  bool holds(std::size_t rel, std::initializer_list<int> t) const {
    return holds(rel, std::span<const int>(t.begin(), t.size()));
  }

  bool operator==(const Structure& other) const {
    return schema_ == other.schema_ && universe_ == other.universe_ &&
           flat_ == other.flat_;
  }

 private:
  void build_index();

  Schema schema_;
  std::vector<std::string> universe_;
  std::vector<std::vector<int>> flat_;
  std::vector<std::vector<std::uint64_t>> dense_;
};

// Decimal label for element i of an n-element numbered universe; zero-padded
// once n reaches 10 so that lexicographic and numeric order agree.
std::string element_label(int i, int n);

Structure induced_substructure(const Structure& s, const std::vector<int>& elements);
Structure induced_substructure(const Structure& s,
                               const std::vector<std::string>& elements);

// Structure on 1..k whose element p is order[p] of s.
Structure relabel_positions(const Structure& s, const std::vector<int>& order);

// Lexicographically least bit encoding over all permutations. `first` and
// `last` are the least and greatest permutations attaining it (position ->
// element of the input).
struct CanonicalLabeling {
  std::string code;
  std::vector<int> first;
  std::vector<int> last;
};

CanonicalLabeling canonical_labeling(const Structure& s);

class IsoType {
 public:
  IsoType() = default;

  static IsoType of(const Structure& s);
  // Trusts that `s` is already canonical; used when rebuilding from storage.
  static IsoType adopt(Structure s, std::string code);

  const Structure& structure() const { return structure_; }
  int arity() const { return structure_.size(); }
  const std::string& code() const { return code_; }

  bool operator==(const IsoType& o) const {
    return structure_.size() == o.structure_.size() && code_ == o.code_ &&
           structure_.schema() == o.structure_.schema();
  }
  bool operator<(const IsoType& o) const {
    if (arity() != o.arity()) return arity() < o.arity();
    return code_ < o.code_;
  }

 private:
  Structure structure_;
  std::string code_;
};

inline constexpr int kDefaultMaxTypeArity = 4;
inline constexpr int kHardMaxTypeArity = 6;

struct TypeOccurrence {
  IsoType type;
  // iso[i] is the element of the host structure playing type element i.
  std::vector<int> iso;
};

enum class IsoChoice { LexLeast, LexGreatest };

TypeOccurrence iso_type_occurrence(const Structure& s, const std::vector<int>& a,
                                   IsoChoice choice = IsoChoice::LexLeast,
                                   int max_arity = kDefaultMaxTypeArity);
IsoType iso_type(const Structure& s, const std::vector<int>& a,
                 int max_arity = kDefaultMaxTypeArity);

class Embedding {
 public:
  // Throws InvalidStructure unless `map` is injective and induces an
  // isomorphism onto the image.
  static Embedding make(const Structure& from, const Structure& to,
                        std::vector<int> map);

  const std::vector<int>& map() const { return map_; }
  int operator()(int e) const { return map_[e]; }

 private:
  explicit Embedding(std::vector<int> map) : map_(std::move(map)) {}
  std::vector<int> map_;
};

std::optional<Embedding> find_isomorphism(const Structure& a, const Structure& b);
bool isomorphic(const Structure& a, const Structure& b);

// Visits embeddings of `from` into `to` in lexicographic order; stops early
// when the callback returns false.
void for_each_embedding(const Structure& from, const Structure& to,
                        const std::function<bool(const std::vector<int>&)>& visit);
std::vector<Embedding> enumerate_embeddings(const IsoType& t, const Structure& s);

struct EnumerateOptions {
  bool canonical_only = false;
  int max_raw_log2 = 24;
  std::function<bool(const Structure&)> filter;
};

inline EnumerateOptions canonical_options() {
  EnumerateOptions o;
  o.canonical_only = true;
  return o;
}

// Number of free tuple positions for an n-element structure; the raw
// enumeration has 2^slots candidates.
int free_slot_count(const Schema& schema, int n);

void for_each_structure(const Schema& schema, int n, const EnumerateOptions& options,
                        const std::function<bool(const Structure&)>& visit);
std::vector<Structure> enumerate_structures(const Schema& schema, int n,
                                            const EnumerateOptions& options = {});

}  // namespace redukt
