#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "redukt/json_io.hpp"
#include "redukt/structures.hpp"

namespace redukt {

// Gadget element (A, j): A is a sorted set of 1-based type positions.
struct Tag {
  std::vector<int> base;
  int copy = 1;

  auto operator<=>(const Tag&) const = default;
};

std::string tag_name(const Tag& t);
Tag tag_from_json(const json& v);
json to_json(const Tag& t);

using TagTuple = std::vector<Tag>;

class Instruction {
 public:
  // `type` must be canonical. relations[r] lists gadget tuples of target
  // symbol r.
  Instruction(IsoType type, const Schema& target, std::vector<Tag> elements,
              const std::vector<std::vector<TagTuple>>& relations);

  const IsoType& type() const { return type_; }
  int arity() const { return type_.arity(); }
  const Structure& gadget() const { return gadget_; }
  // tags()[i] is the tag of gadget element i.
  const std::vector<Tag>& tags() const { return tags_; }
  std::optional<int> find(const Tag& t) const;
  int fresh() const;
  bool is_fresh(int element) const;

  bool operator==(const Instruction& o) const {
    return type_ == o.type_ && gadget_ == o.gadget_;
  }

 private:
  IsoType type_;
  Structure gadget_;
  std::vector<Tag> tags_;
};

// Builds an instruction for a possibly non-canonical type structure on
// 1..k; bases are relabelled onto the canonical form.
Instruction make_instruction(const Structure& type, const Schema& target,
                             std::vector<Tag> elements,
                             const std::vector<std::vector<TagTuple>>& relations);

class CookbookReduction {
 public:
  CookbookReduction() = default;
  CookbookReduction(Schema source, Schema target, std::vector<Instruction> instructions);

  const Schema& source_schema() const { return source_; }
  const Schema& target_schema() const { return target_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  const Instruction* find(const IsoType& t) const;
  // Largest type arity in the support (0 for an empty support).
  int arity() const;
  int max_gadget_size() const;

  bool operator==(const CookbookReduction& o) const {
    return source_ == o.source_ && target_ == o.target_ && instructions_ == o.instructions_;
  }

 private:
  Schema source_, target_;
  std::vector<Instruction> instructions_;
  std::map<std::pair<int, std::string>, std::size_t> index_;
};

inline constexpr int kMaxReductionArity = 4;

json to_json(const CookbookReduction& rho);
CookbookReduction reduction_from_json(const json& doc);

// ---- well-formedness

struct Violation {
  std::string condition;  // "P1" .. "P5"
  std::size_t instruction = 0;
  std::string detail;
};

struct WellformedReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

WellformedReport validate_wellformed(const CookbookReduction& rho);
json to_json(const WellformedReport& report, const CookbookReduction& rho);

std::vector<std::vector<int>> automorphisms(const Structure& s);

// Automorphisms of the gadget that move inherited elements (A, j) to
// (alpha(A), j) and permute fresh elements among themselves; alpha is an
// automorphism of the instruction's type (0-based positions).
std::vector<std::vector<int>> gadget_lifts(const Instruction& inst,
                                           const std::vector<int>& alpha,
                                           bool first_only = false);

// ---- application

struct ApplyOptions {
  IsoChoice choice = IsoChoice::LexLeast;
  bool verify = true;
};

struct AppliedElement {
  std::vector<int> base;  // source element indices, sorted
  int copy = 1;
};

struct ApplyResult {
  Structure structure;
  // origin[i] describes output element i.
  std::vector<AppliedElement> origin;
};

ApplyResult apply_detailed(const CookbookReduction& rho, const Structure& s,
                           const ApplyOptions& options = {});
Structure apply(const CookbookReduction& rho, const Structure& s,
                const ApplyOptions& options = {});

// Name of the output element (A, j), e.g. [["a","b"],1].
std::string applied_name(const Structure& s, const AppliedElement& e);

// ---- gadget subclasses

struct EdgeGadget {
  Structure graph;
  std::string c, d;
};

struct NodeGadget {
  Structure node_graph;
  // (i, j) joins copy i of the tail with copy j of the head.
  std::vector<std::pair<std::string, std::string>> cross_edges;
  bool directed_source = true;
};

struct GlobalGadget {
  Structure graph;
  std::vector<std::string> distinguished;
};

using GadgetSpec = std::variant<EdgeGadget, NodeGadget, GlobalGadget>;

CookbookReduction from_gadget(const GadgetSpec& spec);
std::optional<GadgetSpec> classify_gadget(const CookbookReduction& rho);

json to_json(const GadgetSpec& spec);
GadgetSpec gadget_spec_from_json(const json& doc);
bool is_gadget_spec_document(const json& doc);

// ---- recipes

struct Recipe {
  Structure structure;
  // Col_i marks the gadget of types[i].
  std::vector<IsoType> types;
};

Recipe build_recipe(const CookbookReduction& rho, int r);

// ---- fixtures for the three textbook reductions

namespace fixtures {
// k-VertexCover to k-FeedbackVertexSet: every edge becomes a triangle.
CookbookReduction vc_to_fvs();
// HamCycle (directed) to HamCycle (undirected): the standard 3-path gadget.
CookbookReduction hamcycle();
// 3-Clique to 4-Clique: one global node adjacent to everything.
CookbookReduction clique_3_to_4();
}  // namespace fixtures

}  // namespace redukt
