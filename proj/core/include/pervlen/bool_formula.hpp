#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pervlen {

// Immutable Boolean formula tree over leaves of type Leaf. The smart
// constructors apply light simplification: constant folding, flattening
// of nested AND/OR, double-negation elimination and removal of
// syntactically repeated operands.
template <class Leaf>
class BoolFormula {
 public:
  enum class Kind { kFalse, kTrue, kLeaf, kNot, kAnd, kOr };

  BoolFormula() : BoolFormula(Kind::kFalse) {}

  static BoolFormula falsity() { return BoolFormula(Kind::kFalse); }
  static BoolFormula truth() { return BoolFormula(Kind::kTrue); }
  static BoolFormula atom(Leaf leaf) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kLeaf;
    n->leaf = std::move(leaf);
    return BoolFormula(std::move(n));
  }

  static BoolFormula negate(const BoolFormula& f) {
    switch (f.kind()) {
      case Kind::kFalse:
        return truth();
      case Kind::kTrue:
        return falsity();
      case Kind::kNot:
        return f.children()[0];
      default: {
        auto n = std::make_shared<Node>();
        n->kind = Kind::kNot;
        n->children.push_back(f);
        return BoolFormula(std::move(n));
      }
    }
  }

  static BoolFormula conj(std::span<const BoolFormula> parts) { return combine(Kind::kAnd, parts); }
  static BoolFormula disj(std::span<const BoolFormula> parts) { return combine(Kind::kOr, parts); }
  static BoolFormula conj(std::initializer_list<BoolFormula> parts) {
    return combine(Kind::kAnd, std::span<const BoolFormula>(parts.begin(), parts.size()));
  }
  static BoolFormula disj(std::initializer_list<BoolFormula> parts) {
    return combine(Kind::kOr, std::span<const BoolFormula>(parts.begin(), parts.size()));
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is_false() const noexcept { return kind() == Kind::kFalse; }
  bool is_true() const noexcept { return kind() == Kind::kTrue; }
  const Leaf& leaf() const {
    if (kind() != Kind::kLeaf) throw std::logic_error("formula node is not a leaf");
    return node_->leaf;
  }
  std::span<const BoolFormula> children() const noexcept { return node_->children; }

  // Fold the tree given a truth value for each leaf.
  template <class LeafPredicate>
  bool evaluate(LeafPredicate&& holds) const {
    switch (kind()) {
      case Kind::kFalse:
        return false;
      case Kind::kTrue:
        return true;
      case Kind::kLeaf:
        return holds(node_->leaf);
      case Kind::kNot:
        return !children()[0].evaluate(holds);
      case Kind::kAnd:
        for (const auto& c : children())
          if (!c.evaluate(holds)) return false;
        return true;
      case Kind::kOr:
        for (const auto& c : children())
          if (c.evaluate(holds)) return true;
        return false;
    }
    return false;
  }

  // Distinct leaves in first-occurrence order.
  std::vector<Leaf> leaves() const {
    std::vector<Leaf> out;
    collect(out);
    return out;
  }

  friend bool operator==(const BoolFormula& l, const BoolFormula& r) {
    if (l.node_ == r.node_) return true;
    if (l.kind() != r.kind()) return false;
    if (l.kind() == Kind::kLeaf) return l.node_->leaf == r.node_->leaf;
    return l.node_->children == r.node_->children;
  }

 private:
  struct Node {
    Kind kind = Kind::kFalse;
    Leaf leaf{};
    std::vector<BoolFormula> children;
  };

  explicit BoolFormula(Kind constant) {
    auto n = std::make_shared<Node>();
    n->kind = constant;
    node_ = std::move(n);
  }
  explicit BoolFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static BoolFormula combine(Kind op, std::span<const BoolFormula> parts) {
    const Kind absorbing = op == Kind::kAnd ? Kind::kFalse : Kind::kTrue;
    const Kind neutral = op == Kind::kAnd ? Kind::kTrue : Kind::kFalse;
    std::vector<BoolFormula> flat;
    auto push = [&](const BoolFormula& f) {
      for (const auto& g : flat)
        if (g == f) return;
      flat.push_back(f);
    };
    for (const auto& p : parts) {
      if (p.kind() == absorbing) return p;
      if (p.kind() == neutral) continue;
      if (p.kind() == op) {
        for (const auto& c : p.children()) push(c);
      } else {
        push(p);
      }
    }
    for (const auto& f : flat) {
      for (const auto& g : flat) {
        if (g.kind() == Kind::kNot && g.children()[0] == f)
          return BoolFormula(absorbing);
      }
    }
    if (flat.empty()) return BoolFormula(neutral);
    if (flat.size() == 1) return flat.front();
    auto n = std::make_shared<Node>();
    n->kind = op;
    n->children = std::move(flat);
    return BoolFormula(std::move(n));
  }

  void collect(std::vector<Leaf>& out) const {
    if (kind() == Kind::kLeaf) {
      for (const auto& l : out)
        if (l == node_->leaf) return;
      out.push_back(node_->leaf);
      return;
    }
    for (const auto& c : children()) c.collect(out);
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace pervlen
