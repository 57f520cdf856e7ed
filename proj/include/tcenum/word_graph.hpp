#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "union_find.hpp"
#include "words.hpp"

namespace tcenum {

class NodeLimitError : public std::runtime_error {
 public:
  NodeLimitError() : std::runtime_error("node limit reached") {}
};

struct FollowResult {
  Node last;               // last node reached
  std::size_t prefix_len;  // how many letters of the word were consumed
};

// Deterministic word graph: at most one edge per (node, letter).  Node ids
// are issued by a monotone counter and never reused; a merged-away node stays
// as an inactive slot.  Node 0 always exists and every active node is kept
// reachable from it by the callers.
class WordGraph {
 public:
  explicit WordGraph(std::size_t alphabet_size,
                     std::size_t node_cap = std::size_t(1) << 24)
      : alphabet_(alphabet_size), node_cap_(node_cap) {
    if (alphabet_ == 0) {
      throw std::invalid_argument("WordGraph: empty alphabet");
    }
    add_node();  // node 0
  }

  static WordGraph trivial(std::size_t alphabet_size) {
    return WordGraph(alphabet_size);
  }

  std::size_t alphabet_size() const noexcept {
    return alphabet_;
  }

  // One past the largest node id ever issued.
  Node next_id() const noexcept {
    return static_cast<Node>(active_.size());
  }

  std::size_t active_count() const noexcept {
    return num_active_;
  }

  bool is_active(Node n) const noexcept {
    return n < active_.size() && active_[n];
  }

  std::size_t node_cap() const noexcept {
    return node_cap_;
  }

  // The cap bounds the number of simultaneously active nodes.
  void set_node_cap(std::size_t cap) noexcept {
    node_cap_ = cap;
  }

  Node add_node() {
    if (num_active_ + 1 > node_cap_) {
      throw NodeLimitError();
    }
    Node n = next_id();
    forward_.resize(forward_.size() + alphabet_, UNDEFINED);
    preimages_.emplace_back();
    active_.push_back(1);
    ++num_active_;
    return n;
  }

  void add_edge(Node src, Letter a, Node tgt) {
    check_node(src);
    check_node(tgt);
    if (a >= alphabet_) {
      throw std::out_of_range("WordGraph::add_edge: letter out of range");
    }
    Node& slot = forward_[src * alphabet_ + a];
    if (slot != UNDEFINED) {
      throw std::logic_error("WordGraph::add_edge: edge already defined");
    }
    slot = tgt;
    preimages_[tgt].push_back({src, a});
    ++edge_count_;
  }

  Node target_raw(Node src, Letter a) const noexcept {
    return forward_[src * alphabet_ + a];
  }

  std::optional<Node> target(Node src, Letter a) const {
    check_node(src);
    if (a >= alphabet_) {
      throw std::out_of_range("WordGraph::target: letter out of range");
    }
    Node t = target_raw(src, a);
    if (t == UNDEFINED) {
      return std::nullopt;
    }
    return t;
  }

  // Walks w from start as far as edges exist.
  FollowResult follow(Node start, Word const& w) const {
    check_node(start);
    Node cur = start;
    std::size_t i = 0;
    for (; i < w.size(); ++i) {
      Node t = forward_[cur * alphabet_ + w[i]];
      if (t == UNDEFINED) {
        break;
      }
      cur = t;
    }
    return {cur, i};
  }

  // Exact inverse image of (a, tgt): all sources with an a-edge into tgt.
  // The underlying bucket may hold stale entries; they are filtered here.
  std::vector<Node> sources(Letter a, Node tgt) const {
    check_node(tgt);
    std::vector<Node> out;
    for (auto [src, b] : preimages_[tgt]) {
      if (b == a && active_[src] && target_raw(src, b) == tgt) {
        out.push_back(src);
      }
    }
    return out;
  }

  // Merges node `dead` into `keep` (callers pass keep < dead, both active).
  // Out-edges of `dead` migrate to `keep`; clashes between an existing edge
  // of `keep` and a migrated one are reported through `coincidences`.
  // In-edges of `dead` are retargeted at `keep`.  Every edge that is new at
  // its source, or newly retargeted, is reported through `deduction` when
  // one is supplied.
  template <typename DeductionSink>
  void merge(Node keep, Node dead,
             std::vector<std::pair<Node, Node>>& coincidences,
             DeductionSink&& deduction) {
    if (!is_active(keep) || !is_active(dead) || keep >= dead) {
      throw std::logic_error("WordGraph::merge: bad arguments");
    }
    for (Letter a = 0; a < alphabet_; ++a) {
      Node t = forward_[dead * alphabet_ + a];
      forward_[dead * alphabet_ + a] = UNDEFINED;
      if (t == UNDEFINED) {
        continue;
      }
      --edge_count_;
      ++stale_;
      if (t == dead) {
        t = keep;
      }
      Node u = forward_[keep * alphabet_ + a];
      if (u == UNDEFINED) {
        forward_[keep * alphabet_ + a] = t;
        preimages_[t].push_back({keep, a});
        ++edge_count_;
        deduction(keep, a);
      } else if (u != t) {
        coincidences.push_back({u, t});
      }
    }
    for (auto [src, a] : preimages_[dead]) {
      if (src == dead || !active_[src]) {
        continue;
      }
      if (forward_[src * alphabet_ + a] == dead) {
        forward_[src * alphabet_ + a] = keep;
        preimages_[keep].push_back({src, a});
        ++stale_;
        deduction(src, a);
      }
    }
    preimages_[dead].clear();
    active_[dead] = 0;
    --num_active_;
  }

  void merge(Node keep, Node dead,
             std::vector<std::pair<Node, Node>>& coincidences) {
    merge(keep, dead, coincidences, [](Node, Letter) {});
  }

  std::size_t edge_count() const noexcept {
    return edge_count_;
  }

  // Drops stale preimage entries.  Worth doing wholesale after heavy merging
  // rather than eagerly on every retarget.
  void rebuild_preimages() {
    for (auto& bucket : preimages_) {
      bucket.clear();
    }
    for (Node n = 0; n < next_id(); ++n) {
      if (!active_[n]) {
        continue;
      }
      for (Letter a = 0; a < alphabet_; ++a) {
        Node t = forward_[n * alphabet_ + a];
        if (t != UNDEFINED) {
          preimages_[t].push_back({n, a});
        }
      }
    }
    stale_ = 0;
  }

  std::size_t stale_preimages() const noexcept {
    return stale_;
  }

  // Equality of the labelled graphs: same alphabet, same active node ids,
  // same edges.
  friend bool operator==(WordGraph const& x, WordGraph const& y) {
    if (x.alphabet_ != y.alphabet_) {
      return false;
    }
    Node n = std::max(x.next_id(), y.next_id());
    for (Node i = 0; i < n; ++i) {
      bool ax = x.is_active(i);
      bool ay = y.is_active(i);
      if (ax != ay) {
        return false;
      }
      if (!ax) {
        continue;
      }
      for (Letter a = 0; a < x.alphabet_; ++a) {
        if (x.target_raw(i, a) != y.target_raw(i, a)) {
          return false;
        }
      }
    }
    return true;
  }

 private:
  void check_node(Node n) const {
    if (!is_active(n)) {
      throw std::out_of_range("WordGraph: inactive or unknown node");
    }
  }

  // Raw construction helpers used by quotient/standardize/load below.
  void ensure_slots(Node n) {
    while (next_id() < n) {
      forward_.resize(forward_.size() + alphabet_, UNDEFINED);
      preimages_.emplace_back();
      active_.push_back(0);
    }
  }

  void activate(Node n) {
    ensure_slots(n + 1);
    if (!active_[n]) {
      active_[n] = 1;
      ++num_active_;
    }
  }

  void deactivate(Node n) {
    if (active_[n]) {
      active_[n] = 0;
      --num_active_;
    }
  }

  friend std::pair<WordGraph, std::vector<std::pair<Node, Node>>>
  quotient(WordGraph const&, UnionFind&);
  friend std::vector<Node> standardize(WordGraph&,
                                       std::vector<Letter> const&, bool);
  friend WordGraph load_csv(std::string const&, std::size_t);

  std::size_t alphabet_;
  std::size_t node_cap_;
  std::vector<Node> forward_;
  std::vector<std::vector<std::pair<Node, Letter>>> preimages_;
  std::vector<char> active_;
  std::size_t num_active_ = 0;
  std::size_t edge_count_ = 0;
  std::size_t stale_ = 0;
};

inline bool is_complete(WordGraph const& g) {
  for (Node n = 0; n < g.next_id(); ++n) {
    if (!g.is_active(n)) {
      continue;
    }
    for (Letter a = 0; a < g.alphabet_size(); ++a) {
      if (g.target_raw(n, a) == UNDEFINED) {
        return false;
      }
    }
  }
  return true;
}

// True when, from every active node, both sides of every relation label full
// paths with a common endpoint.
inline bool is_compatible(WordGraph const& g,
                          std::vector<Relation> const& rels) {
  for (Node n = 0; n < g.next_id(); ++n) {
    if (!g.is_active(n)) {
      continue;
    }
    for (auto const& rel : rels) {
      auto fu = g.follow(n, rel.lhs);
      auto fv = g.follow(n, rel.rhs);
      if (fu.prefix_len != rel.lhs.size() || fv.prefix_len != rel.rhs.size()
          || fu.last != fv.last) {
        return false;
      }
    }
  }
  return true;
}

// Quotient by the given partition of the nodes.  Each class is relabelled to
// its minimum member.  Where two edges of a class disagree on their target
// class the first one wins and the clash is reported as a coincidence, so
// the result stays deterministic.
inline std::pair<WordGraph, std::vector<std::pair<Node, Node>>>
quotient(WordGraph const& g, UnionFind& partition) {
  partition.extend(g.next_id());
  WordGraph out(g.alphabet_size(), g.node_cap());
  out.ensure_slots(g.next_id());
  std::vector<std::pair<Node, Node>> coincidences;
  for (Node n = 0; n < g.next_id(); ++n) {
    if (g.is_active(n)) {
      out.activate(partition.find(n));
    }
  }
  if (!out.is_active(0)) {
    throw std::logic_error("quotient: node 0 lost");
  }
  for (Node n = 0; n < g.next_id(); ++n) {
    if (!g.is_active(n)) {
      continue;
    }
    Node src = partition.find(n);
    for (Letter a = 0; a < g.alphabet_size(); ++a) {
      Node t = g.target_raw(n, a);
      if (t == UNDEFINED) {
        continue;
      }
      Node tgt = partition.find(t);
      Node existing = out.target_raw(src, a);
      if (existing == UNDEFINED) {
        out.add_edge(src, a, tgt);
      } else if (existing != tgt) {
        coincidences.push_back({existing, tgt});
      }
    }
  }
  return {std::move(out), std::move(coincidences)};
}

// Relabels the nodes so that ids follow the chosen traversal order of the
// minimal access words from node 0, then compacts ids to 0..n-1.  With
// `shortlex` the order is a breadth-first search trying letters by rank;
// otherwise it is the depth-first (lexicographic first-visit) order.
// Returns the permutation applied: perm[old id] = new id, UNDEFINED for
// inactive slots.  Requires every active node reachable from 0.
inline std::vector<Node> standardize(WordGraph& g,
                                     std::vector<Letter> const& letter_order,
                                     bool shortlex = true) {
  if (letter_order.size() != g.alphabet_size()) {
    throw std::invalid_argument("standardize: bad letter order");
  }
  std::vector<Node> perm(g.next_id(), UNDEFINED);
  std::vector<Node> order;
  order.reserve(g.active_count());
  if (shortlex) {
    perm[0] = 0;
    order.push_back(0);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      Node n = order[pos];
      for (Letter a : letter_order) {
        Node t = g.target_raw(n, a);
        if (t != UNDEFINED && perm[t] == UNDEFINED) {
          perm[t] = static_cast<Node>(order.size());
          order.push_back(t);
        }
      }
    }
  } else {
    // Iterative DFS; stack entries remember the next letter rank to try.
    std::vector<std::pair<Node, std::size_t>> stack;
    perm[0] = 0;
    order.push_back(0);
    stack.push_back({0, 0});
    while (!stack.empty()) {
      auto& [n, i] = stack.back();
      if (i == g.alphabet_size()) {
        stack.pop_back();
        continue;
      }
      Node t = g.target_raw(n, letter_order[i]);
      ++i;
      if (t != UNDEFINED && perm[t] == UNDEFINED) {
        perm[t] = static_cast<Node>(order.size());
        order.push_back(t);
        stack.push_back({t, 0});
      }
    }
  }
  if (order.size() != g.active_count()) {
    throw std::logic_error("standardize: active node unreachable from 0");
  }
  std::vector<Node> forward(order.size() * g.alphabet_size(), UNDEFINED);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter a = 0; a < g.alphabet_size(); ++a) {
      Node t = g.target_raw(order[i], a);
      if (t != UNDEFINED) {
        forward[i * g.alphabet_size() + a] = perm[t];
      }
    }
  }
  g.forward_ = std::move(forward);
  g.active_.assign(order.size(), 1);
  g.num_active_ = order.size();
  g.preimages_.assign(order.size(), {});
  g.stale_ = 0;
  g.rebuild_preimages();
  return perm;
}

inline std::vector<Node> standardize(WordGraph& g) {
  return standardize(g, natural_order(g.alphabet_size()), true);
}

// Two complete deterministic graphs describe the same action iff their
// standardized edge tables coincide.
inline bool isomorphic(WordGraph const& x, WordGraph const& y) {
  if (x.alphabet_size() != y.alphabet_size()
      || x.active_count() != y.active_count()) {
    return false;
  }
  if (!is_complete(x) || !is_complete(y)) {
    throw std::invalid_argument("isomorphic: graphs must be complete");
  }
  WordGraph a = x;
  WordGraph b = y;
  standardize(a);
  standardize(b);
  return a == b;
}

inline std::string to_dot(WordGraph const& g,
                          std::string const* letters = nullptr) {
  std::ostringstream out;
  out << "digraph word_graph {\n";
  for (Node n = 0; n < g.next_id(); ++n) {
    if (g.is_active(n)) {
      out << "  n" << n << ";\n";
    }
  }
  for (Node n = 0; n < g.next_id(); ++n) {
    if (!g.is_active(n)) {
      continue;
    }
    for (Letter a = 0; a < g.alphabet_size(); ++a) {
      Node t = g.target_raw(n, a);
      if (t == UNDEFINED) {
        continue;
      }
      out << "  n" << n << " -> n" << t << " [label=\"";
      if (letters != nullptr) {
        out << letters->at(a);
      } else {
        out << a;
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

// Flat dump of the forward table, one "node,letter,target" line per edge.
// Isolated nodes other than 0 are not representable in this format.
inline std::string dump_csv(WordGraph const& g) {
  std::ostringstream out;
  for (Node n = 0; n < g.next_id(); ++n) {
    if (!g.is_active(n)) {
      continue;
    }
    for (Letter a = 0; a < g.alphabet_size(); ++a) {
      Node t = g.target_raw(n, a);
      if (t != UNDEFINED) {
        out << n << ',' << a << ',' << t << '\n';
      }
    }
  }
  return out.str();
}

inline WordGraph load_csv(std::string const& text, std::size_t alphabet_size) {
  WordGraph g(alphabet_size);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    unsigned long src = 0;
    unsigned long a = 0;
    unsigned long tgt = 0;
    char c1 = 0;
    char c2 = 0;
    if (!(fields >> src >> c1 >> a >> c2 >> tgt) || c1 != ',' || c2 != ',') {
      throw std::invalid_argument("load_csv: bad line '" + line + "'");
    }
    g.activate(static_cast<Node>(src));
    g.activate(static_cast<Node>(tgt));
    g.add_edge(static_cast<Node>(src), static_cast<Letter>(a),
               static_cast<Node>(tgt));
  }
  return g;
}

}  // namespace tcenum
