#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "words.hpp"

namespace tcenum {

// Disjoint sets over node ids 0..n-1.  The representative of a class is
// always its minimum element: unions link the larger root under the smaller
// one, and path compression only ever moves parent pointers downwards.
class UnionFind {
 public:
  UnionFind() = default;

  explicit UnionFind(std::size_t n) {
    extend(n);
  }

  std::size_t size() const noexcept {
    return parent_.size();
  }

  // Grows the universe to n singleton classes (no-op if already that large).
  void extend(std::size_t n) {
    while (parent_.size() < n) {
      parent_.push_back(static_cast<Node>(parent_.size()));
    }
  }

  Node find(Node x) {
    if (x >= parent_.size()) {
      throw std::out_of_range("UnionFind::find: id out of range");
    }
    Node root = x;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[x] != root) {
      Node next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Merges the classes of x and y; returns true if they were distinct.
  bool unite(Node x, Node y) {
    Node rx = find(x);
    Node ry = find(y);
    if (rx == ry) {
      return false;
    }
    if (rx > ry) {
      std::swap(rx, ry);
    }
    parent_[ry] = rx;
    return true;
  }

  bool is_root(Node x) {
    return find(x) == x;
  }

 private:
  std::vector<Node> parent_;
};

}  // namespace tcenum
