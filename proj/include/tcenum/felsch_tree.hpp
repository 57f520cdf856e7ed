#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "words.hpp"

namespace tcenum {

namespace detail {

struct WordHash {
  std::size_t operator()(Word const& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter a : w) {
      h ^= a;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace detail

// Index of the contiguous subwords of the relation words.  Tree nodes are
// the subwords themselves (including the empty word); there is an edge from
// u to au for each letter a such that au is again a subword.  Each node
// carries the list of relations having it as a prefix of either side, which
// is exactly what a backtrack search for applicable relations needs.
class FelschTree {
 public:
  explicit FelschTree(Presentation const& p)
      : alphabet_(p.alphabet_size) {
    for (auto const& rel : p.relations) {
      for (Word const* w : {&rel.lhs, &rel.rhs}) {
        for (std::size_t i = 0; i <= w->size(); ++i) {
          for (std::size_t j = i; j <= w->size(); ++j) {
            intern(Word(w->begin() + i, w->begin() + j));
          }
        }
      }
    }
    children_.assign(words_.size() * alphabet_, NO_NODE);
    for (std::uint32_t id = 0; id < words_.size(); ++id) {
      Word const& w = words_[id];
      if (w.empty()) {
        continue;
      }
      Word parent(w.begin() + 1, w.end());
      auto it = index_.find(parent);
      // Every proper suffix of a subword is again a subword.
      children_[it->second * alphabet_ + w.front()] = id;
    }
    iota_.assign(words_.size(), {});
    for (std::uint32_t r = 0; r < p.relations.size(); ++r) {
      for (Word const* w : {&p.relations[r].lhs, &p.relations[r].rhs}) {
        for (std::size_t len = 0; len <= w->size(); ++len) {
          auto& bucket = iota_[index_.at(Word(w->begin(), w->begin() + len))];
          if (bucket.empty() || bucket.back() != r) {
            bucket.push_back(r);
          }
        }
      }
    }
  }

  std::size_t node_count() const noexcept {
    return words_.size();
  }

  std::optional<std::uint32_t> node_of(Word const& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<std::uint32_t> letter_node(Letter a) const {
    return node_of(Word{a});
  }

  // The node for a·u, if that word is again a subword.
  std::optional<std::uint32_t> extension(std::uint32_t node, Letter a) const {
    std::uint32_t c = children_[node * alphabet_ + a];
    if (c == NO_NODE) {
      return std::nullopt;
    }
    return c;
  }

  // Indices of the relations having this node's word as a prefix of a side.
  std::vector<std::uint32_t> const& relations_at(std::uint32_t node) const {
    return iota_.at(node);
  }

  Word const& word_at(std::uint32_t node) const {
    return words_.at(node);
  }

  std::size_t alphabet_size() const noexcept {
    return alphabet_;
  }

 private:
  static constexpr std::uint32_t NO_NODE = 0xffffffffu;

  void intern(Word w) {
    auto it = index_.find(w);
    if (it == index_.end()) {
      index_.emplace(w, static_cast<std::uint32_t>(words_.size()));
      words_.push_back(std::move(w));
    }
  }

  std::size_t alphabet_;
  std::unordered_map<Word, std::uint32_t, detail::WordHash> index_;
  std::vector<Word> words_;
  std::vector<std::uint32_t> children_;
  std::vector<std::vector<std::uint32_t>> iota_;
};

}  // namespace tcenum
