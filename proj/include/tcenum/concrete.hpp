#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "union_find.hpp"
#include "word_graph.hpp"
#include "words.hpp"

namespace tcenum {

// Square matrix over the boolean semiring.  Literal form is one row of 0/1
// digits per ';'-separated field, e.g. "110;011;101".
class BooleanMat {
 public:
  explicit BooleanMat(std::size_t n) : n_(n), bits_(n * n, 0) {}

  static BooleanMat identity(std::size_t n) {
    BooleanMat m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m.set(i, i, true);
    }
    return m;
  }

  static BooleanMat parse(std::string const& s) {
    std::vector<std::string> rows;
    std::string cur;
    for (char c : s) {
      if (c == ';') {
        rows.push_back(cur);
        cur.clear();
      } else if (c == '0' || c == '1') {
        cur.push_back(c);
      } else {
        throw std::invalid_argument("BooleanMat::parse: bad character");
      }
    }
    rows.push_back(cur);
    BooleanMat m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw std::invalid_argument("BooleanMat::parse: not square");
      }
      for (std::size_t j = 0; j < rows.size(); ++j) {
        m.set(i, j, rows[i][j] == '1');
      }
    }
    return m;
  }

  std::size_t degree() const noexcept {
    return n_;
  }

  bool get(std::size_t i, std::size_t j) const {
    return bits_[i * n_ + j] != 0;
  }

  void set(std::size_t i, std::size_t j, bool v) {
    bits_[i * n_ + j] = v ? 1 : 0;
  }

  friend BooleanMat operator*(BooleanMat const& x, BooleanMat const& y) {
    if (x.n_ != y.n_) {
      throw std::invalid_argument("BooleanMat: degree mismatch");
    }
    BooleanMat out(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i) {
      for (std::size_t k = 0; k < x.n_; ++k) {
        if (!x.get(i, k)) {
          continue;
        }
        for (std::size_t j = 0; j < x.n_; ++j) {
          if (y.get(k, j)) {
            out.set(i, j, true);
          }
        }
      }
    }
    return out;
  }

  friend bool operator==(BooleanMat const& x, BooleanMat const& y) {
    return x.n_ == y.n_ && x.bits_ == y.bits_;
  }

  // Canonical byte string, used as a hash key.
  std::string key() const {
    return std::string(bits_.begin(), bits_.end());
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

// Transformation of {0, ..., n-1}, acting on the right; composition is left
// to right.  Literal form: "[1,0,2]" maps 0->1, 1->0, 2->2.
class Transformation {
 public:
  explicit Transformation(std::vector<std::uint32_t> images)
      : img_(std::move(images)) {
    for (std::uint32_t x : img_) {
      if (x >= img_.size()) {
        throw std::invalid_argument("Transformation: image out of range");
      }
    }
  }

  static Transformation identity(std::size_t n) {
    std::vector<std::uint32_t> img(n);
    for (std::size_t i = 0; i < n; ++i) {
      img[i] = static_cast<std::uint32_t>(i);
    }
    return Transformation(std::move(img));
  }

  static Transformation parse(std::string const& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
      throw std::invalid_argument("Transformation::parse: expected [..]");
    }
    std::vector<std::uint32_t> img;
    std::string num;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      char c = s[i];
      if (c >= '0' && c <= '9') {
        num.push_back(c);
      } else if (c == ',' || c == ' ') {
        if (!num.empty()) {
          img.push_back(static_cast<std::uint32_t>(std::stoul(num)));
          num.clear();
        }
      } else {
        throw std::invalid_argument("Transformation::parse: bad character");
      }
    }
    if (!num.empty()) {
      img.push_back(static_cast<std::uint32_t>(std::stoul(num)));
    }
    return Transformation(std::move(img));
  }

  std::size_t degree() const noexcept {
    return img_.size();
  }

  std::uint32_t operator[](std::size_t i) const {
    return img_[i];
  }

  friend Transformation operator*(Transformation const& x,
                                  Transformation const& y) {
    if (x.degree() != y.degree()) {
      throw std::invalid_argument("Transformation: degree mismatch");
    }
    std::vector<std::uint32_t> img(x.degree());
    for (std::size_t i = 0; i < x.degree(); ++i) {
      img[i] = y.img_[x.img_[i]];
    }
    return Transformation(std::move(img));
  }

  friend bool operator==(Transformation const& x, Transformation const& y) {
    return x.img_ == y.img_;
  }

  std::string key() const {
    return std::string(reinterpret_cast<char const*>(img_.data()),
                       img_.size() * sizeof(std::uint32_t));
  }

 private:
  std::vector<std::uint32_t> img_;
};

class ElementLimitError : public std::runtime_error {
 public:
  ElementLimitError() : std::runtime_error("element limit reached") {}
};

template <typename Element>
struct CayleyResult {
  WordGraph graph;               // right Cayley graph; node 0 is the identity
  std::vector<Word> reps;        // short-lex minimal word per node
  std::vector<Element> elements;
};

// Breadth-first closure of the generators under right multiplication, nodes
// numbered in short-lex order of their minimal representing words.  Letter i
// is generator i.  Throws ElementLimitError past `limit` elements.
template <typename Element>
CayleyResult<Element> right_cayley(std::vector<Element> const& gens,
                                   std::size_t limit = std::size_t(1) << 20) {
  if (gens.empty()) {
    throw std::invalid_argument("right_cayley: no generators");
  }
  CayleyResult<Element> out{WordGraph(gens.size(), limit), {}, {}};
  std::unordered_map<std::string, Node> seen;
  Element id = Element::identity(gens[0].degree());
  out.elements.push_back(id);
  out.reps.push_back({});
  seen.emplace(id.key(), 0);
  for (Node n = 0; n < out.elements.size(); ++n) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Element prod = out.elements[n] * gens[g];
      auto [it, fresh] = seen.emplace(prod.key(), Node(out.elements.size()));
      if (fresh) {
        if (out.elements.size() >= limit) {
          throw ElementLimitError();
        }
        out.graph.add_node();
        out.elements.push_back(prod);
        Word w = out.reps[n];
        w.push_back(static_cast<Letter>(g));
        out.reps.push_back(std::move(w));
      }
      out.graph.add_edge(n, static_cast<Letter>(g), it->second);
    }
  }
  return out;
}

// Reference oracle for congruence closures on a finite monoid given by its
// Cayley graph: seeds the classes with the generating pairs and propagates
// them under right and/or left multiplication by generators to a fixpoint.
// Returns the class representative (minimum node id) for every node.
template <typename Element>
std::vector<Node> congruence_closure_oracle(CayleyResult<Element> const& c,
                                            GeneratingPairs const& pairs,
                                            CongruenceKind kind) {
  std::size_t n = c.elements.size();
  std::size_t ngens = c.graph.alphabet_size();
  std::unordered_map<std::string, Node> node_of;
  if (kind != CongruenceKind::right) {
    for (Node i = 0; i < n; ++i) {
      node_of.emplace(c.elements[i].key(), i);
    }
  }
  UnionFind uf(n);
  std::vector<std::pair<Node, Node>> work;
  for (auto const& pr : pairs.pairs) {
    for (Word const* w : {&pr.lhs, &pr.rhs}) {
      for (Letter a : *w) {
        if (a >= ngens) {
          throw std::invalid_argument("oracle: pair uses an unknown letter");
        }
      }
    }
    auto fu = c.graph.follow(0, pr.lhs);
    auto fv = c.graph.follow(0, pr.rhs);
    work.push_back({fu.last, fv.last});
  }
  // Extract the generator elements back from the graph's first row.
  std::vector<Element> gens;
  if (kind != CongruenceKind::right) {
    for (std::size_t g = 0; g < ngens; ++g) {
      gens.push_back(c.elements[c.graph.target_raw(0, g)]);
    }
  }
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!uf.unite(x, y)) {
      continue;
    }
    if (kind != CongruenceKind::left) {
      for (std::size_t g = 0; g < ngens; ++g) {
        work.push_back({c.graph.target_raw(x, static_cast<Letter>(g)),
                        c.graph.target_raw(y, static_cast<Letter>(g))});
      }
    }
    if (kind != CongruenceKind::right) {
      for (std::size_t g = 0; g < ngens; ++g) {
        Node gx = node_of.at((gens[g] * c.elements[x]).key());
        Node gy = node_of.at((gens[g] * c.elements[y]).key());
        work.push_back({gx, gy});
      }
    }
  }
  std::vector<Node> out(n);
  for (Node i = 0; i < n; ++i) {
    out[i] = uf.find(i);
  }
  return out;
}

inline std::size_t class_count(std::vector<Node> const& partition) {
  std::size_t k = 0;
  for (Node i = 0; i < partition.size(); ++i) {
    if (partition[i] == i) {
      ++k;
    }
  }
  return k;
}

}  // namespace tcenum
