#pragma once

// Shared fixtures for the test suite: a small 9-element boolean matrix
// monoid, the presentations used throughout, and brute-force reference
// implementations that the fast code is checked against.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <tcenum/tcenum.hpp>

namespace fixtures {

using namespace tcenum;

// The three 3x3 boolean matrices generating a 9-element monoid.
inline std::vector<BooleanMat> boolmat_gens() {
  return {BooleanMat::parse("110;011;101"),
          BooleanMat::parse("110;010;001"),
          BooleanMat::parse("101;110;011")};
}

inline CayleyResult<BooleanMat> boolmat_cayley() {
  return right_cayley(boolmat_gens());
}

// A monoid presentation for the same monoid, alphabet {a, b, c}.
inline std::string boolmat_pres_text() {
  return "alphabet: abc\n"
         "relation: ac = aa\n"
         "relation: bb = b\n"
         "relation: ca = aa\n"
         "relation: cb = bc\n"
         "relation: cc = aa\n"
         "relation: aaa = aa\n"
         "relation: aba = aa\n";
}

inline Presentation boolmat_pres() {
  return parse_presentation(boolmat_pres_text()).presentation;
}

// Same presentation plus the generating pair (a, b).
inline ParsedInput pair_ab_input() {
  return parse_presentation(boolmat_pres_text() + "pair: a = b\nkind: right\n");
}

// <a, b | a^3 = a, b^3 = b, (ab)^2 = a^2>, a 15-element monoid.
inline Presentation ab_pres() {
  return parse_presentation(
             "alphabet: ab\n"
             "relation: aaa = a\n"
             "relation: bbb = b\n"
             "relation: abab = aa\n")
      .presentation;
}

inline Word word(std::initializer_list<Letter> ls) {
  return Word(ls);
}

inline Word random_word(std::mt19937& rng, std::size_t alphabet,
                        std::size_t max_len, std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<Letter> letter(
      0, static_cast<Letter>(alphabet - 1));
  Word out(len(rng));
  for (auto& a : out) {
    a = letter(rng);
  }
  return out;
}

// All words over the alphabet up to the given length, in short-lex order.
inline std::vector<Word> words_up_to(std::size_t alphabet, std::size_t len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t l = 1; l <= len; ++l) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Letter a = 0; a < alphabet; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

// Brute-force short-lex minimal access word for every node of a graph.
inline std::map<Node, Word> minimal_words(WordGraph const& g,
                                          std::size_t max_len) {
  std::map<Node, Word> out;
  for (auto const& w : words_up_to(g.alphabet_size(), max_len)) {
    auto f = g.follow(0, w);
    if (f.prefix_len == w.size() && out.find(f.last) == out.end()) {
      out[f.last] = w;
    }
  }
  return out;
}

// Quotient iterated until no coincidences remain: the true deterministic
// quotient by the closure of the given partition.  The partition is closed
// in place so callers can translate further pairs through it.
inline WordGraph closure_quotient(WordGraph g, UnionFind& uf) {
  while (true) {
    auto [q, coincidences] = quotient(g, uf);
    if (coincidences.empty()) {
      return std::move(q);
    }
    for (auto [x, y] : coincidences) {
      uf.unite(x, y);
    }
  }
}

// Partition of the set of active nodes as a set of sets, for order-free
// comparisons.
inline std::set<std::set<Node>> as_partition(std::vector<Node> const& roots,
                                             std::vector<char> const& keep) {
  std::map<Node, std::set<Node>> classes;
  for (Node i = 0; i < roots.size(); ++i) {
    if (keep.empty() || keep[i]) {
      classes[roots[i]].insert(i);
    }
  }
  std::set<std::set<Node>> out;
  for (auto& [root, members] : classes) {
    out.insert(std::move(members));
  }
  return out;
}

}  // namespace fixtures
