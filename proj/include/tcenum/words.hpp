#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tcenum {

using Letter = std::uint32_t;
using Node = std::uint32_t;

// Letters are dense 0-based indices; printable names live in a parser-side
// symbol table only.
using Word = std::vector<Letter>;

inline constexpr Node UNDEFINED = std::numeric_limits<Node>::max();
inline constexpr std::size_t MAX_ALPHABET = 64;
inline constexpr std::size_t MAX_WORD_LEN = std::size_t(1) << 16;

struct Relation {
  Word lhs;
  Word rhs;

  friend bool operator==(Relation const& x, Relation const& y) {
    return x.lhs == y.lhs && x.rhs == y.rhs;
  }
};

enum class CongruenceKind { right, left, twosided };

struct Presentation {
  std::size_t alphabet_size = 0;
  std::vector<Relation> relations;
  bool has_zero = false;
  Letter zero_letter = 0;

  void validate() const {
    if (alphabet_size == 0) {
      throw std::invalid_argument("empty alphabet");
    }
    if (alphabet_size > MAX_ALPHABET) {
      throw std::invalid_argument("alphabet size exceeds 64");
    }
    if (has_zero && zero_letter >= alphabet_size) {
      throw std::invalid_argument("zero letter out of range");
    }
    for (auto const& rel : relations) {
      for (Word const* w : {&rel.lhs, &rel.rhs}) {
        if (w->size() > MAX_WORD_LEN) {
          throw std::invalid_argument("relation word too long");
        }
        for (Letter a : *w) {
          if (a >= alphabet_size) {
            throw std::invalid_argument("letter out of range in relation");
          }
        }
      }
    }
  }
};

struct GeneratingPairs {
  std::vector<Relation> pairs;
};

inline Word reverse_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Relation reverse_relation(Relation r) {
  return {reverse_word(std::move(r.lhs)), reverse_word(std::move(r.rhs))};
}

// Reduces a left-congruence enumeration to a right one: every relation and
// pair side is reversed.
inline std::pair<Presentation, GeneratingPairs>
reverse_presentation(Presentation p, GeneratingPairs s) {
  for (auto& rel : p.relations) {
    rel = reverse_relation(std::move(rel));
  }
  for (auto& pr : s.pairs) {
    pr = reverse_relation(std::move(pr));
  }
  return {std::move(p), std::move(s)};
}

inline bool lex_less(Word const& u, Word const& v,
                     std::vector<Letter> const& rank) {
  std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[u[i]] != rank[v[i]]) {
      return rank[u[i]] < rank[v[i]];
    }
  }
  return u.size() < v.size();
}

// Short-lex: |u| < |v|, or equal lengths and u lexicographically first under
// the given letter ranking. This is a reduction ordering.
inline bool shortlex_less(Word const& u, Word const& v,
                          std::vector<Letter> const& rank) {
  if (u.size() != v.size()) {
    return u.size() < v.size();
  }
  return lex_less(u, v, rank);
}

inline std::vector<Letter> natural_order(std::size_t alphabet_size) {
  std::vector<Letter> rank(alphabet_size);
  for (std::size_t i = 0; i < alphabet_size; ++i) {
    rank[i] = static_cast<Letter>(i);
  }
  return rank;
}

inline bool shortlex_less(Word const& u, Word const& v) {
  if (u.size() != v.size()) {
    return u.size() < v.size();
  }
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string const& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept {
    return line_;
  }

 private:
  std::size_t line_;
};

struct ParsedInput {
  Presentation presentation;
  GeneratingPairs pairs;
  CongruenceKind kind = CongruenceKind::right;
  std::string letters;  // index -> printable character
};

namespace detail {

inline std::string trim(std::string const& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// The literal "1" denotes the empty word.
inline Word parse_word(std::string const& s,
                       std::unordered_map<char, Letter> const& index,
                       std::size_t lineno) {
  if (s == "1") {
    return {};
  }
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    auto it = index.find(c);
    if (it == index.end()) {
      throw ParseError(lineno,
                       std::string("undeclared letter '") + c + "'");
    }
    w.push_back(it->second);
  }
  if (w.size() > MAX_WORD_LEN) {
    throw ParseError(lineno, "word too long");
  }
  return w;
}

inline std::string word_to_string(Word const& w, std::string const& letters) {
  if (w.empty()) {
    return "1";
  }
  std::string s;
  s.reserve(w.size());
  for (Letter a : w) {
    s.push_back(letters.at(a));
  }
  return s;
}

// Line-oriented presentation format:
//   # comment
//   alphabet: <letters>
//   relation: <word> = <word>
//   pair: <word> = <word>
//   kind: right|left|twosided
//   zero: <letter>
inline ParsedInput parse_presentation(std::string const& text) {
  ParsedInput out;
  std::unordered_map<char, Letter> index;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool saw_alphabet = false;

  auto parse_sides = [&](std::string const& rest,
                         std::size_t ln) -> Relation {
    auto eq = rest.find('=');
    if (eq == std::string::npos) {
      throw ParseError(ln, "expected '<word> = <word>'");
    }
    auto lhs = detail::trim(rest.substr(0, eq));
    auto rhs = detail::trim(rest.substr(eq + 1));
    if (lhs.empty() || rhs.empty()) {
      throw ParseError(ln, "empty side in '<word> = <word>'");
    }
    return {parse_word(lhs, index, ln), parse_word(rhs, index, ln)};
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError(lineno, "expected '<key>: <value>'");
    }
    std::string key = detail::trim(line.substr(0, colon));
    std::string rest = detail::trim(line.substr(colon + 1));

    if (key == "alphabet") {
      if (saw_alphabet) {
        throw ParseError(lineno, "duplicate alphabet line");
      }
      saw_alphabet = true;
      for (char c : rest) {
        if (c == ' ' || c == '\t') {
          continue;
        }
        if (c == '1') {
          throw ParseError(lineno, "'1' is reserved for the empty word");
        }
        if (index.count(c) != 0) {
          throw ParseError(lineno, std::string("duplicate letter '") + c + "'");
        }
        if (index.size() >= MAX_ALPHABET) {
          throw ParseError(lineno, "alphabet size exceeds 64");
        }
        index[c] = static_cast<Letter>(out.letters.size());
        out.letters.push_back(c);
      }
      out.presentation.alphabet_size = out.letters.size();
    } else if (key == "relation") {
      out.presentation.relations.push_back(parse_sides(rest, lineno));
    } else if (key == "pair") {
      out.pairs.pairs.push_back(parse_sides(rest, lineno));
    } else if (key == "kind") {
      if (rest == "right") {
        out.kind = CongruenceKind::right;
      } else if (rest == "left") {
        out.kind = CongruenceKind::left;
      } else if (rest == "twosided") {
        out.kind = CongruenceKind::twosided;
      } else {
        throw ParseError(lineno, "kind must be right, left, or twosided");
      }
    } else if (key == "zero") {
      if (rest.size() != 1) {
        throw ParseError(lineno, "zero must name a single letter");
      }
      char c = rest[0];
      if (c == '1') {
        throw ParseError(lineno, "'1' is reserved for the empty word");
      }
      auto it = index.find(c);
      Letter z;
      if (it != index.end()) {
        z = it->second;
      } else {
        if (index.size() >= MAX_ALPHABET) {
          throw ParseError(lineno, "alphabet size exceeds 64");
        }
        z = static_cast<Letter>(out.letters.size());
        index[c] = z;
        out.letters.push_back(c);
        out.presentation.alphabet_size = out.letters.size();
      }
      if (out.presentation.has_zero && out.presentation.zero_letter != z) {
        throw ParseError(lineno, "zero letter already fixed");
      }
      out.presentation.has_zero = true;
      out.presentation.zero_letter = z;
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }

  if (!saw_alphabet || out.presentation.alphabet_size == 0) {
    throw ParseError(lineno, "empty alphabet");
  }
  out.presentation.validate();
  return out;
}

}  // namespace tcenum
