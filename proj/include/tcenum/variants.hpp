#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "words.hpp"

namespace tcenum {

struct Strategy {
  enum Kind { hlt, felsch, felsch_mod, alternating } kind = hlt;
  std::size_t hlt_steps = 1;     // alternating only
  std::size_t felsch_steps = 1;  // alternating only
};

inline EnumerationResult run(Session& session, Strategy strategy,
                             Limits limits = {}) {
  switch (strategy.kind) {
    case Strategy::hlt:
      return session.run_hlt(limits);
    case Strategy::felsch:
      return session.run_felsch(limits, false);
    case Strategy::felsch_mod:
      return session.run_felsch(limits, true);
    case Strategy::alternating:
      return session.run_alternating(strategy.hlt_steps,
                                     strategy.felsch_steps, limits);
  }
  throw std::logic_error("run: unknown strategy");
}

// Enumeration for a monoid with zero: the presentation must mark its zero
// letter.  A dedicated node absorbs every letter, and each fresh node gets
// its zero edge at definition time.
inline EnumerationResult run_with_zero(Presentation p, GeneratingPairs s,
                                       Strategy strategy, Limits limits = {}) {
  Session session(std::move(p), std::move(s), CongruenceKind::right,
                  std::nullopt, true);
  return run(session, strategy, limits);
}

// Rees congruence of the right ideal generated by `ideal_words`: a fresh
// zero letter is appended to the alphabet, declared absorbing through the
// with-zero machinery, and each generator of the ideal is paired with it.
inline EnumerationResult run_rees(Presentation p,
                                  std::vector<Word> const& ideal_words,
                                  Strategy strategy, Limits limits = {}) {
  p.validate();
  if (p.has_zero) {
    throw std::invalid_argument("run_rees: presentation already has a zero");
  }
  if (p.alphabet_size + 1 > MAX_ALPHABET) {
    throw std::invalid_argument("run_rees: no room for a zero letter");
  }
  Letter z = static_cast<Letter>(p.alphabet_size);
  p.alphabet_size += 1;
  p.has_zero = true;
  p.zero_letter = z;
  GeneratingPairs s;
  for (Word const& w : ideal_words) {
    s.pairs.push_back({w, Word{z}});
  }
  return run_with_zero(std::move(p), std::move(s), strategy, limits);
}

enum class StephenStatus { closed, node_limit, step_limit };

// Stephen's procedure for the word problem of the monoid presented by p:
// starting from the linear graph of w, elementary expansions add the missing
// side of a relation wherever the other side labels a path, and
// determinations merge clashing targets, until a whole pass changes nothing.
// On the closed graph a word u is accepted iff it labels a path from node 0
// to the accept node, which happens iff u and w represent the same element.
class StephenGraph {
 public:
  StephenGraph(Presentation p, Word w) : session_(std::move(p)) {
    Node cur = 0;
    for (Letter a : w) {
      Node t = session_.graph().target_raw(cur, a);
      cur = (t == UNDEFINED) ? session_.tc1(cur, a) : t;
    }
    accept_ = cur;
  }

  StephenStatus run(Limits limits = {}) {
    ran_ = true;
    status_ = StephenStatus::closed;
    session_.begin_limits(limits);
    try {
      bool changed = true;
      while (changed) {
        changed = false;
        for (Node n = 0; n < session_.graph().next_id(); ++n) {
          if (!session_.graph().is_active(n)) {
            continue;
          }
          for (auto const& rel : session_.relations()) {
            // Whichever side labels a full path forces the other side to
            // exist and agree.
            changed |= expand(n, rel.lhs, rel.rhs);
            if (!session_.graph().is_active(n)) {
              break;
            }
            changed |= expand(n, rel.rhs, rel.lhs);
            if (!session_.graph().is_active(n)) {
              break;
            }
          }
        }
      }
    } catch (NodeLimitError const&) {
      status_ = StephenStatus::node_limit;
    } catch (StepLimitError const&) {
      status_ = StephenStatus::step_limit;
    }
    accept_ = session_.find(accept_);
    return status_;
  }

  bool closed() const noexcept {
    return ran_ && status_ == StephenStatus::closed;
  }

  bool accepts(Word const& u) const {
    if (!closed()) {
      throw std::logic_error("StephenGraph::accepts: graph not closed");
    }
    auto f = session_.graph().follow(0, u);
    return f.prefix_len == u.size() && f.last == accept_;
  }

  WordGraph const& graph() const {
    return session_.graph();
  }

  Node accept_node() const noexcept {
    return accept_;
  }

  Stats const& stats() const noexcept {
    return session_.stats();
  }

 private:
  // If `from` labels a full path at n, make `to` label one as well (adding
  // nodes for all but its last letter) and close the diagram with tc2; any
  // coincidence is resolved at once.  Returns whether the graph changed.
  bool expand(Node n, Word const& from, Word const& to) {
    WordGraph const& g = session_.graph();
    auto f = g.follow(n, from);
    if (f.prefix_len != from.size()) {
      return false;
    }
    auto t = g.follow(n, to);
    if (t.prefix_len == to.size()) {
      if (t.last == f.last) {
        return false;
      }
      session_.note_coincidence(t.last, f.last);
      session_.tc3();
      return true;
    }
    Node cur = t.last;
    for (std::size_t i = t.prefix_len; i + 1 < to.size(); ++i) {
      cur = session_.tc1(cur, to[i]);
    }
    if (session_.tc2(n, from, to) == Tc2Outcome::coincidence_recorded) {
      session_.tc3();
    }
    return true;
  }

  Session session_;
  Node accept_ = 0;
  StephenStatus status_ = StephenStatus::closed;
  bool ran_ = false;
};

}  // namespace tcenum
