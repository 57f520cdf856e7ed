#pragma once

#include <cassert>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "felsch_tree.hpp"
#include "union_find.hpp"
#include "word_graph.hpp"
#include "words.hpp"

namespace tcenum {

class StepLimitError : public std::runtime_error {
 public:
  StepLimitError() : std::runtime_error("step limit reached") {}
};

struct Limits {
  std::size_t max_nodes = std::size_t(1) << 24;  // simultaneously active
  std::size_t max_steps = std::numeric_limits<std::size_t>::max();
};

struct Stats {
  std::size_t tc1 = 0;  // node definitions
  std::size_t tc2 = 0;  // relation traces
  std::size_t tc3 = 0;  // class merges
  std::size_t nodes_defined = 0;  // nodes issued after the start graph
  std::size_t peak_active = 0;

  std::size_t total() const noexcept {
    return tc1 + tc2 + tc3;
  }
};

enum class EnumStatus { complete, node_limit, step_limit };

enum class Tc2Outcome {
  edge_defined,
  coincidence_recorded,
  incomplete,
  already_compatible,
};

struct EnumerationResult {
  EnumStatus status;
  WordGraph graph;  // standardized iff status == complete
  std::size_t class_count = 0;
  Stats stats;
  CongruenceKind kind = CongruenceKind::right;
};

// One congruence enumeration over a fixed presentation, generating pairs and
// congruence kind.  The primitive steps (tc1/tc2/tc3) are public so drivers
// and tests can exercise them directly; run_hlt/run_felsch/run_alternating
// are the complete strategies.
class Session {
 public:
  Session(Presentation p, GeneratingPairs s = {},
          CongruenceKind kind = CongruenceKind::right,
          std::optional<WordGraph> start = std::nullopt,
          bool with_zero = false)
      : kind_(kind) {
    p.validate();
    for (auto const& pr : s.pairs) {
      for (Word const* w : {&pr.lhs, &pr.rhs}) {
        for (Letter a : *w) {
          if (a >= p.alphabet_size) {
            throw std::invalid_argument("Session: pair letter out of range");
          }
        }
      }
    }
    if (kind == CongruenceKind::left) {
      auto rev = reverse_presentation(std::move(p), std::move(s));
      p = std::move(rev.first);
      s = std::move(rev.second);
    }
    pres_ = std::move(p);
    if (kind == CongruenceKind::twosided) {
      // A two-sided congruence is the least right congruence for the
      // presentation extended by the pairs themselves.
      for (auto& pr : s.pairs) {
        pres_.relations.push_back(std::move(pr));
      }
      s.pairs.clear();
    }
    pairs_ = std::move(s.pairs);
    memo_enabled_ = pres_.relations.size() <= 64;

    if (start.has_value()) {
      if (with_zero) {
        throw std::invalid_argument(
            "Session: start graph and zero mode are exclusive");
      }
      if (start->alphabet_size() != pres_.alphabet_size) {
        throw std::invalid_argument("Session: start graph alphabet mismatch");
      }
      graph_ = std::move(*start);
    } else {
      graph_ = WordGraph(pres_.alphabet_size);
    }
    uf_.extend(graph_->next_id());
    rel_done_.assign(graph_->next_id(), 0);

    if (with_zero) {
      if (!pres_.has_zero) {
        throw std::invalid_argument("Session: presentation has no zero");
      }
      zero_mode_ = true;
      // Step Z bootstrap: the zero class gets its own node with a loop for
      // every letter, and node 0 maps to it under the zero letter.
      Node omega = tc1(0, pres_.zero_letter);
      for (Letter a = 0; a < pres_.alphabet_size; ++a) {
        graph_->add_edge(omega, a, omega);
        push_deduction(omega, a);
      }
      zero_node_ = omega;
      have_zero_node_ = true;
    }

    // Initialisation: make both sides of every generating pair label full
    // paths from node 0, then trace each pair there.
    for (auto const& pr : pairs_) {
      ensure_path(0, pr.lhs);
      ensure_path(0, pr.rhs);
    }
    for (auto const& pr : pairs_) {
      tc2(0, pr.lhs, pr.rhs);
    }
  }

  WordGraph const& graph() const {
    return *graph_;
  }

  UnionFind& partition() {
    return uf_;
  }

  Stats const& stats() const noexcept {
    return stats_;
  }

  std::size_t pending_coincidences() const noexcept {
    return coincidences_.size();
  }

  std::size_t pending_deductions() const noexcept {
    return deductions_.size();
  }

  std::vector<Relation> const& relations() const noexcept {
    return pres_.relations;
  }

  // Optional mid-run relabelling: every `interval` strategy macro-steps the
  // graph is standardized, provided no coincidences or deductions are
  // pending.  Off by default.
  void set_standardize_interval(std::size_t interval) noexcept {
    standardize_interval_ = interval;
  }

  void set_deduction_cap(std::size_t cap) noexcept {
    deduction_cap_ = cap;
  }

  // TC1: issues a fresh node beta and the edge (alpha, a, beta).
  Node tc1(Node alpha, Letter a) {
    if (!graph_->is_active(alpha)) {
      throw std::logic_error("tc1: inactive node");
    }
    if (graph_->target_raw(alpha, a) != UNDEFINED) {
      throw std::logic_error("tc1: edge already defined");
    }
    check_step();
    Node beta = graph_->add_node();
    uf_.extend(graph_->next_id());
    rel_done_.push_back(0);
    ++stats_.tc1;
    ++stats_.nodes_defined;
    stats_.peak_active = std::max(stats_.peak_active, graph_->active_count());
    if (waitlist_mode_) {
      std::size_t nrels = pres_.relations.size();
      queued_.push_back(0);
      wait_.emplace_back();
      for (std::uint32_t r = 0; r < nrels; ++r) {
        trace_.push_back({beta, beta, 0, 0, 0});
      }
      for (std::uint32_t r = 0; r < nrels; ++r) {
        enqueue(beta, r);
      }
    }
    graph_->add_edge(alpha, a, beta);
    push_deduction(alpha, a);
    if (have_zero_node_) {
      Node omega = uf_.find(zero_node_);
      if (graph_->target_raw(beta, pres_.zero_letter) == UNDEFINED) {
        graph_->add_edge(beta, pres_.zero_letter, omega);
        push_deduction(beta, pres_.zero_letter);
      }
    }
    return beta;
  }

  // TC2 for an arbitrary pair of words at alpha.  An empty side stands for
  // the empty path at alpha itself.
  Tc2Outcome tc2(Node alpha, Word const& u, Word const& v) {
    check_step();
    ++stats_.tc2;
    auto fu = graph_->follow(alpha, u);
    auto fv = graph_->follow(alpha, v);
    bool u_full = fu.prefix_len == u.size();
    bool v_full = fv.prefix_len == v.size();
    if (u_full && v_full) {
      if (fu.last == fv.last) {
        return Tc2Outcome::already_compatible;
      }
      coincidences_.push_back({fu.last, fv.last});
      return Tc2Outcome::coincidence_recorded;
    }
    if (u_full && fv.prefix_len + 1 == v.size()) {
      graph_->add_edge(fv.last, v.back(), fu.last);
      push_deduction(fv.last, v.back());
      return Tc2Outcome::edge_defined;
    }
    if (v_full && fu.prefix_len + 1 == u.size()) {
      graph_->add_edge(fu.last, u.back(), fv.last);
      push_deduction(fu.last, u.back());
      return Tc2Outcome::edge_defined;
    }
    return Tc2Outcome::incomplete;
  }

  // TC2 for a numbered relation of the presentation.  Once a relation is
  // fully traced at a node it stays compatible there for the rest of the
  // run (edges are never removed from surviving nodes), so the outcome is
  // memoised per node.
  Tc2Outcome tc2(Node alpha, std::size_t rel) {
    if (memo_enabled_ && (rel_done_[alpha] >> rel & 1) != 0) {
      return Tc2Outcome::already_compatible;
    }
    auto const& r = pres_.relations[rel];
    Tc2Outcome out = tc2(alpha, r.lhs, r.rhs);
    if (memo_enabled_ && out != Tc2Outcome::incomplete) {
      rel_done_[alpha] |= std::uint64_t(1) << rel;
    }
    return out;
  }

  // TC3: drains the coincidence queue, merging each recorded pair of
  // classes into the class of the smaller id.  Migrated or retargeted edges
  // feed the deduction stack; clashes re-enter the queue.
  void tc3() {
    std::size_t merged = 0;
    std::size_t active_before = graph_->active_count();
    while (!coincidences_.empty()) {
      auto [x, y] = coincidences_.back();
      coincidences_.pop_back();
      Node rx = uf_.find(x);
      Node ry = uf_.find(y);
      if (rx == ry) {
        continue;
      }
      check_step();
      ++stats_.tc3;
      uf_.unite(rx, ry);
      Node keep = std::min(rx, ry);
      Node dead = std::max(rx, ry);
      graph_->merge(keep, dead, coincidences_,
                    [this](Node n, Letter a) { push_deduction(n, a); });
      if (waitlist_mode_) {
        // Traces parked on the dead node now block on the survivor; some of
        // their missing edges may have just been filled, so re-run them all.
        auto& dw = wait_[dead];
        wait_[keep].insert(wait_[keep].end(), dw.begin(), dw.end());
        dw.clear();
        wake_node(keep);
      }
      ++merged;
    }
    // Heavy merging leaves the preimage buckets mostly stale; rebuild them
    // wholesale rather than paying for the filtering on every lookup.
    if (merged > active_before / 2
        || graph_->stale_preimages() > graph_->edge_count()) {
      graph_->rebuild_preimages();
    }
  }

  // Processes pending deductions with the backtrack search over the Felsch
  // tree: for each new edge (alpha, a), every relation with a prefix ending
  // in `a` reachable backwards from alpha is retraced.  After each search
  // the coincidence queue is drained.
  void process_deductions() {
    if (!tree_.has_value()) {
      tree_.emplace(pres_);
    }
    while (!deductions_.empty() || deductions_overflowed_) {
      if (deductions_overflowed_) {
        // Fallback: one full sweep replaces the lost stack.
        deductions_overflowed_ = false;
        deductions_.clear();
        sweep_tc2();
        tc3();
        continue;
      }
      auto [alpha, a] = deductions_.back();
      deductions_.pop_back();
      if (!graph_->is_active(alpha)) {
        continue;  // stale entry
      }
      auto t = tree_->letter_node(a);
      if (t.has_value()) {
        backtrack(alpha, *t);
      }
      tc3();
    }
  }

  EnumerationResult run_hlt(Limits limits = {}) {
    return run_guarded(limits, [this] {
      tc3();
      bool need_fill = hlt_fill_needed();
      while (true) {
        bool changed = false;
        for (Node alpha = hlt_cursor_; alpha < graph_->next_id(); ++alpha) {
          if (!graph_->is_active(alpha)) {
            continue;
          }
          changed |= hlt_node(alpha, need_fill);
          hlt_cursor_ = alpha + 1;
          macro_step();
        }
        tc3();
        if (terminated()) {
          return;
        }
        if (!changed) {
          // Nothing moved in a whole pass yet the test fails: force the
          // remaining consequences out and re-check.
          sweep_tc2();
          tc3();
          if (terminated()) {
            return;
          }
          throw std::logic_error("run_hlt: stuck without progress");
        }
        hlt_cursor_ = 0;
      }
    });
  }

  EnumerationResult run_felsch(Limits limits = {}, bool modified = false) {
    if (!modified && memo_enabled_) {
      return run_felsch_plain_tracked(limits);
    }
    return run_guarded(limits, [this, modified] {
      tc3();
      if (!modified) {
        deductions_.clear();
        deductions_overflowed_ = false;
      }
      while (true) {
        auto gap = next_gap();
        if (!gap.has_value()) {
          tc3();
          if (terminated()) {
            return;
          }
          sweep_tc2();
          tc3();
          if (terminated()) {
            return;
          }
          throw std::logic_error("run_felsch: stuck without progress");
        }
        tc1(gap->first, gap->second);
        if (modified) {
          process_deductions();
        } else {
          sweep_tc2();
          tc3();
          deductions_.clear();
          deductions_overflowed_ = false;
        }
        macro_step();
      }
    });
  }

  // Plain Felsch with incremental sweeps.  Observably equivalent to a full
  // TC2 pass over every node and relation after each definition: a trace
  // that stalled on a missing edge is parked on the node that lacks it and
  // re-run only once that node gains an edge, in the same (node, relation)
  // order the full pass would have used.  Traces that a full pass would
  // re-run without effect are the only ones skipped.
  EnumerationResult run_felsch_plain_tracked(Limits limits) {
    return run_guarded(limits, [this] {
      tc3();
      deductions_.clear();
      deductions_overflowed_ = false;
      waitlist_mode_ = true;
      requeue_all();
      while (true) {
        drain_pass();
        tc3();
        auto gap = next_gap();
        if (gap.has_value()) {
          tc1(gap->first, gap->second);
          macro_step();
          continue;
        }
        if (ready_next_.empty()) {
          if (terminated()) {
            waitlist_mode_ = false;
            return;
          }
          // Safety net: start over from a clean slate once.
          requeue_all();
          drain_pass();
          tc3();
          if (terminated()) {
            waitlist_mode_ = false;
            return;
          }
          throw std::logic_error("run_felsch: stuck without progress");
        }
      }
    });
  }

  // Alternates `h` node-driven macro-steps with `f` definition-driven ones.
  EnumerationResult run_alternating(std::size_t h, std::size_t f,
                                    Limits limits = {}) {
    if (h == 0 || f == 0) {
      throw std::invalid_argument("run_alternating: periods must be >= 1");
    }
    return run_guarded(limits, [this, h, f] {
      tc3();
      bool need_fill = hlt_fill_needed();
      while (true) {
        bool any = false;
        for (std::size_t i = 0; i < h; ++i) {
          Node alpha = next_unprocessed();
          if (alpha == UNDEFINED) {
            break;
          }
          hlt_node(alpha, need_fill);
          hlt_cursor_ = alpha + 1;
          any = true;
          macro_step();
        }
        for (std::size_t i = 0; i < f; ++i) {
          auto gap = next_gap();
          if (!gap.has_value()) {
            break;
          }
          tc1(gap->first, gap->second);
          process_deductions();
          any = true;
          macro_step();
        }
        if (!any) {
          process_deductions();
          tc3();
          if (terminated()) {
            return;
          }
          sweep_tc2();
          tc3();
          if (terminated()) {
            return;
          }
          throw std::logic_error("run_alternating: stuck without progress");
        }
      }
    });
  }

  // Installs limits for callers that drive the primitive steps directly
  // (the run_* strategies do this themselves).
  void begin_limits(Limits limits) {
    limits_ = limits;
    graph_->set_node_cap(limits.max_nodes);
  }

  void note_coincidence(Node x, Node y) {
    coincidences_.push_back({x, y});
  }

  // The termination test of the enumeration: complete graph, empty
  // coincidence queue, and every relation compatible at every active node.
  // Generating pairs hold at node 0 by construction once the queue is empty.
  bool terminated() {
    if (!coincidences_.empty()) {
      return false;
    }
    if (!is_complete(*graph_)) {
      return false;
    }
    return is_compatible(*graph_, pres_.relations);
  }

  Node find(Node n) {
    return uf_.find(n);
  }

 private:
  void check_step() {
    if (stats_.total() >= limits_.max_steps) {
      throw StepLimitError();
    }
  }

  void push_deduction(Node n, Letter a) {
    if (waitlist_mode_) {
      wake_node(n);
    }
    if (deductions_.size() >= deduction_cap_) {
      deductions_overflowed_ = true;
      deductions_.clear();
      return;
    }
    deductions_.push_back({n, a});
  }

  void ensure_path(Node start, Word const& w) {
    ensure_path_prefix(start, w, w.size());
  }

  void ensure_path_prefix(Node start, Word const& w, std::size_t len) {
    Node cur = start;
    for (std::size_t i = 0; i < len; ++i) {
      Node t = graph_->target_raw(cur, w[i]);
      cur = (t == UNDEFINED) ? tc1(cur, w[i]) : t;
    }
  }

  // True unless every letter begins some relation side, in which case plain
  // relation tracing already defines every outgoing edge.
  bool hlt_fill_needed() const {
    std::vector<char> starts(pres_.alphabet_size, 0);
    for (auto const& rel : pres_.relations) {
      if (!rel.lhs.empty()) {
        starts[rel.lhs.front()] = 1;
      }
      if (!rel.rhs.empty()) {
        starts[rel.rhs.front()] = 1;
      }
    }
    for (char s : starts) {
      if (!s) {
        return true;
      }
    }
    return false;
  }

  // Node-driven step: trace every relation at alpha, defining the missing
  // nodes on the way, then fill any remaining letters.  Coincidences are
  // resolved eagerly.  Returns whether anything changed.
  bool hlt_node(Node alpha, bool need_fill) {
    bool changed = false;
    for (std::size_t r = 0; r < pres_.relations.size(); ++r) {
      if (!graph_->is_active(alpha)) {
        return changed;
      }
      if (memo_enabled_ && (rel_done_[alpha] >> r & 1) != 0) {
        continue;
      }
      auto const& rel = pres_.relations[r];
      // Make both sides label paths up to their last letter, then let tc2
      // close the diagram.  If both final edges are missing the lhs one is
      // defined first so that tc2 finds exactly one gap.
      std::size_t before = stats_.tc1;
      if (!rel.lhs.empty()) {
        ensure_path_prefix(alpha, rel.lhs, rel.lhs.size() - 1);
      }
      if (!rel.rhs.empty()) {
        ensure_path_prefix(alpha, rel.rhs, rel.rhs.size() - 1);
      }
      auto fu = graph_->follow(alpha, rel.lhs);
      auto fv = graph_->follow(alpha, rel.rhs);
      if (fu.prefix_len + 1 == rel.lhs.size()
          && fv.prefix_len + 1 == rel.rhs.size()) {
        tc1(fu.last, rel.lhs.back());
      }
      Tc2Outcome out = tc2(alpha, r);
      changed |= stats_.tc1 != before;
      changed |= out == Tc2Outcome::edge_defined
                 || out == Tc2Outcome::coincidence_recorded;
      if (out == Tc2Outcome::coincidence_recorded) {
        tc3();
      }
    }
    if (need_fill && graph_->is_active(alpha)) {
      for (Letter a = 0; a < pres_.alphabet_size; ++a) {
        if (graph_->target_raw(alpha, a) == UNDEFINED) {
          tc1(alpha, a);
          changed = true;
        }
      }
    }
    return changed;
  }

  Node next_unprocessed() {
    for (Node n = hlt_cursor_; n < graph_->next_id(); ++n) {
      if (graph_->is_active(n)) {
        return n;
      }
    }
    return UNDEFINED;
  }

  // Smallest (node, letter) with no edge.  The cursor only moves forward:
  // active nodes never lose edges, so a position once seen filled stays
  // filled.
  std::optional<std::pair<Node, Letter>> next_gap() {
    while (gap_node_ < graph_->next_id()) {
      if (!graph_->is_active(gap_node_)) {
        ++gap_node_;
        gap_letter_ = 0;
        continue;
      }
      while (gap_letter_ < pres_.alphabet_size) {
        if (graph_->target_raw(gap_node_, gap_letter_) == UNDEFINED) {
          return std::make_pair(gap_node_, static_cast<Letter>(gap_letter_));
        }
        ++gap_letter_;
      }
      ++gap_node_;
      gap_letter_ = 0;
    }
    return std::nullopt;
  }

  // TC2 at every active node and every relation, in file order.
  void sweep_tc2() {
    for (Node n = 0; n < graph_->next_id(); ++n) {
      if (!graph_->is_active(n)) {
        continue;
      }
      for (std::size_t r = 0; r < pres_.relations.size(); ++r) {
        tc2(n, r);
      }
    }
  }

  // --- incremental-sweep bookkeeping (plain Felsch only) ------------------

  // Resumable state of the trace of one relation at one node.  The stored
  // nodes may have been merged away; find() recovers the live node that the
  // traced prefix now ends at (merging preserves paths).
  struct TraceState {
    Node lhs_at = 0;
    Node rhs_at = 0;
    std::uint32_t lhs_pos = 0;
    std::uint32_t rhs_pos = 0;
    std::uint32_t epoch = 0;  // invalidates parked wait entries
  };

  struct Waiter {
    Node alpha;
    std::uint32_t rel;
    std::uint32_t epoch;
  };

  void enqueue(Node n, std::uint32_t rel) {
    if ((rel_done_[n] >> rel & 1) != 0 || (queued_[n] >> rel & 1) != 0) {
      return;
    }
    queued_[n] |= std::uint64_t(1) << rel;
    // Within a pass, a trace woken behind the scan position waits for the
    // next pass, exactly as a full sweep would have it.
    if (in_pass_ && std::make_pair(n, rel) > cur_pos_) {
      ready_now_.push({n, rel});
    } else {
      ready_next_.push_back({n, rel});
    }
  }

  void wake_node(Node beta) {
    if (beta >= wait_.size()) {
      return;
    }
    auto entries = std::move(wait_[beta]);
    wait_[beta].clear();
    std::size_t nrels = pres_.relations.size();
    for (auto const& e : entries) {
      if (trace_[e.alpha * nrels + e.rel].epoch != e.epoch
          || !graph_->is_active(e.alpha)) {
        continue;
      }
      enqueue(e.alpha, e.rel);
    }
  }

  void requeue_all() {
    std::size_t nrels = pres_.relations.size();
    ready_now_ = {};
    ready_next_.clear();
    queued_.assign(graph_->next_id(), 0);
    wait_.assign(graph_->next_id(), {});
    trace_.assign(graph_->next_id() * nrels, {});
    for (Node n = 0; n < graph_->next_id(); ++n) {
      if (!graph_->is_active(n)) {
        continue;
      }
      for (std::uint32_t r = 0; r < nrels; ++r) {
        auto& st = trace_[n * nrels + r];
        st.lhs_at = n;
        st.rhs_at = n;
        enqueue(n, r);
      }
    }
  }

  void drain_pass() {
    in_pass_ = true;
    for (auto pr : ready_next_) {
      ready_now_.push(pr);
    }
    ready_next_.clear();
    while (!ready_now_.empty()) {
      auto pr = ready_now_.top();
      ready_now_.pop();
      if ((queued_[pr.first] >> pr.second & 1) == 0) {
        continue;  // duplicate of an already processed entry
      }
      cur_pos_ = pr;
      queued_[pr.first] &= ~(std::uint64_t(1) << pr.second);
      if (graph_->is_active(pr.first)) {
        trace_pair(pr.first, pr.second);
      }
    }
    in_pass_ = false;
  }

  // One TC2 application with resumable follows; parks itself on the nodes
  // missing the next edge when neither side can be closed yet.
  void trace_pair(Node alpha, std::uint32_t rel) {
    if ((rel_done_[alpha] >> rel & 1) != 0) {
      return;
    }
    check_step();
    ++stats_.tc2;
    std::size_t nrels = pres_.relations.size();
    auto& st = trace_[alpha * nrels + rel];
    ++st.epoch;
    auto const& r = pres_.relations[rel];
    Node lcur = uf_.find(st.lhs_at);
    while (st.lhs_pos < r.lhs.size()) {
      Node t = graph_->target_raw(lcur, r.lhs[st.lhs_pos]);
      if (t == UNDEFINED) {
        break;
      }
      lcur = t;
      ++st.lhs_pos;
    }
    st.lhs_at = lcur;
    Node rcur = uf_.find(st.rhs_at);
    while (st.rhs_pos < r.rhs.size()) {
      Node t = graph_->target_raw(rcur, r.rhs[st.rhs_pos]);
      if (t == UNDEFINED) {
        break;
      }
      rcur = t;
      ++st.rhs_pos;
    }
    st.rhs_at = rcur;
    bool lfull = st.lhs_pos == r.lhs.size();
    bool rfull = st.rhs_pos == r.rhs.size();
    if (lfull && rfull) {
      if (lcur != rcur) {
        coincidences_.push_back({lcur, rcur});
      }
      rel_done_[alpha] |= std::uint64_t(1) << rel;
      return;
    }
    if (lfull && st.rhs_pos + 1 == r.rhs.size()) {
      graph_->add_edge(rcur, r.rhs.back(), lcur);
      push_deduction(rcur, r.rhs.back());
      rel_done_[alpha] |= std::uint64_t(1) << rel;
      return;
    }
    if (rfull && st.lhs_pos + 1 == r.lhs.size()) {
      graph_->add_edge(lcur, r.lhs.back(), rcur);
      push_deduction(lcur, r.lhs.back());
      rel_done_[alpha] |= std::uint64_t(1) << rel;
      return;
    }
    if (!lfull) {
      wait_[lcur].push_back({alpha, rel, st.epoch});
    }
    if (!rfull && (lfull || rcur != lcur)) {
      wait_[rcur].push_back({alpha, rel, st.epoch});
    }
  }

  // -------------------------------------------------------------------------

  // The backtrack search behind process_deductions: apply the relations
  // registered at this tree node, then walk one graph edge backwards for
  // every tree edge that extends the current subword on the left.
  void backtrack(Node alpha, std::uint32_t tnode) {
    for (std::uint32_t r : tree_->relations_at(tnode)) {
      if (!graph_->is_active(alpha)) {
        return;
      }
      tc2(alpha, r);
    }
    for (Letter b = 0; b < pres_.alphabet_size; ++b) {
      auto child = tree_->extension(tnode, b);
      if (!child.has_value()) {
        continue;
      }
      auto srcs = graph_->sources(b, alpha);
      for (Node s : srcs) {
        if (graph_->is_active(s) && graph_->is_active(alpha)) {
          backtrack(s, *child);
        }
      }
    }
  }

  void macro_step() {
    if (standardize_interval_ == 0) {
      return;
    }
    if (++macro_count_ % standardize_interval_ != 0) {
      return;
    }
    // Only safe at quiescent points: no pending merges or deductions that
    // would hold on to old ids.
    if (!coincidences_.empty() || !deductions_.empty()
        || deductions_overflowed_) {
      return;
    }
    Node zrep = have_zero_node_ ? uf_.find(zero_node_) : 0;
    auto perm = standardize(*graph_);
    uf_ = UnionFind(graph_->next_id());
    rel_done_.assign(graph_->next_id(), 0);
    if (have_zero_node_) {
      zero_node_ = perm[zrep];
    }
    hlt_cursor_ = 0;
    gap_node_ = 0;
    gap_letter_ = 0;
    if (waitlist_mode_) {
      requeue_all();  // relabelling invalidated every parked trace
    }
  }

  template <typename Body>
  EnumerationResult run_guarded(Limits limits, Body&& body) {
    begin_limits(limits);
    EnumStatus status = EnumStatus::complete;
    try {
      body();
    } catch (NodeLimitError const&) {
      status = EnumStatus::node_limit;
    } catch (StepLimitError const&) {
      status = EnumStatus::step_limit;
    }
    waitlist_mode_ = false;
    EnumerationResult res{status, *graph_, 0, stats_, kind_};
    if (status == EnumStatus::complete) {
      assert(terminated());
      res.class_count = graph_->active_count();
      standardize(res.graph);
    }
    return res;
  }

  Presentation pres_;
  std::vector<Relation> pairs_;
  CongruenceKind kind_;
  std::optional<WordGraph> graph_;
  UnionFind uf_;
  std::vector<std::pair<Node, Node>> coincidences_;
  std::vector<std::pair<Node, Letter>> deductions_;
  std::size_t deduction_cap_ = std::size_t(1) << 20;
  bool deductions_overflowed_ = false;
  std::optional<FelschTree> tree_;
  Stats stats_;
  Limits limits_;
  bool memo_enabled_ = false;
  std::vector<std::uint64_t> rel_done_;
  bool zero_mode_ = false;
  bool have_zero_node_ = false;
  Node zero_node_ = 0;
  bool waitlist_mode_ = false;
  bool in_pass_ = false;
  std::pair<Node, std::uint32_t> cur_pos_{0, 0};
  std::priority_queue<std::pair<Node, std::uint32_t>,
                      std::vector<std::pair<Node, std::uint32_t>>,
                      std::greater<>>
      ready_now_;
  std::vector<std::pair<Node, std::uint32_t>> ready_next_;
  std::vector<std::uint64_t> queued_;
  std::vector<std::vector<Waiter>> wait_;
  std::vector<TraceState> trace_;
  Node hlt_cursor_ = 0;
  Node gap_node_ = 0;
  std::size_t gap_letter_ = 0;
  std::size_t standardize_interval_ = 0;
  std::size_t macro_count_ = 0;
};

// Class index of a word in a completed enumeration.  For a left congruence
// the run worked on reversed words, so the input is reversed here.
inline Node class_of(EnumerationResult const& res, Word w) {
  if (res.status != EnumStatus::complete) {
    throw std::logic_error("class_of: enumeration did not complete");
  }
  if (res.kind == CongruenceKind::left) {
    w = reverse_word(std::move(w));
  }
  auto f = res.graph.follow(0, w);
  if (f.prefix_len != w.size()) {
    throw std::logic_error("class_of: graph not complete");
  }
  return f.last;
}

// Short-lex minimal representative of every class, in class order.  On a
// standardized graph the classes are met in short-lex order of their
// minimal words, so a breadth-first pass assigns them directly.
inline std::vector<Word> normal_forms(EnumerationResult const& res) {
  if (res.status != EnumStatus::complete) {
    throw std::logic_error("normal_forms: enumeration did not complete");
  }
  WordGraph const& g = res.graph;
  std::vector<Word> reps(g.active_count());
  std::vector<char> seen(g.active_count(), 0);
  std::vector<Node> queue{0};
  seen[0] = 1;
  for (std::size_t pos = 0; pos < queue.size(); ++pos) {
    Node n = queue[pos];
    for (Letter a = 0; a < g.alphabet_size(); ++a) {
      Node t = g.target_raw(n, a);
      if (t != UNDEFINED && !seen[t]) {
        seen[t] = 1;
        reps[t] = reps[n];
        reps[t].push_back(a);
        queue.push_back(t);
      }
    }
  }
  return reps;
}

}  // namespace tcenum
