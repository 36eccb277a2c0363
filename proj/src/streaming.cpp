/*  Copyright 2026 The sculpt authors.

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License. */

#include "sculpt/streaming.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "sculpt/errors.hpp"

namespace sculpt {

// Automata -------------------------------------------------------------------

bool CoordinateAutomaton::is_final(int q) const {
  return std::find(finals.begin(), finals.end(), q) != finals.end();
}

std::size_t CoordinateAutomaton::level() const {
  std::size_t l = 0;
  for (const auto& o : oracles) l = std::max(l, sculpt::level(*o));
  return l;
}

namespace {

std::string non_forward_reason(const NavExpr& e);

std::string non_forward_reason(const CoordExpr& e) {
  if (e.kind == CoordKind::Exists) return "exists <" + to_string(*e.nav) + ">";
  if (e.nav) {
    std::string r = non_forward_reason(*e.nav);
    if (!r.empty()) return r;
  }
  for (const auto* c : {e.lhs.get(), e.rhs.get()}) {
    if (!c) continue;
    std::string r = non_forward_reason(*c);
    if (!r.empty()) return r;
  }
  return "";
}

std::string non_forward_reason(const NavExpr& e) {
  if (e.kind == NavKind::Up) return "up";
  if (e.kind == NavKind::Left) return "left";
  if (e.kind == NavKind::Filter) return non_forward_reason(*e.filter);
  for (const auto* c : {e.lhs.get(), e.rhs.get()}) {
    if (!c) continue;
    std::string r = non_forward_reason(*c);
    if (!r.empty()) return r;
  }
  return "";
}

void require_forward(const CoordExpr& e) {
  std::string r = non_forward_reason(e);
  if (!r.empty()) throw FragmentError("expression is not forward: uses " + r);
}

struct CaBuilder {
  CoordinateAutomaton ca;
  std::unordered_map<std::string, int> oracle_ids;

  int state() {
    ca.edges.emplace_back();
    return static_cast<int>(ca.edges.size()) - 1;
  }
  void edge(int from, CaLabel l, int to, int oracle = -1) {
    ca.edges[from].push_back({l, to, oracle});
  }
  int oracle(const CoordPtr& phi) {
    require_forward(*phi);
    auto [it, fresh] = oracle_ids.emplace(to_string(*phi),
                                          static_cast<int>(ca.oracles.size()));
    if (fresh) ca.oracles.push_back(phi);
    return it->second;
  }

  std::pair<int, int> build(const NavExpr& a) {
    switch (a.kind) {
      case NavKind::Epsilon: {
        int s = state();
        return {s, s};
      }
      case NavKind::Up:
      case NavKind::Left:
        throw FragmentError("expression is not forward: uses " +
                            to_string(a));
      case NavKind::Down:
      case NavKind::Right: {
        int s = state();
        int f = state();
        edge(s, a.kind == NavKind::Down ? CaLabel::Down : CaLabel::Right, f);
        return {s, f};
      }
      case NavKind::Filter: {
        int s = state();
        int f = state();
        edge(s, CaLabel::Filter, f, oracle(a.filter));
        return {s, f};
      }
      case NavKind::Concat: {
        auto [s1, f1] = build(*a.lhs);
        auto [s2, f2] = build(*a.rhs);
        edge(f1, CaLabel::Epsilon, s2);
        return {s1, f2};
      }
      case NavKind::Union: {
        auto [s1, f1] = build(*a.lhs);
        auto [s2, f2] = build(*a.rhs);
        int s = state();
        int f = state();
        edge(s, CaLabel::Epsilon, s1);
        edge(s, CaLabel::Epsilon, s2);
        edge(f1, CaLabel::Epsilon, f);
        edge(f2, CaLabel::Epsilon, f);
        return {s, f};
      }
      case NavKind::Star: {
        auto [s1, f1] = build(*a.lhs);
        int s = state();
        int f = state();
        edge(s, CaLabel::Epsilon, s1);
        edge(s, CaLabel::Epsilon, f);
        edge(f1, CaLabel::Epsilon, s1);
        edge(f1, CaLabel::Epsilon, f);
        return {s, f};
      }
      case NavKind::Plus:
      case NavKind::Opt:
        throw Error("navigational expression is not desugared");
    }
    return {0, 0};
  }
};

}  // namespace

CoordinateAutomaton compile_nav_to_ca(const NavExpr& alpha) {
  CaBuilder b;
  auto [s, f] = b.build(alpha);
  b.ca.initial = s;
  b.ca.finals = {f};
  return std::move(b.ca);
}

CoordinateAutomaton compile_coord_to_ca(const CoordExpr& phi) {
  require_forward(phi);
  CaBuilder b;
  int q0 = b.state();
  b.edge(q0, CaLabel::Right, q0);
  b.edge(q0, CaLabel::NewRow, q0);
  int f;
  if (phi.kind == CoordKind::Apply) {
    auto [s, nav_f] = b.build(*phi.nav);
    b.edge(q0, CaLabel::Filter, s, b.oracle(phi.lhs));
    f = nav_f;
  } else {
    f = b.state();
    b.edge(q0, CaLabel::Filter, f, b.oracle(std::make_shared<CoordExpr>(phi)));
  }
  b.ca.initial = q0;
  b.ca.finals = {f};
  return std::move(b.ca);
}

// Column sets ----------------------------------------------------------------

bool ColumnSet::contains(std::size_t col) const {
  if (open_from_ && col >= *open_from_) return true;
  return std::binary_search(finite_.begin(), finite_.end(), col);
}

void ColumnSet::add(std::size_t col) {
  if (contains(col)) return;
  finite_.push_back(col);
}

void ColumnSet::open(std::size_t from) {
  if (open_from_ && *open_from_ <= from) return;
  open_from_ = from;
  while (!finite_.empty() && finite_.back() >= from) finite_.pop_back();
}

void ColumnSet::clear() {
  finite_.clear();
  open_from_.reset();
}

namespace {

const TokenSetView kPadding({}, true);

// Boolean combination of literals evaluated at the current cell.
struct Oracle {
  enum Kind { Tok, Never, Root, True, Not, And, Or, Child };
  struct Node {
    Kind kind;
    int a = -1;
    int b = -1;
    TokenId tok = 0;
  };
  std::vector<Node> nodes;
  int top = -1;

  bool eval(int i, TokenSetView cell, std::size_t k, std::size_t l,
            const std::vector<std::uint8_t>& child_selected) const {
    const Node& n = nodes[i];
    switch (n.kind) {
      case Tok: return !cell.padding() && cell.contains(n.tok);
      case Never: return false;
      case Root: return k == 1 && l == 1;
      case True: return true;
      case Not: return !eval(n.a, cell, k, l, child_selected);
      case And:
        return eval(n.a, cell, k, l, child_selected) &&
               eval(n.b, cell, k, l, child_selected);
      case Or:
        return eval(n.a, cell, k, l, child_selected) ||
               eval(n.b, cell, k, l, child_selected);
      case Child: return child_selected[n.a] != 0;
    }
    return false;
  }
};

// Weak mode ------------------------------------------------------------------

struct Machine {
  CoordinateAutomaton ca;
  std::vector<Oracle> oracles;

  std::vector<std::uint8_t> act;
  std::vector<std::uint8_t> next;
  std::vector<int> work;
  std::deque<std::pair<std::size_t, int>> susp;  // (column, state), FIFO
  std::vector<std::uint8_t> phi;
  std::vector<std::size_t> down_mark;
  std::size_t stamp = 0;
  bool started = false;
};

// Simulates the automaton of one expression together with the child
// automata of the applications its oracles mention.
class WeakSelector {
 public:
  WeakSelector(const CoordExpr& phi, const Alphabet* alphabet)
      : alphabet_(alphabet) {
    add_machine(phi);
    selected_.assign(machines_.size(), 0);
  }

  bool cell(std::size_t k, std::size_t l, TokenSetView tokens) {
    for (std::size_t i = 0; i < machines_.size(); ++i)
      selected_[i] = step(machines_[i], k, l, tokens);
    return selected_.back() != 0;
  }

  std::size_t footprint() const {
    std::size_t f = 0;
    for (const Machine& m : machines_)
      f += 2 + m.ca.states() + m.ca.oracles.size() + m.susp.size();
    return f;
  }

  std::size_t carryover() const {
    std::size_t c = 0;
    for (const Machine& m : machines_) c += m.susp.size();
    return c;
  }

 private:
  int add_machine(const CoordExpr& phi) {
    Machine m;
    m.ca = compile_coord_to_ca(phi);
    for (const auto& o : m.ca.oracles) {
      Oracle prog;
      prog.top = oracle_node(*o, prog);
      m.oracles.push_back(std::move(prog));
    }
    std::size_t q = m.ca.states();
    m.act.assign(q, 0);
    m.next.assign(q, 0);
    m.down_mark.assign(q, 0);
    m.phi.assign(m.oracles.size(), 0);
    machines_.push_back(std::move(m));
    return static_cast<int>(machines_.size()) - 1;
  }

  int oracle_node(const CoordExpr& e, Oracle& prog) {
    Oracle::Node n{Oracle::Never};
    switch (e.kind) {
      case CoordKind::Token: {
        auto id = alphabet_ ? alphabet_->find(e.name) : std::nullopt;
        if (id) n = {Oracle::Tok, -1, -1, *id};
        break;
      }
      case CoordKind::Root: n.kind = Oracle::Root; break;
      case CoordKind::True: n.kind = Oracle::True; break;
      case CoordKind::Not:
        n.kind = Oracle::Not;
        n.a = oracle_node(*e.lhs, prog);
        break;
      case CoordKind::And:
      case CoordKind::Or:
        n.kind = e.kind == CoordKind::And ? Oracle::And : Oracle::Or;
        n.a = oracle_node(*e.lhs, prog);
        n.b = oracle_node(*e.rhs, prog);
        break;
      case CoordKind::Apply: {
        std::string key = to_string(e);
        auto it = child_ids_.find(key);
        int child = it != child_ids_.end() ? it->second : add_machine(e);
        child_ids_.emplace(key, child);
        n.kind = Oracle::Child;
        n.a = child;
        break;
      }
      default:
        throw FragmentError("expression is not forward: uses " +
                            non_forward_reason(e));
    }
    prog.nodes.push_back(n);
    return static_cast<int>(prog.nodes.size()) - 1;
  }

  bool step(Machine& m, std::size_t k, std::size_t l, TokenSetView tokens) {
    for (std::size_t i = 0; i < m.oracles.size(); ++i)
      m.phi[i] = m.oracles[i].eval(m.oracles[i].top, tokens, k, l, selected_);

    std::fill(m.next.begin(), m.next.end(), 0);
    m.work.clear();
    auto add = [&](int q) {
      if (!m.next[q]) {
        m.next[q] = 1;
        m.work.push_back(q);
      }
    };
    if (!m.started) {
      add(m.ca.initial);
      m.started = true;
    } else {
      CaLabel move = l == 1 ? CaLabel::NewRow : CaLabel::Right;
      for (std::size_t q = 0; q < m.act.size(); ++q) {
        if (!m.act[q]) continue;
        for (const auto& e : m.ca.edges[q])
          if (e.label == move) add(e.to);
      }
    }
    while (!m.susp.empty() && m.susp.front().first == l) {
      add(m.susp.front().second);
      m.susp.pop_front();
    }
    for (std::size_t i = 0; i < m.work.size(); ++i) {
      for (const auto& e : m.ca.edges[m.work[i]]) {
        if (e.label == CaLabel::Epsilon ||
            (e.label == CaLabel::Filter && m.phi[e.oracle]))
          add(e.to);
      }
    }
    ++m.stamp;
    for (int q : m.work) {
      for (const auto& e : m.ca.edges[q]) {
        if (e.label != CaLabel::Down || m.down_mark[e.to] == m.stamp) continue;
        m.down_mark[e.to] = m.stamp;
        m.susp.emplace_back(l, e.to);
      }
    }
    m.act.swap(m.next);
    for (int f : m.ca.finals)
      if (m.act[f]) return true;
    return false;
  }

  const Alphabet* alphabet_;
  std::vector<Machine> machines_;
  std::unordered_map<std::string, int> child_ids_;
  std::vector<std::uint8_t> selected_;
};

// Strong mode ----------------------------------------------------------------

struct SNode {
  enum Kind {
    Tok, Never, Root, True, Not, And, Or,
    Down,       // a held one row up
    DownStar,   // a held here or DownStar held one row up
    Right,      // a held one column left
    RightStar,  // a held here or RightStar held one column left
    RowNav,     // a down-free navigation applied to a, within the row
  };
  Kind kind;
  int a = -1;
  int b = -1;
  TokenId tok = 0;
  int slot = -1;  // Down: carry of a; DownStar: own carry
  int aux = -1;   // Right/RightStar: register; RowNav: automaton
};

struct RowNfa {
  struct Edge {
    CaLabel label;  // Epsilon, Filter or Right
    int to;
    int node = -1;  // Filter: the node tested
  };
  std::vector<std::vector<Edge>> edges;
  int start = 0;
  int accept = 0;
  std::vector<std::uint8_t> prev;
  std::vector<std::uint8_t> cur;
  std::vector<int> work;
};

bool down_free(const NavExpr& e) {
  if (e.kind == NavKind::Down) return false;
  return (!e.lhs || down_free(*e.lhs)) && (!e.rhs || down_free(*e.rhs));
}

// Cell-by-cell evaluation of every subexpression. The only state kept
// across rows is one ColumnSet per subexpression that is moved down.
class StrongSelector {
 public:
  StrongSelector(const CoordExpr& phi, const Alphabet* alphabet,
                 std::optional<std::size_t> max_finite)
      : alphabet_(alphabet), max_finite_(max_finite) {
    require_forward(phi);
    top_ = coord(phi);
    val_.assign(nodes_.size(), 0);
    sat_.assign(nodes_.size(), 0);
    carry_prev_.resize(slot_node_.size());
    carry_cur_.resize(slot_node_.size());
    reg_val_.assign(registers_, 0);
    reg_sat_.assign(registers_, 0);
  }

  void new_row() {
    carry_prev_.swap(carry_cur_);
    for (auto& c : carry_cur_) c.clear();
  }

  bool cell(std::size_t k, std::size_t l, TokenSetView tokens) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) eval(i, k, l, tokens);
    for (std::size_t s = 0; s < slot_node_.size(); ++s) {
      int n = slot_node_[s];
      if (!val_[n]) continue;
      ColumnSet& c = carry_cur_[s];
      if (sat_[n]) {
        c.open(l);
      } else {
        c.add(l);
        max_seen_ = std::max(max_seen_, c.finite().size());
        if (max_finite_ && c.finite().size() > *max_finite_)
          throw RepresentationOverflow(
              "column set of " + std::to_string(c.finite().size()) +
              " columns exceeds its bound of " + std::to_string(*max_finite_));
      }
    }
    return val_[top_] != 0;
  }

  std::size_t footprint() const {
    std::size_t f = 2 + 2 * nodes_.size() + 2 * registers_;
    for (const auto& r : navs_) f += 2 * r.edges.size();
    for (const auto& c : carry_prev_) f += c.size();
    for (const auto& c : carry_cur_) f += c.size();
    return f;
  }

  /// State handed from the row just finished to the next one.
  std::size_t carryover() const {
    std::size_t c = 0;
    for (const auto& s : carry_cur_) c += s.size();
    return c;
  }

  std::size_t max_finite_seen() const { return max_seen_; }

 private:
  int add(SNode n) {
    std::string key = std::to_string(n.kind) + ':' + std::to_string(n.a) + ':' +
                      std::to_string(n.b) + ':' + std::to_string(n.tok);
    bool shareable = n.kind != SNode::RowNav;
    if (shareable) {
      auto it = ids_.find(key);
      if (it != ids_.end()) return it->second;
    }
    int id = static_cast<int>(nodes_.size());
    if (n.kind == SNode::Down) n.slot = slot_for(n.a);
    if (n.kind == SNode::DownStar) n.slot = slot_for(id);
    if (n.kind == SNode::Right || n.kind == SNode::RightStar)
      n.aux = static_cast<int>(registers_++);
    nodes_.push_back(n);
    if (shareable) ids_.emplace(key, id);
    return id;
  }

  int slot_for(int node) {
    auto it = slots_.find(node);
    if (it != slots_.end()) return it->second;
    int s = static_cast<int>(slot_node_.size());
    slot_node_.push_back(node);
    slots_.emplace(node, s);
    return s;
  }

  int coord(const CoordExpr& e) {
    switch (e.kind) {
      case CoordKind::Token: {
        auto id = alphabet_ ? alphabet_->find(e.name) : std::nullopt;
        if (!id) return add({SNode::Never});
        return add({SNode::Tok, -1, -1, *id});
      }
      case CoordKind::Root: return add({SNode::Root});
      case CoordKind::True: return add({SNode::True});
      case CoordKind::Not: return add({SNode::Not, coord(*e.lhs)});
      case CoordKind::And: {
        int a = coord(*e.lhs);
        return add({SNode::And, a, coord(*e.rhs)});
      }
      case CoordKind::Or: {
        int a = coord(*e.lhs);
        return add({SNode::Or, a, coord(*e.rhs)});
      }
      case CoordKind::Apply: return apply(*e.nav, coord(*e.lhs));
      default:
        throw FragmentError("expression is not forward: uses " +
                            non_forward_reason(e));
    }
  }

  int apply(const NavExpr& b, int x) {
    switch (b.kind) {
      case NavKind::Epsilon: return x;
      case NavKind::Down: return add({SNode::Down, x});
      case NavKind::Right: return add({SNode::Right, x});
      case NavKind::Filter: return add({SNode::And, x, coord(*b.filter)});
      case NavKind::Concat: return apply(*b.rhs, apply(*b.lhs, x));
      case NavKind::Union: {
        int l = apply(*b.lhs, x);
        return add({SNode::Or, l, apply(*b.rhs, x)});
      }
      case NavKind::Star:
        switch (b.lhs->kind) {
          case NavKind::Down: return add({SNode::DownStar, x});
          case NavKind::Right: return add({SNode::RightStar, x});
          case NavKind::Epsilon:
          case NavKind::Filter:
            return x;
          default:
            if (down_free(b)) return row_nav(b, x);
            throw FragmentError("navigation " + to_string(b) +
                                " has no bounded-carryover evaluation");
        }
      default:
        throw FragmentError("expression is not forward: uses " + to_string(b));
    }
  }

  int row_nav(const NavExpr& b, int x) {
    RowNfa r;
    auto [s, f] = build(b, r);
    r.start = s;
    r.accept = f;
    r.prev.assign(r.edges.size(), 0);
    r.cur.assign(r.edges.size(), 0);
    navs_.push_back(std::move(r));
    SNode n{SNode::RowNav, x};
    n.aux = static_cast<int>(navs_.size()) - 1;
    return add(n);
  }

  std::pair<int, int> build(const NavExpr& a, RowNfa& r) {
    auto state = [&] {
      r.edges.emplace_back();
      return static_cast<int>(r.edges.size()) - 1;
    };
    switch (a.kind) {
      case NavKind::Epsilon: {
        int q = state();
        return {q, q};
      }
      case NavKind::Right: {
        int s = state();
        int f = state();
        r.edges[s].push_back({CaLabel::Right, f});
        return {s, f};
      }
      case NavKind::Filter: {
        int node = coord(*a.filter);
        int s = state();
        int f = state();
        r.edges[s].push_back({CaLabel::Filter, f, node});
        return {s, f};
      }
      case NavKind::Concat: {
        auto [s1, f1] = build(*a.lhs, r);
        auto [s2, f2] = build(*a.rhs, r);
        r.edges[f1].push_back({CaLabel::Epsilon, s2});
        return {s1, f2};
      }
      case NavKind::Union: {
        auto [s1, f1] = build(*a.lhs, r);
        auto [s2, f2] = build(*a.rhs, r);
        int s = state();
        int f = state();
        r.edges[s].push_back({CaLabel::Epsilon, s1});
        r.edges[s].push_back({CaLabel::Epsilon, s2});
        r.edges[f1].push_back({CaLabel::Epsilon, f});
        r.edges[f2].push_back({CaLabel::Epsilon, f});
        return {s, f};
      }
      case NavKind::Star: {
        auto [s1, f1] = build(*a.lhs, r);
        int s = state();
        int f = state();
        r.edges[s].push_back({CaLabel::Epsilon, s1});
        r.edges[s].push_back({CaLabel::Epsilon, f});
        r.edges[f1].push_back({CaLabel::Epsilon, s1});
        r.edges[f1].push_back({CaLabel::Epsilon, f});
        return {s, f};
      }
      default:
        throw FragmentError("navigation " + to_string(a) +
                            " has no bounded-carryover evaluation");
    }
  }

  void eval(std::size_t i, std::size_t k, std::size_t l, TokenSetView tokens) {
    const SNode& n = nodes_[i];
    bool v = false;
    bool s = false;
    switch (n.kind) {
      case SNode::Tok: v = !tokens.padding() && tokens.contains(n.tok); break;
      case SNode::Never: break;
      case SNode::Root: v = k == 1 && l == 1; break;
      case SNode::True: v = s = true; break;
      case SNode::Not: v = !val_[n.a]; break;
      case SNode::And:
        v = val_[n.a] && val_[n.b];
        s = sat_[n.a] && sat_[n.b];
        break;
      case SNode::Or:
        v = val_[n.a] || val_[n.b];
        s = sat_[n.a] || sat_[n.b];
        break;
      case SNode::Down: {
        const ColumnSet& c = carry_prev_[n.slot];
        v = c.contains(l);
        s = c.open_from() && l >= *c.open_from();
        break;
      }
      case SNode::DownStar: {
        const ColumnSet& c = carry_prev_[n.slot];
        v = val_[n.a] || c.contains(l);
        s = sat_[n.a] || (c.open_from() && l >= *c.open_from());
        break;
      }
      case SNode::Right:
        if (l > 1) {
          v = reg_val_[n.aux];
          s = reg_sat_[n.aux];
        }
        reg_val_[n.aux] = val_[n.a];
        reg_sat_[n.aux] = sat_[n.a];
        break;
      case SNode::RightStar:
        v = val_[n.a] || (l > 1 && reg_val_[n.aux]);
        s = v;
        reg_val_[n.aux] = v;
        break;
      case SNode::RowNav:
        v = row_nav_step(navs_[n.aux], l, val_[n.a]);
        break;
    }
    val_[i] = v;
    sat_[i] = s;
  }

  bool row_nav_step(RowNfa& r, std::size_t l, bool inject) {
    std::fill(r.cur.begin(), r.cur.end(), 0);
    r.work.clear();
    auto add_state = [&](int q) {
      if (!r.cur[q]) {
        r.cur[q] = 1;
        r.work.push_back(q);
      }
    };
    if (l > 1) {
      for (std::size_t q = 0; q < r.prev.size(); ++q) {
        if (!r.prev[q]) continue;
        for (const auto& e : r.edges[q])
          if (e.label == CaLabel::Right) add_state(e.to);
      }
    }
    if (inject) add_state(r.start);
    for (std::size_t i = 0; i < r.work.size(); ++i) {
      for (const auto& e : r.edges[r.work[i]]) {
        if (e.label == CaLabel::Epsilon ||
            (e.label == CaLabel::Filter && val_[e.node]))
          add_state(e.to);
      }
    }
    r.prev.swap(r.cur);
    return r.prev[r.accept] != 0;
  }

  const Alphabet* alphabet_;
  std::optional<std::size_t> max_finite_;
  std::vector<SNode> nodes_;
  std::unordered_map<std::string, int> ids_;
  std::unordered_map<int, int> slots_;
  std::vector<int> slot_node_;
  std::vector<RowNfa> navs_;
  std::size_t registers_ = 0;
  int top_ = -1;

  std::vector<std::uint8_t> val_;
  std::vector<std::uint8_t> sat_;
  std::vector<std::uint8_t> reg_val_;
  std::vector<std::uint8_t> reg_sat_;
  std::vector<ColumnSet> carry_prev_;
  std::vector<ColumnSet> carry_cur_;
  std::size_t max_seen_ = 0;
};

// Shared driver --------------------------------------------------------------

class RuleCheck {
 public:
  RuleCheck(const ContentNfa& nfa, Semantics sem, PadMode pad,
            std::size_t rule, std::string message)
      : nfa_(nfa), sem_(sem), pad_(pad), rule_(rule),
        message_(std::move(message)), state_(nfa.initial()) {}

  void cell(bool selected, TokenSetView v, std::size_t k, std::size_t l) {
    if (!selected) return;
    any_ = true;
    if (sample_.size() < kSampleCells) sample_.push_back({k, l});
    if (pad_ == PadMode::Trim && v.padding()) {
      ++pending_;
      return;
    }
    for (; pending_ > 0; --pending_) feed(kPadding);
    feed(v);
  }

  void end_row(std::size_t k, ValidationReport& r) {
    if (sem_ != Semantics::RowBased) return;
    if (any_ && !nfa_.accepts(state_))
      r.violations.push_back({rule_, k, sample_, message_});
    state_ = nfa_.initial();
    pending_ = 0;
    any_ = false;
    sample_.clear();
  }

  void end_stream(ValidationReport& r) {
    if (sem_ != Semantics::RegionBased) return;
    if (!nfa_.accepts(state_))
      r.violations.push_back({rule_, std::nullopt, sample_, message_});
  }

  std::size_t footprint() const { return nfa_.state_count(); }

 private:
  void feed(TokenSetView v) {
    nfa_.step(state_, v, next_);
    state_.swap(next_);
  }

  const ContentNfa& nfa_;
  Semantics sem_;
  PadMode pad_;
  std::size_t rule_;
  std::string message_;
  ContentNfa::StateSet state_;
  ContentNfa::StateSet next_;
  std::size_t pending_ = 0;  // trailing padding cells not yet fed
  bool any_ = false;
  std::vector<Coordinate> sample_;
};

struct UniqueCount {
  TokenId id;
  std::string name;
  bool per_row;
  std::size_t count = 0;
  std::vector<Coordinate> cells;

  void emit(ValidationReport& r) const {
    r.unique_violations.push_back({name, per_row, cells});
  }
  void reset() {
    count = 0;
    cells.clear();
  }
};

template <class Selector>
StreamResult drive(const CompiledSchema& schema, EventSource& events,
                   const StreamOptions& opts, std::vector<Selector>& sels,
                   bool stop_at_guard) {
  StreamResult out;
  std::vector<RuleCheck> checks;
  for (std::size_t i = 0; i < schema.rule_count(); ++i)
    checks.emplace_back(schema.content(i), schema.doc().rules[i].semantics,
                        opts.pad, i + 1, violation_message(schema, i + 1));
  std::vector<UniqueCount> uniques;
  for (TokenId id : schema.unique_ids())
    uniques.push_back({id, schema.alphabet()->name(id), false});
  for (TokenId id : schema.unique_per_row_ids())
    uniques.push_back({id, schema.alphabet()->name(id), true});

  ValidationReport& report = out.report;
  MemoryTrace& trace = out.trace;
  std::size_t fixed = uniques.size();
  for (const auto& c : checks) fixed += c.footprint();
  std::size_t row_max = 0;

  auto finish_row = [&](std::size_t k) {
    for (auto& c : checks) c.end_row(k, report);
    for (auto& u : uniques) {
      if (!u.per_row) continue;
      if (u.count > 1) u.emit(report);
      u.reset();
    }
    std::size_t carry = 0;
    for (const auto& s : sels) carry += s.carryover();
    trace.row_footprint.push_back(row_max);
    trace.row_carryover.push_back(carry);
    trace.max_carryover = std::max(trace.max_carryover, carry);
    row_max = 0;
  };

  std::size_t k = 1;
  std::size_t l = 0;
  bool stopped = false;
  TableEvent ev;
  while (!stopped && events.next(ev)) {
    if (ev.kind == TableEvent::Kind::NewRow) {
      finish_row(k);
      for (auto& s : sels) s.new_row();
      ++k;
      l = 0;
      continue;
    }
    ++l;
    if (!ev.tokens.padding()) {
      for (auto& u : uniques) {
        if (!ev.tokens.contains(u.id)) continue;
        ++u.count;
        if (u.cells.size() < kSampleCells) u.cells.push_back({k, l});
        if (stop_at_guard && u.count == 2) {
          u.emit(report);
          stopped = true;
        }
      }
      if (stopped) break;
    }
    for (std::size_t i = 0; i < sels.size(); ++i)
      checks[i].cell(sels[i].cell(k, l, ev.tokens), ev.tokens, k, l);
    std::size_t f = fixed;
    for (const auto& s : sels) f += s.footprint();
    row_max = std::max(row_max, f);
    trace.max_footprint = std::max(trace.max_footprint, f);
  }
  if (stopped) return out;
  if (l > 0) finish_row(k);
  for (auto& c : checks) c.end_stream(report);
  for (auto& u : uniques)
    if (!u.per_row && u.count > 1) u.emit(report);
  return out;
}

// Adapts the strong selector's interface to the driver.
struct WeakAdapter {
  WeakSelector sel;
  bool cell(std::size_t k, std::size_t l, TokenSetView t) { return sel.cell(k, l, t); }
  void new_row() {}
  std::size_t footprint() const { return sel.footprint(); }
  std::size_t carryover() const { return sel.carryover(); }
};

template <class Selector>
Region select_with(Selector& sel, const TokenizedTable& t, MemoryTrace* trace) {
  Region out(t.rows(), t.cols());
  TableEventSource src(t);
  TableEvent ev;
  std::size_t k = 1;
  std::size_t l = 0;
  std::size_t row_max = 0;
  auto finish_row = [&] {
    if (!trace) return;
    trace->row_footprint.push_back(row_max);
    trace->row_carryover.push_back(sel.carryover());
    trace->max_carryover = std::max(trace->max_carryover, sel.carryover());
    row_max = 0;
  };
  while (src.next(ev)) {
    if (ev.kind == TableEvent::Kind::NewRow) {
      finish_row();
      sel.new_row();
      ++k;
      l = 0;
      continue;
    }
    ++l;
    if (sel.cell(k, l, ev.tokens)) out.insert(k, l);
    row_max = std::max(row_max, sel.footprint());
    if (trace) trace->max_footprint = std::max(trace->max_footprint, row_max);
  }
  if (l > 0) finish_row();
  return out;
}

}  // namespace

StreamResult run_weak(const CompiledSchema& schema, EventSource& events,
                      const StreamOptions& opts) {
  std::vector<WeakAdapter> sels;
  for (std::size_t i = 0; i < schema.rule_count(); ++i) {
    const CoordExpr& phi = *schema.doc().rules[i].selector;
    std::string why = non_forward_reason(phi);
    if (!why.empty())
      throw FragmentError("rule " + std::to_string(i + 1) +
                          " is not forward: uses " + why);
    sels.push_back({WeakSelector(phi, schema.alphabet().get())});
  }
  return drive(schema, events, opts, sels, false);
}

StreamResult run_strong(const CompiledSchema& schema, EventSource& events,
                        const StreamOptions& opts) {
  FragmentReport fr = analyze(schema.doc(), opts.guard);
  if (!fr.guarded()) throw FragmentError("schema not guarded");
  std::vector<StrongSelector> sels;
  for (const Rule& r : schema.doc().rules) {
    std::size_t bound = std::size_t{1} << std::min<std::size_t>(size(*r.selector), 20);
    sels.emplace_back(*r.selector, schema.alphabet().get(), bound);
  }
  StreamResult out = drive(schema, events, opts, sels, true);
  for (const auto& s : sels)
    out.trace.max_finite = std::max(out.trace.max_finite, s.max_finite_seen());
  return out;
}

Region select_weak(const CoordExpr& phi, const TokenizedTable& t,
                   MemoryTrace* trace) {
  WeakAdapter sel{WeakSelector(phi, t.alphabet_ptr().get())};
  return select_with(sel, t, trace);
}

Region select_strong(const CoordExpr& phi, const TokenizedTable& t,
                     MemoryTrace* trace, std::optional<std::size_t> max_finite) {
  StrongSelector sel(phi, t.alphabet_ptr().get(), max_finite);
  Region r = select_with(sel, t, trace);
  if (trace) trace->max_finite = sel.max_finite_seen();
  return r;
}

}  // namespace sculpt
