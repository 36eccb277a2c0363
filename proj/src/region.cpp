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

#include "sculpt/region.hpp"

#include <bit>
#include <optional>

#include "sculpt/errors.hpp"

namespace sculpt {

Region Region::full(std::size_t rows, std::size_t cols) {
  Region r(rows, cols);
  r.complement();
  return r;
}

std::size_t Region::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Region::empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::vector<Coordinate> Region::cells() const {
  std::vector<Coordinate> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      out.push_back({i / cols_ + 1, i % cols_ + 1});
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<std::size_t> Region::columns_in_row(std::size_t row) const {
  std::vector<std::size_t> out;
  for (std::size_t l = 1; l <= cols_; ++l)
    if (test((row - 1) * cols_ + (l - 1))) out.push_back(l);
  return out;
}

Region& Region::operator|=(const Region& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Region& Region::operator&=(const Region& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

void Region::complement() {
  for (auto& w : words_) w = ~w;
  trim_tail();
}

void Region::clear() { std::fill(words_.begin(), words_.end(), 0); }

void Region::reset(std::size_t rows, std::size_t cols) {
  rows_ = rows;
  cols_ = cols;
  words_.assign((rows * cols + 63) / 64, 0);
}

void Region::trim_tail() {
  std::size_t n = rows_ * cols_;
  if (n % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
}

// Compiled form ------------------------------------------------------------

namespace {

enum class Action : std::uint8_t { Eps, Up, Down, Left, Right, Filter };

Action reverse(Action a) {
  switch (a) {
    case Action::Up: return Action::Down;
    case Action::Down: return Action::Up;
    case Action::Left: return Action::Right;
    case Action::Right: return Action::Left;
    default: return a;
  }
}

struct Edge {
  Action action;
  int to;
  int filter;  // coordinate node index for Action::Filter
};

struct Program {
  int start = 0;
  int accept = 0;
  std::vector<std::vector<Edge>> fwd;
  std::vector<std::vector<Edge>> rev;

  int add_state() {
    fwd.emplace_back();
    return static_cast<int>(fwd.size()) - 1;
  }
  void add_edge(int from, Action a, int to, int filter = -1) {
    fwd[from].push_back({a, to, filter});
  }
  void finish() {
    rev.assign(fwd.size(), {});
    for (std::size_t s = 0; s < fwd.size(); ++s)
      for (const Edge& e : fwd[s])
        rev[e.to].push_back({reverse(e.action), static_cast<int>(s), e.filter});
  }
};

struct Node {
  CoordKind kind;
  int a = -1;
  int b = -1;
  int program = -1;
  std::string name;
  std::optional<TokenId> id;
};

}  // namespace

struct Evaluator::Impl {
  std::vector<Node> nodes;
  std::vector<Program> programs;
  std::vector<Region> results;
  int top = -1;

  std::shared_ptr<const Alphabet> resolved_for;  // held so the address stays unique
  std::vector<std::uint64_t> visited;
  std::vector<std::uint64_t> stack;

  int add_coord(const CoordExpr& e) {
    Node n{e.kind};
    switch (e.kind) {
      case CoordKind::Token:
        n.name = e.name;
        break;
      case CoordKind::Root:
      case CoordKind::True:
        break;
      case CoordKind::Or:
      case CoordKind::And:
        n.a = add_coord(*e.lhs);
        n.b = add_coord(*e.rhs);
        break;
      case CoordKind::Not:
        n.a = add_coord(*e.lhs);
        break;
      case CoordKind::Exists:
        n.program = add_nav(*e.nav);
        break;
      case CoordKind::Apply:
        n.program = add_nav(*e.nav);
        n.a = add_coord(*e.lhs);
        break;
      default:
        throw Error("cannot evaluate surface expression " + to_string(e) +
                    "; desugar it first");
    }
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  int add_nav(const NavExpr& e) {
    Program p;
    auto [s, f] = build(p, e);
    p.start = s;
    p.accept = f;
    p.finish();
    programs.push_back(std::move(p));
    return static_cast<int>(programs.size()) - 1;
  }

  // Thompson construction; returns (start, accept).
  std::pair<int, int> build(Program& p, const NavExpr& e) {
    auto leaf = [&](Action a, int filter = -1) {
      int s = p.add_state();
      int f = p.add_state();
      p.add_edge(s, a, f, filter);
      return std::pair{s, f};
    };
    switch (e.kind) {
      case NavKind::Epsilon: return leaf(Action::Eps);
      case NavKind::Up: return leaf(Action::Up);
      case NavKind::Down: return leaf(Action::Down);
      case NavKind::Left: return leaf(Action::Left);
      case NavKind::Right: return leaf(Action::Right);
      case NavKind::Filter: {
        int idx = add_coord(*e.filter);
        return leaf(Action::Filter, idx);
      }
      case NavKind::Concat: {
        auto [s1, f1] = build(p, *e.lhs);
        auto [s2, f2] = build(p, *e.rhs);
        p.add_edge(f1, Action::Eps, s2);
        return {s1, f2};
      }
      case NavKind::Union: {
        auto [s1, f1] = build(p, *e.lhs);
        auto [s2, f2] = build(p, *e.rhs);
        int s = p.add_state();
        int f = p.add_state();
        p.add_edge(s, Action::Eps, s1);
        p.add_edge(s, Action::Eps, s2);
        p.add_edge(f1, Action::Eps, f);
        p.add_edge(f2, Action::Eps, f);
        return {s, f};
      }
      case NavKind::Star: {
        auto [s1, f1] = build(p, *e.lhs);
        int s = p.add_state();
        int f = p.add_state();
        p.add_edge(s, Action::Eps, s1);
        p.add_edge(s, Action::Eps, f);
        p.add_edge(f1, Action::Eps, s1);
        p.add_edge(f1, Action::Eps, f);
        return {s, f};
      }
      default:
        throw Error("cannot evaluate surface expression " + to_string(e) +
                    "; desugar it first");
    }
  }

  void resolve(const std::shared_ptr<const Alphabet>& alphabet) {
    if (resolved_for == alphabet) return;
    for (Node& n : nodes)
      if (n.kind == CoordKind::Token) n.id = alphabet->find(n.name);
    resolved_for = alphabet;
  }

  void eval_nodes(const TokenizedTable& t, EvalStats* stats) {
    if (t.alphabet_ptr()) resolve(t.alphabet_ptr());
    const std::size_t n = t.rows();
    const std::size_t m = t.cols();
    results.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& nd = nodes[i];
      Region& out = results[i];
      switch (nd.kind) {
        case CoordKind::Token:
          out.reset(n, m);
          if (nd.id) {
            for (std::size_t k = 1; k <= n; ++k)
              for (std::size_t l = 1; l <= m; ++l)
                if (t.cell(k, l).contains(*nd.id)) out.insert(k, l);
          }
          break;
        case CoordKind::Root:
          out.reset(n, m);
          if (n > 0 && m > 0) out.set(0);
          break;
        case CoordKind::True:
          out = Region::full(n, m);
          break;
        case CoordKind::Or:
          out = results[nd.a];
          out |= results[nd.b];
          break;
        case CoordKind::And:
          out = results[nd.a];
          out &= results[nd.b];
          break;
        case CoordKind::Not:
          out = results[nd.a];
          out.complement();
          break;
        case CoordKind::Exists:
          reach(programs[nd.program], Region::full(n, m), true, out, stats);
          break;
        case CoordKind::Apply:
          reach(programs[nd.program], results[nd.a], false, out, stats);
          break;
        default:
          break;
      }
    }
  }

  // Reachability in the product of a program with the grid. Forward: from
  // (start, c) for c in `from`, collecting cells paired with accept.
  // Reversed: from (accept, c), over reversed edges, collecting cells paired
  // with start.
  void reach(const Program& p, const Region& from, bool reversed, Region& out,
             EvalStats* stats) {
    const std::size_t n = from.rows();
    const std::size_t m = from.cols();
    const std::size_t cells = n * m;
    out.reset(n, m);
    if (cells == 0) return;
    const std::uint64_t states = p.fwd.size();
    visited.assign((states * cells + 63) / 64, 0);
    stack.clear();
    const int init = reversed ? p.accept : p.start;
    const int target = reversed ? p.start : p.accept;
    const auto& adj = reversed ? p.rev : p.fwd;
    std::uint64_t reached = 0;

    auto push = [&](std::uint64_t s, std::uint64_t c) {
      std::uint64_t key = s * cells + c;
      std::uint64_t& w = visited[key / 64];
      std::uint64_t bit = std::uint64_t{1} << (key % 64);
      if (w & bit) return;
      w |= bit;
      ++reached;
      stack.push_back(key);
    };

    const auto& words = from.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits) {
        push(static_cast<std::uint64_t>(init),
             w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    while (!stack.empty()) {
      std::uint64_t key = stack.back();
      stack.pop_back();
      const std::uint64_t s = key / cells;
      const std::uint64_t c = key % cells;
      if (static_cast<int>(s) == target) out.set(c);
      const std::uint64_t row = c / m;
      const std::uint64_t col = c % m;
      for (const Edge& e : adj[s]) {
        const auto to = static_cast<std::uint64_t>(e.to);
        switch (e.action) {
          case Action::Eps: push(to, c); break;
          case Action::Filter:
            if (results[e.filter].test(c)) push(to, c);
            break;
          case Action::Up:
            if (row > 0) push(to, c - m);
            break;
          case Action::Down:
            if (row + 1 < n) push(to, c + m);
            break;
          case Action::Left:
            if (col > 0) push(to, c - 1);
            break;
          case Action::Right:
            if (col + 1 < m) push(to, c + 1);
            break;
        }
      }
    }
    if (stats) stats->product_nodes += reached;
  }
};

Evaluator::Evaluator(const CoordExpr& expr) : impl_(std::make_unique<Impl>()) {
  impl_->top = impl_->add_coord(expr);
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

const Region& Evaluator::eval(const TokenizedTable& t, EvalStats* stats) {
  impl_->eval_nodes(t, stats);
  return impl_->results[impl_->top];
}

std::size_t Evaluator::automaton_states() const {
  std::size_t s = 0;
  for (const auto& p : impl_->programs) s += p.fwd.size();
  return s;
}

Region eval_coord(const CoordExpr& phi, const TokenizedTable& t,
                  EvalStats* stats) {
  Evaluator ev(phi);
  return ev.eval(t, stats);
}

Region eval_nav(const NavExpr& alpha, const Region& from,
                const TokenizedTable& t, EvalStats* stats) {
  Evaluator::Impl impl;
  int prog = impl.add_nav(alpha);
  impl.eval_nodes(t, stats);
  Region out;
  impl.reach(impl.programs[prog], from, false, out, stats);
  return out;
}

Region eval_exists(const NavExpr& alpha, const TokenizedTable& t,
                   EvalStats* stats) {
  Evaluator::Impl impl;
  int prog = impl.add_nav(alpha);
  impl.eval_nodes(t, stats);
  Region out;
  impl.reach(impl.programs[prog], Region::full(t.rows(), t.cols()), true, out,
             stats);
  return out;
}

std::size_t nav_automaton_states(const NavExpr& alpha) {
  Evaluator::Impl impl;
  return impl.programs[impl.add_nav(alpha)].fwd.size();
}

}  // namespace sculpt
