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

#include "sculpt/guardedness.hpp"

#include <algorithm>
#include <unordered_map>

namespace sculpt {

bool is_forward(const NavExpr& e) {
  switch (e.kind) {
    case NavKind::Up:
    case NavKind::Left:
      return false;
    case NavKind::Filter:
      return is_forward(*e.filter);
    default:
      return (!e.lhs || is_forward(*e.lhs)) && (!e.rhs || is_forward(*e.rhs));
  }
}

bool is_forward(const CoordExpr& e) {
  if (e.kind == CoordKind::Exists) return false;
  if (e.nav && !is_forward(*e.nav)) return false;
  return (!e.lhs || is_forward(*e.lhs)) && (!e.rhs || is_forward(*e.rhs));
}

std::size_t level(const NavExpr& e) {
  if (e.kind == NavKind::Filter) return 1 + level(*e.filter);
  std::size_t l = e.lhs ? level(*e.lhs) : 0;
  if (e.rhs) l = std::max(l, level(*e.rhs));
  return l;
}

std::size_t level(const CoordExpr& e) {
  switch (e.kind) {
    case CoordKind::Apply:
      return 1 + std::max(level(*e.nav), level(*e.lhs));
    case CoordKind::Exists:
      return 1 + level(*e.nav);
    default: {
      std::size_t l = e.lhs ? level(*e.lhs) : 0;
      if (e.rhs) l = std::max(l, level(*e.rhs));
      return l;
    }
  }
}

namespace {

Verdict meet(Verdict a, Verdict b) {
  return {a.guarded && b.guarded, a.row_guarded && b.row_guarded};
}

bool has_nav(const CoordExpr& e) {
  if (e.kind == CoordKind::Apply || e.kind == CoordKind::Exists) return true;
  return (e.lhs && has_nav(*e.lhs)) || (e.rhs && has_nav(*e.rhs));
}

// Down outside of filters.
bool uses_down(const NavExpr& e) {
  if (e.kind == NavKind::Down) return true;
  return (e.lhs && uses_down(*e.lhs)) || (e.rhs && uses_down(*e.rhs));
}

bool uses_down_star(const NavExpr& e) {
  if (e.kind == NavKind::Star && uses_down(*e.lhs)) return true;
  return (e.lhs && uses_down_star(*e.lhs)) ||
         (e.rhs && uses_down_star(*e.rhs));
}

// One bottom-up pass computing verdicts and checking every application.
class Analyzer {
 public:
  Analyzer(const SchemaDoc& doc, const GuardOptions& opts)
      : doc_(doc), opts_(opts) {}

  bool ok = true;

  Verdict coord(const CoordExpr& e) {
    auto it = seen_.find(&e);
    if (it != seen_.end()) return it->second;
    Verdict v = compute(e);
    seen_.emplace(&e, v);
    return v;
  }

 private:
  Verdict compute(const CoordExpr& e) {
    switch (e.kind) {
      case CoordKind::Token: {
        auto has = [&](const std::vector<std::string>& v) {
          return std::find(v.begin(), v.end(), e.name) != v.end();
        };
        bool g = has(doc_.uniques);
        return {g, g || has(doc_.uniques_per_row)};
      }
      case CoordKind::Root:
      case CoordKind::True:
        return {true, true};
      case CoordKind::And:
      case CoordKind::Or:
        return meet(coord(*e.lhs), coord(*e.rhs));
      case CoordKind::Not:
        coord(*e.lhs);
        return {};
      case CoordKind::Exists:
        filters(*e.nav);
        ok = false;
        return {};
      case CoordKind::Apply: {
        Verdict arg = coord(*e.lhs);
        filters(*e.nav);
        Verdict v = apply(*e.nav, arg, has_nav(*e.lhs));
        if (uses_down(*e.nav) && !v.row_guarded) ok = false;
        if (uses_down_star(*e.nav) && !v.guarded) ok = false;
        return v;
      }
      default:
        // Surface forms do not occur in desugared input.
        ok = false;
        return {};
    }
  }

  // Visits the coordinate expressions inside filters so their own
  // applications are checked.
  void filters(const NavExpr& e) {
    if (e.kind == NavKind::Filter) coord(*e.filter);
    if (e.lhs) filters(*e.lhs);
    if (e.rhs) filters(*e.rhs);
  }

  Verdict apply(const NavExpr& b, Verdict arg, bool arg_nav) {
    switch (b.kind) {
      case NavKind::Epsilon:
      case NavKind::Down:
      case NavKind::Right:
        return arg;
      case NavKind::Up:
      case NavKind::Left:
        return {};
      case NavKind::Filter:
        return meet(arg, seen_.at(b.filter.get()));
      case NavKind::Concat:
        return apply(*b.rhs, apply(*b.lhs, arg, arg_nav), true);
      case NavKind::Union:
        return meet(apply(*b.lhs, arg, arg_nav), apply(*b.rhs, arg, arg_nav));
      case NavKind::Star:
        switch (b.lhs->kind) {
          case NavKind::Down:
            return {arg.guarded, arg.guarded};
          case NavKind::Right:
            if (!arg_nav) return {true, true};
            return {opts_.strict_text ? false : arg.row_guarded,
                    arg.row_guarded};
          case NavKind::Epsilon:
          case NavKind::Filter:
            return arg;
          default:
            return {};
        }
      default:
        return {};
    }
  }

  const SchemaDoc& doc_;
  const GuardOptions& opts_;
  std::unordered_map<const CoordExpr*, Verdict> seen_;
};

}  // namespace

Verdict verdict(const CoordExpr& e, const SchemaDoc& doc,
                const GuardOptions& opts) {
  return Analyzer(doc, opts).coord(e);
}

bool is_guarded_selector(const CoordExpr& e, const SchemaDoc& doc,
                         const GuardOptions& opts) {
  if (!is_forward(e)) return false;
  Analyzer a(doc, opts);
  a.coord(e);
  return a.ok;
}

FragmentReport analyze(const SchemaDoc& doc, const GuardOptions& opts) {
  FragmentReport r;
  bool forward = true, guarded = true;
  for (const Rule& rule : doc.rules) {
    RuleAnalysis ra;
    ra.forward = is_forward(*rule.selector);
    ra.guarded = ra.forward && is_guarded_selector(*rule.selector, doc, opts);
    ra.level = level(*rule.selector);
    forward = forward && ra.forward;
    guarded = guarded && ra.guarded;
    r.rules.push_back(ra);
  }
  r.fragment = guarded   ? Fragment::GuardedForward
               : forward ? Fragment::Forward
                         : Fragment::Full;
  return r;
}

std::string to_string(Fragment f) {
  switch (f) {
    case Fragment::GuardedForward: return "guarded-forward";
    case Fragment::Forward: return "forward";
    case Fragment::Full: return "full";
  }
  return "";
}

std::string format_analysis(const FragmentReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.rules.size(); ++i) {
    const RuleAnalysis& a = r.rules[i];
    out += "rule " + std::to_string(i + 1) + ": forward=" +
           (a.forward ? "y" : "n") + " guarded=" + (a.guarded ? "y" : "n") +
           " level=" + std::to_string(a.level) + "\n";
  }
  out += "schema: fragment=" + to_string(r.fragment) + "\n";
  return out;
}

}  // namespace sculpt
