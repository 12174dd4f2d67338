#include <algorithm>
#include <bit>
#include <sstream>

#include "sumfree/proof.hpp"

namespace sumfree::proof {

namespace {

constexpr std::uint64_t bit(Element e) { return std::uint64_t{1} << e; }

std::uint64_t chain_mask(const Column& col) {
  std::uint64_t m = 0;
  for (Element e : col.chain) m |= bit(e);
  return m;
}

std::uint32_t columns_mask(const std::vector<int>& columns) {
  std::uint32_t m = 0;
  for (int c : columns) m |= std::uint32_t{1} << c;
  return m;
}

std::uint64_t head_mask() {
  static const std::uint64_t m = [] {
    std::uint64_t acc = 0;
    for (int c = 1; c <= 3; ++c) acc |= chain_mask(record_column_table().column(c));
    return acc;
  }();
  return m;
}

NumSet set_of(std::uint64_t mask) {
  std::vector<Element> out;
  for (Element e = 0; e < 64; ++e) {
    if (mask & bit(e)) out.push_back(e);
  }
  return NumSet::from(out);
}

std::optional<Triple> triple_in(std::uint64_t mask) {
  for (Element a = 1; a < 64; ++a) {
    if (!(mask & bit(a))) continue;
    for (Element b = a; a + b < 64; ++b) {
      if ((mask & bit(b)) && (mask & bit(a + b))) return Triple{a, b, a + b};
    }
  }
  return std::nullopt;
}

bool mask_sum_free(std::uint64_t mask) { return !triple_in(mask).has_value(); }

// Sum-free subsets of a head column's live elements that keep the known-in
// ones, as element masks.
std::vector<std::uint64_t> head_column_options(const Column& col, std::uint64_t in, std::uint64_t out) {
  std::vector<std::uint64_t> options;
  const std::size_t n = col.chain.size();
  for (std::uint32_t pick = 0; pick < (1U << n); ++pick) {
    std::uint64_t m = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const Element e = col.chain[i];
      const bool chosen = (pick >> i & 1U) != 0;
      if (chosen && (out & bit(e))) ok = false;
      if (!chosen && (in & bit(e))) ok = false;
      if (chosen) m |= bit(e);
    }
    if (ok && mask_sum_free(m)) options.push_back(m);
  }
  return options;
}

std::string join_columns(const std::vector<int>& columns) {
  std::string s = "{";
  for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + std::to_string(columns[i]);
  return s + "}";
}

}  // namespace

// --- KnowledgeState ----------------------------------------------------------

KnowledgeState::KnowledgeState(int c_size) : c_size_(c_size) {}

NumSet KnowledgeState::known_in() const { return set_of(in_); }
NumSet KnowledgeState::known_out() const { return set_of(out_); }

std::vector<int> KnowledgeState::dead_columns() const {
  std::vector<int> out;
  for (int c = 4; c <= 13; ++c) {
    if (is_dead(c)) out.push_back(c);
  }
  return out;
}

int KnowledgeState::dead_lower_bound(std::uint32_t dead_mask) const noexcept {
  int bound = 0;
  std::uint32_t grouped = 0;
  for (const MutexGroup& g : groups_) {
    const std::uint32_t gm = columns_mask(g.columns);
    grouped |= gm;
    bound += std::max(g.min_dead, std::popcount(dead_mask & gm));
  }
  return bound + std::popcount(dead_mask & ~grouped);
}

int KnowledgeState::committed_dead_min() const noexcept { return dead_lower_bound() - std::popcount(dead_); }

int KnowledgeState::head_count() const noexcept { return std::popcount(in_ & head_mask()); }

int KnowledgeState::head_capacity() const noexcept {
  int total = 0;
  for (int c = 1; c <= 3; ++c) {
    int best = 0;
    for (std::uint64_t m : head_column_options(record_column_table().column(c), in_, out_)) {
      best = std::max(best, std::popcount(m));
    }
    total += best;
  }
  return total;
}

bool KnowledgeState::column_forced(int column) const noexcept {
  if (column < 4 || column > 13 || is_dead(column) || slack() != 0) return false;
  for (const MutexGroup& g : groups_) {
    if (std::find(g.columns.begin(), g.columns.end(), column) == g.columns.end()) continue;
    return std::popcount(dead_ & columns_mask(g.columns)) >= g.min_dead;
  }
  return true;
}

std::optional<std::string> KnowledgeState::refute(std::uint32_t dead_mask) const {
  if (const std::uint64_t both = in_ & out_; both != 0) {
    return std::to_string(std::countr_zero(both)) + " is both in and out of S";
  }
  if (const auto t = triple_in(in_)) return format_triple(*t) + " lies inside S";
  if (const int bound = dead_lower_bound(dead_mask); bound > budget()) {
    return std::to_string(bound) + " dead columns among 4-13 exceed the budget of " + std::to_string(budget());
  }
  if (head_count() > c_size_) {
    return "|C| >= " + std::to_string(head_count()) + " exceeds " + std::to_string(c_size_);
  }
  if (const int cap = head_capacity(); cap < c_size_) {
    return "columns 1-3 can hold at most " + std::to_string(cap) + " elements, fewer than |C| = " +
           std::to_string(c_size_);
  }
  return std::nullopt;
}

std::optional<std::string> KnowledgeState::refutation() const {
  if (auto r = refute(dead_)) return r;
  for (int c = 4; c <= 13; ++c) {
    const Column& col = record_column_table().column(c);
    if (column_forced(c) && (out_ & chain_mask(col)) == chain_mask(col)) {
      return "column " + std::to_string(c) + " must be occupied but all its elements are excluded";
    }
  }
  return std::nullopt;
}

std::optional<std::string> KnowledgeState::refutation_with_implicit_deaths() const {
  std::uint32_t dead = dead_;
  for (int c = 4; c <= 13; ++c) {
    const std::uint64_t m = chain_mask(record_column_table().column(c));
    if ((out_ & m) == m) dead |= std::uint32_t{1} << c;
  }
  return refute(dead);
}

// --- rules -------------------------------------------------------------------

class StepApplier {
 public:
  explicit StepApplier(const KnowledgeState& state) : s_(state) {}

  static void add_in(KnowledgeState& s, Element e) { s.in_ |= bit(e); }
  static void add_out(KnowledgeState& s, Element e) { s.out_ |= bit(e); }
  static std::optional<Triple> triple_inside(const KnowledgeState& s) { return triple_in(s.in_); }

  StepOutcome operator()(const AssumeIn& step) {
    if (s_.is_in(step.element)) return Violation{"hypothesis", std::to_string(step.element) + " is already known in S"};
    add_in(s_, step.element);
    return s_;
  }

  StepOutcome operator()(const AssumeOut& step) {
    if (s_.is_out(step.element)) return Violation{"hypothesis", std::to_string(step.element) + " is already known out of S"};
    add_out(s_, step.element);
    return s_;
  }

  StepOutcome operator()(const ExcludeBySum& step) {
    const Triple& t = step.triple;
    const Element e = step.element;
    const std::string rule = e == t.c ? "R1" : "R2";
    if (t.a + t.b != t.c) return Violation{rule, format_triple(t) + " does not add up"};
    if (e != t.a && e != t.b && e != t.c) {
      return Violation{rule, std::to_string(e) + " does not occur in " + format_triple(t)};
    }
    if (s_.is_in(e)) {
      return Violation{rule, std::to_string(e) + " is known in S; " + format_triple(t) + " would be a contradiction"};
    }
    if (s_.is_out(e)) return Violation{rule, std::to_string(e) + " is already excluded"};
    for (Element v : {t.a, t.b, t.c}) {
      if (v != e && !s_.is_in(v)) {
        return Violation{rule, "premise " + std::to_string(v) + " of " + format_triple(t) + " is not established in S"};
      }
    }
    add_out(s_, e);
    return s_;
  }

  StepOutcome operator()(const ForceInColumn& step) {
    const ColumnTable& table = record_column_table();
    const Element e = step.element;
    if (table.column_of(e) != step.column) {
      return Violation{"R3", std::to_string(e) + " is not in column " + std::to_string(step.column)};
    }
    if (s_.is_in(e)) return Violation{"R3", std::to_string(e) + " is already known in S"};
    if (s_.is_out(e)) return Violation{"R3", std::to_string(e) + " is excluded from S"};
    const Column& col = table.column(step.column);

    if (step.column >= 4) {
      if (s_.is_dead(step.column)) return Violation{"R3", "column " + std::to_string(step.column) + " is dead"};
      if (s_.slack() != 0) {
        return Violation{"R3", "dead-column slack is " + std::to_string(s_.slack()) + ", so column " +
                                   std::to_string(step.column) + " need not be occupied"};
      }
      if (!s_.column_forced(step.column)) {
        return Violation{"R3", "column " + std::to_string(step.column) + " belongs to a mutex group that may still lose it"};
      }
      for (Element other : col.chain) {
        if (other != e && !s_.is_out(other)) {
          return Violation{"R3", "column " + std::to_string(step.column) + " still has " + std::to_string(other) + " open"};
        }
      }
    } else {
      const int cap = s_.head_capacity();
      if (cap != s_.c_size()) {
        return Violation{"R3", "columns 1-3 can hold " + std::to_string(cap) + " elements, not exactly |C| = " +
                                   std::to_string(s_.c_size()) + ", so nothing is forced"};
      }
      const auto options = head_column_options(col, s_.in_, s_.out_);
      int best = 0;
      for (std::uint64_t m : options) best = std::max(best, std::popcount(m));
      for (std::uint64_t m : options) {
        if (std::popcount(m) == best && !(m & bit(e))) {
          return Violation{"R3", "column " + std::to_string(step.column) + " can be filled without " + std::to_string(e)};
        }
      }
    }
    add_in(s_, e);
    return s_;
  }

  StepOutcome operator()(const DeadColumn& step) {
    const int c = step.column;
    if (c < 4) return Violation{"R4", "only columns 4-13 are counted as dead"};
    if (s_.is_dead(c)) return Violation{"R4", "column " + std::to_string(c) + " is already dead"};
    for (Element e : record_column_table().column(c).chain) {
      if (!s_.is_out(e)) return Violation{"R4", std::to_string(e) + " in column " + std::to_string(c) + " is not excluded"};
    }
    s_.dead_ |= std::uint32_t{1} << c;
    return over_budget_or_state();
  }

  StepOutcome operator()(const MutexDead& step) {
    const ColumnTable& table = record_column_table();
    std::uint32_t claimed = 0;
    for (const MutexGroup& g : s_.groups_) claimed |= columns_mask(g.columns);

    for (const MutexGroup& g : step.groups) {
      const std::string name = "group " + join_columns(g.columns);
      const int size = static_cast<int>(g.columns.size());
      if (g.min_dead < 1 || g.min_dead > size) {
        return Violation{"R5", name + ": min " + std::to_string(g.min_dead) + " is outside 1.." + std::to_string(size)};
      }
      std::vector<Element> live;
      for (int c : g.columns) {
        if (c < 4) return Violation{"R5", name + ": column " + std::to_string(c) + " is not among 4-13"};
        const std::uint32_t cbit = std::uint32_t{1} << c;
        if (claimed & cbit) return Violation{"R5", name + ": column " + std::to_string(c) + " is already in a group"};
        if (s_.is_dead(c)) return Violation{"R5", name + ": column " + std::to_string(c) + " is already dead"};
        claimed |= cbit;
        std::vector<Element> open;
        for (Element e : table.column(c).chain) {
          if (!s_.is_out(e)) open.push_back(e);
        }
        if (open.size() != 1) {
          return Violation{"R5", name + ": column " + std::to_string(c) + " has " + std::to_string(open.size()) +
                                     " live elements, expected exactly one"};
        }
        if (s_.is_in(open.front())) {
          return Violation{"R5", name + ": " + std::to_string(open.front()) + " is already known in S"};
        }
        live.push_back(open.front());
      }
      std::uint64_t live_mask = 0;
      for (Element e : live) live_mask |= bit(e);
      for (const Triple& t : g.justification) {
        if (t.a + t.b != t.c) return Violation{"R5", name + ": " + format_triple(t) + " does not add up"};
        const std::uint64_t tm = bit(t.a) | bit(t.b) | bit(t.c);
        if ((tm & ~(live_mask | s_.in_)) != 0 || (tm & live_mask) == 0) {
          return Violation{"R5", name + ": " + format_triple(t) + " is not built from the group's live elements and S"};
        }
      }
      // Any occupied selection of size - min + 1 columns must contain a cited triple.
      const int keep = size - g.min_dead + 1;
      for (std::uint32_t pick = 0; pick < (1U << size); ++pick) {
        if (std::popcount(pick) != keep) continue;
        std::uint64_t chosen = s_.in_;
        for (int i = 0; i < size; ++i) {
          if (pick >> i & 1U) chosen |= bit(live[static_cast<std::size_t>(i)]);
        }
        const bool blocked = std::any_of(g.justification.begin(), g.justification.end(), [&](const Triple& t) {
          const std::uint64_t tm = bit(t.a) | bit(t.b) | bit(t.c);
          return (chosen & tm) == tm;
        });
        if (!blocked) {
          std::string occupied;
          for (int i = 0; i < size; ++i) {
            if (pick >> i & 1U) occupied += (occupied.empty() ? "" : ",") + std::to_string(live[static_cast<std::size_t>(i)]);
          }
          return Violation{"R5", name + ": the cited sums do not rule out {" + occupied + "} together"};
        }
      }
    }
    for (const MutexGroup& g : step.groups) s_.groups_.push_back(g);
    return over_budget_or_state();
  }

  StepOutcome operator()(const Split& step) {
    if (auto gap = find_uncovered_split(s_, step)) {
      return Violation{"R6", "branches miss the consistent assignment " + format_assignment(*gap)};
    }
    return s_;
  }

  StepOutcome operator()(const Contradiction& step) {
    if (step.triple) {
      const Triple& t = *step.triple;
      if (t.a + t.b != t.c) return Violation{"R7", format_triple(t) + " does not add up"};
      for (Element v : {t.a, t.b, t.c}) {
        if (!s_.is_in(v)) return Violation{"R7", std::to_string(v) + " of " + format_triple(t) + " is not established in S"};
      }
      return Closed{format_triple(t) + " lies inside S"};
    }
    if (auto reason = s_.refutation()) return Closed{*reason};
    return Violation{"R7", "no contradiction is established in this state"};
  }

 private:
  StepOutcome over_budget_or_state() {
    const int bound = s_.dead_lower_bound();
    if (bound > s_.budget()) {
      return Closed{std::to_string(bound) + " dead columns among 4-13 exceed the budget of " + std::to_string(s_.budget())};
    }
    return s_;
  }

  KnowledgeState s_;
};

StepOutcome apply_step(const KnowledgeState& state, const ProofStep& step) {
  const StepKind kind = step.kind();
  if (kind != StepKind::AssumeIn && kind != StepKind::AssumeOut && kind != StepKind::Contradiction) {
    if (const auto t = StepApplier::triple_inside(state)) {
      return Violation{"structure", format_triple(*t) + " already lies inside S; only a contradiction may follow"};
    }
  }
  return std::visit(StepApplier(state), step.body);
}

// --- splits ------------------------------------------------------------------

std::string format_assignment(const Assignment& a) {
  return "in " + format_set(a.in) + ", out " + format_set(a.out);
}

std::optional<Assignment> find_uncovered_split(const KnowledgeState& state, const Split& split) {
  std::vector<Element> vars;
  for (const Branch& b : split.branches) {
    for (const Literal& l : b.hypothesis) {
      if (!state.is_in(l.element) && !state.is_out(l.element)) vars.push_back(l.element);
    }
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.size() > 20) {
    std::vector<Element> in(vars.begin(), vars.end());
    return Assignment{NumSet::from(in), {}};
  }

  for (std::uint32_t pick = 0; pick < (1U << vars.size()); ++pick) {
    KnowledgeState trial = state;
    std::vector<Element> in;
    std::vector<Element> out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (pick >> i & 1U) {
        StepApplier::add_in(trial, vars[i]);
        in.push_back(vars[i]);
      } else {
        StepApplier::add_out(trial, vars[i]);
        out.push_back(vars[i]);
      }
    }
    if (trial.refutation_with_implicit_deaths()) continue;
    const bool covered = std::any_of(split.branches.begin(), split.branches.end(), [&](const Branch& b) {
      return std::all_of(b.hypothesis.begin(), b.hypothesis.end(), [&](const Literal& l) {
        return l.in ? trial.is_in(l.element) : trial.is_out(l.element);
      });
    });
    if (!covered) return Assignment{NumSet::from(in), NumSet::from(out)};
  }
  return std::nullopt;
}

// --- scripts -----------------------------------------------------------------

namespace {

class Walker {
 public:
  Walker(const std::string& script, CheckReport& report) : script_(script), report_(report) {}

  void block(KnowledgeState state, const std::vector<Literal>& hypothesis, const std::vector<ProofStep>& steps,
             const std::string& path, SourceLoc where) {
    for (const Literal& lit : hypothesis) {
      ProofStep assume{where, AssumeIn{lit.element}};
      if (!lit.in) assume.body = AssumeOut{lit.element};
      auto outcome = apply_step(state, assume);
      if (auto* v = std::get_if<Violation>(&outcome)) return fail(path, where, *v);
      state = std::get<KnowledgeState>(std::move(outcome));
    }

    for (std::size_t i = 0; i < steps.size(); ++i) {
      const ProofStep& step = steps[i];
      auto outcome = apply_step(state, step);
      if (auto* v = std::get_if<Violation>(&outcome)) return fail(path, step.loc, *v);
      if (std::holds_alternative<Closed>(outcome)) {
        if (i + 1 != steps.size()) {
          return fail(path, steps[i + 1].loc, {"structure", "step follows a branch that is already closed"});
        }
        ++report_.branches_closed;
        return;
      }
      state = std::get<KnowledgeState>(std::move(outcome));
      if (const auto* split = std::get_if<Split>(&step.body)) {
        for (const Branch& b : split->branches) {
          block(state, b.hypothesis, b.steps, path + " > " + b.label, b.loc);
        }
        return;
      }
    }
    fail(path, steps.empty() ? where : steps.back().loc, {"structure", "branch ends without a contradiction"});
  }

 private:
  void fail(const std::string& path, SourceLoc loc, const Violation& v) {
    report_.failures.push_back({script_, path, loc, v.rule, v.explanation});
  }

  const std::string& script_;
  CheckReport& report_;
};

}  // namespace

CheckReport check_script(const ProofScript& script) {
  CheckReport report;
  Walker walker(script.name, report);
  walker.block(KnowledgeState(script.c_size), script.hypothesis, script.steps, script.name, SourceLoc{1, 1});
  report.verdict = report.failures.empty() && report.branches_closed > 0 ? Verdict::Verified : Verdict::Rejected;
  return report;
}

std::string format_report(const CheckReport& report) {
  std::ostringstream out;
  out << "verdict: " << (report.verdict == Verdict::Verified ? "Verified" : "Rejected") << '\n';
  out << "branches_closed: " << report.branches_closed << '\n';
  for (const std::string& note : report.notes) out << "note: " << note << '\n';
  for (const Failure& f : report.failures) {
    out << "failure: " << f.script << ':' << f.loc.line << ':' << f.loc.column << " [" << f.rule << "] " << f.path
        << ": " << f.explanation << '\n';
  }
  return out.str();
}

}  // namespace sumfree::proof
