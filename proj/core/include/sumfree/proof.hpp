#pragma once

// Line-oriented proof scripts for the "no sum-free 12-subset" case analysis
// of the 28-element set, and the engine that replays them.
//
//   case NAME
//   c-size K
//   assume-in E | assume-out E          (only at the head of a block)
//   exclude E by A+B=C
//   force-in E column N
//   dead column N
//   mutex-dead columns {N,...} min M by A+B=C [, A+B=C] [; columns ...]
//   split
//     branch [LABEL]
//     begin
//       ...
//     end
//   contradiction [by A+B=C]
//
// '#' starts a comment. S is a hypothetical sum-free 12-subset, C its part
// inside columns 1-3 with |C| = K; columns 4-13 then hold 12 - K elements,
// so at most K - 2 of them may be empty ("dead").

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sumfree/numset.hpp"

namespace sumfree::proof {

struct SourceLoc {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// a + b = c, as written.
struct Triple {
  Element a = 0;
  Element b = 0;
  Element c = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
};

std::string format_triple(const Triple& t);

struct Literal {
  Element element = 0;
  bool in = true;  // element in S, or not

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct MutexGroup {
  std::vector<int> columns;
  int min_dead = 0;
  std::vector<Triple> justification;
};

struct AssumeIn {
  Element element = 0;
};
struct AssumeOut {
  Element element = 0;
};
struct ExcludeBySum {
  Element element = 0;
  Triple triple;
};
struct ForceInColumn {
  Element element = 0;
  int column = 0;
};
struct DeadColumn {
  int column = 0;
};
struct MutexDead {
  std::vector<MutexGroup> groups;
};
struct Contradiction {
  std::optional<Triple> triple;
};

struct ProofStep;

struct Branch {
  std::string label;
  SourceLoc loc;
  std::vector<Literal> hypothesis;
  std::vector<ProofStep> steps;
};

struct Split {
  std::vector<Branch> branches;
};

enum class StepKind { AssumeIn, AssumeOut, ExcludeBySum, ForceInColumn, DeadColumn, MutexDead, Split, Contradiction };

std::string_view to_string(StepKind kind);

struct ProofStep {
  SourceLoc loc;
  std::variant<AssumeIn, AssumeOut, ExcludeBySum, ForceInColumn, DeadColumn, MutexDead, Split, Contradiction> body;

  StepKind kind() const noexcept { return static_cast<StepKind>(body.index()); }
};

struct ProofScript {
  std::string name;
  int c_size = 0;
  std::vector<Literal> hypothesis;
  std::vector<ProofStep> steps;
};

/// Throws sumfree::ParseError with line and column. Elements must lie in the
/// 28-element universe, columns in 1..13, and every A+B=C must add up.
ProofScript parse_script(std::string_view text);

/// What is currently known about S inside one branch.
class KnowledgeState {
 public:
  explicit KnowledgeState(int c_size);

  int c_size() const noexcept { return c_size_; }
  /// Dead columns allowed among 4-13.
  int budget() const noexcept { return c_size_ - 2; }

  bool is_in(Element e) const noexcept { return e < 64 && (in_ >> e & 1U) != 0; }
  bool is_out(Element e) const noexcept { return e < 64 && (out_ >> e & 1U) != 0; }
  NumSet known_in() const;
  NumSet known_out() const;

  std::vector<int> dead_columns() const;
  bool is_dead(int column) const noexcept { return (dead_ >> column & 1U) != 0; }
  const std::vector<MutexGroup>& groups() const noexcept { return groups_; }

  /// Deaths promised by mutex groups beyond the columns already declared dead.
  int committed_dead_min() const noexcept;
  /// Lower bound on dead columns among 4-13 from declared deaths and groups.
  int dead_lower_bound() const noexcept { return dead_lower_bound(dead_); }
  /// budget() - dead_lower_bound(); zero means every unconstrained column must be occupied.
  int slack() const noexcept { return budget() - dead_lower_bound(); }

  /// Largest |C| still reachable: per head column, the biggest sum-free subset
  /// of its live elements that keeps the ones already known in.
  int head_capacity() const noexcept;
  int head_count() const noexcept;

  /// Whether column `column` (4..13) must hold an element of S right now.
  bool column_forced(int column) const noexcept;

  /// First reason this state is impossible without naming a triple, if any.
  std::optional<std::string> refutation() const;
  /// Same as refutation(), also counting columns that are entirely excluded
  /// as dead even if not declared.
  std::optional<std::string> refutation_with_implicit_deaths() const;

 private:
  friend class StepApplier;

  int dead_lower_bound(std::uint32_t dead_mask) const noexcept;
  std::optional<std::string> refute(std::uint32_t dead_mask) const;

  int c_size_;
  std::uint64_t in_ = 0;   // bit v: v known in S
  std::uint64_t out_ = 0;  // bit v: v known outside S
  std::uint32_t dead_ = 0; // bit n: column n declared dead
  std::vector<MutexGroup> groups_;
};

struct Violation {
  std::string rule;  // "R1".."R7", or "structure"
  std::string explanation;
};

struct Closed {
  std::string reason;
};

/// Updated state, a closed branch, or a rule violation.
using StepOutcome = std::variant<KnowledgeState, Closed, Violation>;

/// One deduction. Split only validates coverage and hands the state back;
/// check_script walks the branches.
StepOutcome apply_step(const KnowledgeState& state, const ProofStep& step);

/// Assignment over the elements a split or coverage check ranges over.
struct Assignment {
  NumSet in;
  NumSet out;
};

std::string format_assignment(const Assignment& a);

/// R6: every assignment to the elements named by the branch hypotheses that
/// the state cannot refute outright must satisfy some branch. Returns the
/// first uncovered assignment.
std::optional<Assignment> find_uncovered_split(const KnowledgeState& state, const Split& split);

enum class Verdict { Verified, Rejected };

struct Failure {
  std::string script;
  std::string path;  // branch labels from the root
  SourceLoc loc;
  std::string rule;
  std::string explanation;
};

struct CheckReport {
  Verdict verdict = Verdict::Rejected;
  std::vector<Failure> failures;
  std::size_t branches_closed = 0;
  std::vector<std::string> notes;
};

CheckReport check_script(const ProofScript& script);

std::string format_report(const CheckReport& report);

struct CoverageResult {
  bool covered = false;
  std::optional<Assignment> counterexample;
};

/// Enumerates every sum-free C inside columns 1-3 with |C| = k, together with
/// every assignment of the non-head elements the hypotheses mention that keeps
/// the picked elements sum-free, and checks each against the hypotheses.
CoverageResult check_case_coverage(int k, std::span<const std::vector<Literal>> hypotheses);

/// A script file as text; parsing happens during the bundle check so that
/// malformed files are reported rather than thrown.
struct ScriptSource {
  std::string file_name;
  std::string text;
};

/// Certifies "no sum-free 12-subset": |C| <= 1 and |C| >= 7 are excluded by
/// counting, and for every |C| in 2..6 the scripts must cover all cases and
/// verify. Scripts are checked concurrently, reported in file-name order.
CheckReport check_theorem2_bundle(std::span<const ScriptSource> sources);

/// Loads every *.sfp file in `dir`. Throws std::runtime_error if `dir` is not
/// a readable directory.
std::vector<ScriptSource> load_bundle(const std::filesystem::path& dir);

CheckReport check_theorem2_bundle(const std::filesystem::path& dir);

}  // namespace sumfree::proof
