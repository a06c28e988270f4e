#pragma once

#include "birat3/blowup.hpp"
#include "birat3/models.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace birat3 {

struct BudgetExceeded : std::runtime_error {
    std::int64_t budget;
    explicit BudgetExceeded(std::int64_t b)
        : std::runtime_error("search budget of " + std::to_string(b) + " expanded nodes exceeded"), budget(b) {}
};

// Raised when an exact answer is required but the search hit unclassified points.
struct DepthIncomplete : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// lower <= true value <= upper; upper empty means no finite chain was found
struct DepthBound {
    std::int64_t lower = 0;
    std::optional<std::int64_t> upper = 0;

    bool exact() const { return upper && *upper == lower; }
    std::int64_t value() const;  // DepthIncomplete unless exact
    std::string str() const;
    bool operator==(const DepthBound& o) const { return lower == o.lower && upper == o.upper; }
};

DepthBound operator+(const DepthBound& a, const DepthBound& b);

inline constexpr std::int64_t kDefaultBudget = 100000;

struct DepthOptions {
    std::int64_t budget = kDefaultBudget;
    unsigned threads = 1;
};

enum class DepthKind { General, Gorenstein };

// w-morphisms of a point together with the singular points on each exceptional divisor
struct Expansion {
    std::vector<Contraction> contractions;
    std::vector<std::vector<ChartPoint>> points;
    bool list_complete = true;
    std::string note;
};

bool is_smooth_point(const SingularityModel& m);

class DepthEngine {
public:
    explicit DepthEngine(DepthOptions opt = {});

    DepthBound gdep(const SingularityModel& m) { return solve(m, DepthKind::General); }
    DepthBound dep(const SingularityModel& m) { return solve(m, DepthKind::Gorenstein); }
    DepthBound solve(const SingularityModel& m, DepthKind kind);

    // sum over the singular points of the blow-up
    DepthBound gdep_after(const Contraction& c);

    const Expansion& expand(const SingularityModel& m);
    std::int64_t expanded() const { return expanded_; }
    const DepthOptions& options() const { return opt_; }

private:
    struct Result {
        DepthBound bound;
        std::size_t low;  // shallowest stack frame the result depended on
    };
    Result rec(const SingularityModel& m, DepthKind kind, std::size_t depth);

    DepthOptions opt_;
    std::int64_t expanded_ = 0;
    std::mutex mu_;
    std::map<std::string, std::unique_ptr<Expansion>> expansions_;
    std::map<std::pair<int, std::string>, DepthBound> memo_;
    std::map<std::pair<int, std::string>, std::size_t> on_stack_;
};

struct DepthReport {
    DepthBound gdep, dep, dep_gor;
    std::int64_t expanded = 0;
};

DepthReport depth_report(const SingularityModel& m, const DepthOptions& opt = {});

// Plain breadth-first search over multi-point states without memoization.
DepthBound bfs_gdep(const SingularityModel& m, std::int64_t budget = kDefaultBudget);

// ---------------------------------------------------------------------------

struct TreeNode {
    std::vector<SingularityModel> points;  // singular points of the state
    std::int64_t gdep = 0;
    std::int64_t dep = 0;
};

struct TreeEdge {
    std::size_t from = 0, to = 0;
    std::size_t point = 0;  // index in the source state
    WeightVector weight;
    Rat discrepancy;
    bool strict = false;
    // valuations of the root coordinates along the new exceptional divisor
    std::vector<std::optional<Rat>> valuations;
};

struct ResolutionTree {
    SingularityModel root;
    std::vector<TreeNode> nodes;
    std::vector<TreeEdge> edges;
    std::int64_t picard_gain = 0;
};

ResolutionTree feasible_resolution(const SingularityModel& m, DepthEngine& eng);
// A chain of w-morphisms where pick(point, options) chooses which contraction to use
// for the first singular point of each state; stops after max_steps edges.
ResolutionTree build_chain(const SingularityModel& m, DepthEngine& eng,
                           const std::function<std::size_t(const SingularityModel&, const Expansion&)>& pick,
                           std::size_t max_steps = 64);
ResolutionTree feasible_resolution(const SingularityModel& m, const DepthOptions& opt = {});

bool is_strict(const Contraction& c, DepthEngine& eng);

struct InequalityReport {
    bool ok = true;
    std::int64_t rho = 0;
    std::int64_t delta_gdep = 0;
    bool all_strict = true;
    std::vector<std::string> violations;
};

// Every edge blows up a point (divisorial); checks rho >= gdep drop with equality iff
// all edges are strict, gdep(X) <= gdep(Y) + 1 and dep_Gor(X) >= dep_Gor(Y) per edge.
InequalityReport check_depth_inequalities(const ResolutionTree& chain, DepthEngine& eng);

}  // namespace birat3
