#ifndef C2K_ORACLE_H
#define C2K_ORACLE_H

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "c2k/graph.h"
#include "c2k/parallel.h"

namespace c2k {

/// Brute-force search refuses inputs above these sizes.
inline constexpr std::size_t kFindCycleNodeLimit = 64;
inline constexpr std::size_t kGirthNodeLimit = 200;

class OracleLimitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct CycleQuery {
    /// Target length (>= 3). With `at_most`, any length in [3, length].
    std::size_t length = 3;
    bool at_most = false;
    /// The cycle must contain a member of this set.
    std::optional<NodeSet> must_intersect;
    /// The cycle, read in some rotation and orientation, must have colors
    /// exactly `color_pattern` under `coloring`. The pattern length must
    /// equal `length` and its entries must be distinct.
    std::optional<Coloring> coloring;
    std::vector<int> color_pattern;
    /// With a color pattern: the vertex matching pattern[0] must lie here.
    std::optional<NodeSet> first_in;

    void validate() const;

    static CycleQuery exact(std::size_t length);
    static CycleQuery up_to(std::size_t length);
    /// Pattern 0, 1, ..., m-1 (a consecutively colored m-cycle).
    static CycleQuery well_colored(const Coloring &coloring, std::size_t m);
};

/// Rotates to the minimum id and orients toward the smaller neighbor.
std::vector<NodeId> canonical_cycle(std::span<const NodeId> cycle);

/// Exhaustive search. Returns a canonical cycle satisfying the query or
/// nothing. The smallest feasible length is tried first in at-most mode.
/// Throws OracleLimitError when n exceeds kFindCycleNodeLimit.
std::optional<std::vector<NodeId>> find_cycle(const Graph &g, const CycleQuery &q);

/// True iff `vertices` is a simple cycle of g meeting every query constraint.
bool validate_cycle(const Graph &g, std::span<const NodeId> vertices, const CycleQuery &q);

/// Length of a shortest cycle, or nothing for forests. BFS from every vertex.
std::optional<std::size_t> girth(const Graph &g, Exec exec = Exec::serial, std::size_t node_limit = kGirthNodeLimit);

/// X_0(v) for all v: the ids x in X with c(x)=0 joined to v by a well-colored
/// path (x, v_1, ..., v) along the ascending chain (colors 1..k-1) or the
/// descending chain (colors m-1..k+1), with m = coloring.num_colors().
/// Entries for colors 0 and k are empty; each set is sorted.
std::vector<std::vector<NodeId>> compute_X0(const Graph &h, const Coloring &coloring, const NodeSet &x, int k);

/// Same sets computed by explicit path enumeration from every source.
std::vector<std::vector<NodeId>> compute_X0_by_enumeration(const Graph &h, const Coloring &coloring,
                                                           const NodeSet &x, int k);

}  // namespace c2k

#endif
