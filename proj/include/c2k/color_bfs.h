#ifndef C2K_COLOR_BFS_H
#define C2K_COLOR_BFS_H

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "c2k/congest.h"
#include "c2k/graph.h"

namespace c2k {

inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

/// Colored BFS with threshold.
///
/// Sources are the nodes of X colored 0 (each one activating with probability
/// `activation`). Identifiers travel up the ascending chain 0 -> 1 -> ... -> k
/// and down the descending chain 0 -> m-1 -> ... -> k+1 -> k, where m is the
/// number of colors. A node forwards its received set I_v only if
/// |I_v| <= threshold. A node colored k rejects when one identifier reaches it
/// from both chains; the two id-paths then close a cycle of length m.
///
/// With `odd_bridge`, nodes colored k+1 also forward to neighbors colored k-1,
/// which reject on an identifier matching one received from color k-2
/// (a cycle of length m-1 that skips color k).
struct ColorBfsConfig {
    int k = 2;
    int num_colors = 4;
    std::uint64_t threshold = kUnbounded;
    double activation = 1.0;
    bool odd_bridge = false;
    Stage stage = Stage::single;

    /// Deterministic color-BFS looking for C_{2k}.
    static ColorBfsConfig even(int k, std::uint64_t threshold, Stage stage = Stage::single);
    /// Randomized variant: sources activate with probability 1/tau, threshold 4.
    static ColorBfsConfig randomized(int k, std::uint64_t tau, Stage stage = Stage::single);

    int levels() const;
    void validate() const;
};

inline constexpr std::uint64_t kRandomizedThreshold = 4;

struct BfsCertificate {
    NodeId rejecting_node = 0;
    NodeId source = 0;
    bool bridge = false;
    /// Cycle vertices in color order starting at the source.
    std::vector<NodeId> cycle;
};

/// The color-BFS protocol as a NodeProgram. Holds references to H, the
/// coloring and X; they must outlive the program. reset() rebinds and
/// clears state while keeping buffers.
class ColorBfs : public NodeProgram {
   public:
    ColorBfs(const Graph &h, const Coloring &coloring, const NodeSet &sources, ColorBfsConfig config);
    void reset(const Graph &h, const Coloring &coloring, const NodeSet &sources, ColorBfsConfig config);
    ColorBfs(const Graph &, Coloring &&, const NodeSet &, ColorBfsConfig) = delete;
    ColorBfs(const Graph &, const Coloring &, NodeSet &&, ColorBfsConfig) = delete;
    ColorBfs(Graph &&, const Coloring &, const NodeSet &, ColorBfsConfig) = delete;

    std::size_t phase_count() const override;
    PhaseLabel phase_label(std::size_t phase) const override;
    void step(NodeId v, const StepContext &ctx, std::span<const Incoming> inbox, Outbox &out) override;
    Verdict verdict(NodeId v) const override;

    const ColorBfsConfig &config() const { return config_; }
    bool rejected(NodeId v) const { return rejected_[v] != 0; }
    bool any_rejected() const;
    std::vector<NodeId> rejecting_nodes() const;
    bool activated(NodeId v) const { return activated_[v] != 0; }
    bool forwarded(NodeId v) const { return forwarded_[v] != 0; }

    /// I_v: identifiers v received from its chain predecessor color. Empty
    /// for nodes colored 0 or k.
    std::vector<NodeId> received(NodeId v) const;

    /// Reconstructs the certifying cycle for a rejecting node.
    std::optional<BfsCertificate> certificate(NodeId v) const;

   private:
    using Received = std::vector<std::pair<NodeId, NodeId>>;  // (id, sender), sorted, unique by id

    static void normalize(Received &r);
    static std::optional<NodeId> sender_of(const Received &r, NodeId id);
    static std::size_t distinct(const Received &r) { return r.size(); }
    void forward(NodeId v, const Received &ids, int target_color, std::uint8_t tag, Outbox &out) const;
    std::optional<std::vector<NodeId>> trace_back(NodeId from, NodeId source, bool ascending) const;

    const Graph *h_;
    const Coloring *coloring_;
    const NodeSet *sources_;
    ColorBfsConfig config_;

    std::vector<Received> rx_asc_;
    std::vector<Received> rx_desc_;
    std::vector<Received> rx_bridge_;
    std::vector<std::uint8_t> rejected_;
    std::vector<std::uint8_t> activated_;
    std::vector<std::uint8_t> forwarded_;
    std::vector<NodeId> witness_source_;
};

struct ColorBfsResult {
    RunResult run;
    std::vector<NodeId> rejecting;
    std::vector<BfsCertificate> certificates;
    /// I_v for every node (see ColorBfs::received).
    std::vector<std::vector<NodeId>> received;
    std::vector<NodeId> activated;
};

/// Runs one color-BFS call over `network` (H must be a subgraph of it on the
/// same index space).
ColorBfsResult run_color_bfs(const Graph &network, const Graph &h, const Coloring &coloring, const NodeSet &sources,
                             const ColorBfsConfig &config, const RunOptions &options = {});

ColorBfsResult color_bfs(const Graph &network, const Graph &h, const Coloring &coloring, const NodeSet &sources, int k,
                         std::uint64_t tau, const RunOptions &options = {});

ColorBfsResult randomized_color_bfs(const Graph &network, const Graph &h, const Coloring &coloring,
                                    const NodeSet &sources, int k, std::uint64_t tau, const RunOptions &options = {});

}  // namespace c2k

#endif
