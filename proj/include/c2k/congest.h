#ifndef C2K_CONGEST_H
#define C2K_CONGEST_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "c2k/graph.h"
#include "c2k/parallel.h"
#include "c2k/rng.h"
#include "json.hpp"

namespace c2k {

enum class Verdict : std::uint8_t { undecided, accept, reject };

/// One bandwidth unit: a node identifier plus a small tag.
struct Message {
    NodeId id = 0;
    std::uint8_t tag = 0;
    bool operator==(const Message &) const = default;
};

struct Incoming {
    NodeId from;
    Message msg;
};

struct Outgoing {
    NodeId to;
    Message msg;
};

/// Which part of a protocol a phase belongs to. Ledgers aggregate per label.
enum class Stage : std::uint8_t {
    setup,
    color_exchange,
    light,
    selected,
    heavy,
    merged,
    single,
    custom,
};

const char *stage_name(Stage s);

struct PhaseLabel {
    Stage stage = Stage::custom;
    std::uint16_t level = 0;
    bool operator==(const PhaseLabel &) const = default;
    std::string name() const;
};

struct PhaseRecord {
    PhaseLabel label;
    std::uint64_t executions = 0;
    std::uint64_t rounds = 0;
    std::uint64_t messages = 0;
    std::uint64_t dropped = 0;
    std::uint64_t max_edge_load = 0;
};

/// Round accounting. A phase whose busiest directed edge carries m units is
/// charged exactly m rounds (capped by the phase budget, if any).
/// rounds_elapsed() always equals the sum of per-label round totals.
class RoundLedger {
   public:
    void record_phase(PhaseLabel label, std::uint64_t rounds, std::uint64_t messages, std::uint64_t dropped,
                      std::uint64_t max_edge_load);
    void merge(const RoundLedger &other);

    std::uint64_t rounds_elapsed() const { return rounds_elapsed_; }
    std::uint64_t max_congestion() const { return max_congestion_; }
    std::uint64_t messages() const { return messages_; }
    std::uint64_t dropped() const { return dropped_; }
    std::uint64_t phases_executed() const { return phases_executed_; }
    const std::vector<PhaseRecord> &phases() const { return phases_; }
    std::uint64_t rounds_for(Stage stage) const;

    nlohmann::json to_json() const;

   private:
    std::uint64_t rounds_elapsed_ = 0;
    std::uint64_t max_congestion_ = 0;
    std::uint64_t messages_ = 0;
    std::uint64_t dropped_ = 0;
    std::uint64_t phases_executed_ = 0;
    std::vector<PhaseRecord> phases_;
};

class Outbox {
   public:
    void send(NodeId to, Message msg) { items_.push_back({to, msg}); }
    std::span<const Outgoing> items() const { return items_; }
    void clear() { items_.clear(); }

   private:
    std::vector<Outgoing> items_;
};

struct StepContext {
    std::uint64_t seed = 0;
    std::size_t phase = 0;
    /// Rounds elapsed before this phase started.
    std::uint64_t round = 0;

    /// Per-node stream derived from (seed, node, phase).
    StreamRng node_rng(NodeId v) const { return StreamRng(derive_seed(seed, v, phase, 0x5eed)); }
};

/// A synchronous protocol split into phases. In every phase each node runs
/// step() once on the messages delivered during the previous phase and queues
/// its sends. step() for node v may touch only v's own state, so steps within
/// a phase can run concurrently.
class NodeProgram {
   public:
    virtual ~NodeProgram() = default;
    virtual std::size_t phase_count() const = 0;
    virtual PhaseLabel phase_label(std::size_t phase) const {
        return {Stage::custom, static_cast<std::uint16_t>(phase)};
    }
    virtual void step(NodeId v, const StepContext &ctx, std::span<const Incoming> inbox, Outbox &out) = 0;
    virtual Verdict verdict(NodeId v) const = 0;
};

struct Fault {
    std::size_t phase = 0;
    NodeId from = 0;
    NodeId to = 0;
    std::string describe() const;
};

struct Delivery {
    NodeId from;
    NodeId to;
    Message msg;
    std::uint64_t sent_round;
    std::uint64_t delivered_round;
};

struct RunOptions {
    std::uint64_t seed = 0;
    Exec exec = Exec::serial;
    /// Per-phase round caps; phases past the end of the list are unbounded.
    std::vector<std::uint64_t> phase_budgets;
    /// Record every delivery (for bandwidth and causality checks).
    bool trace = false;
};

struct RunResult {
    std::vector<Verdict> verdicts;
    RoundLedger ledger;
    std::optional<Fault> fault;
    std::vector<Delivery> trace;

    bool completed() const { return !fault.has_value(); }
    std::size_t count(Verdict v) const;
    bool any_reject() const { return count(Verdict::reject) > 0; }
    nlohmann::json to_json() const;
};

/// Lockstep CONGEST simulator over a fixed network. Each directed edge
/// carries at most one Message per round; a logical send of m messages over
/// one edge is serialized over m consecutive rounds. Reusable across runs so
/// buffers are allocated once.
class Simulator {
   public:
    explicit Simulator(const Graph &network);
    const Graph &network() const { return *network_; }

    /// Sending to a non-neighbor aborts the run and reports a Fault.
    RunResult run(NodeProgram &program, const RunOptions &options = {});

   private:
    struct Staged {
        NodeId from;
        NodeId to;
        Message msg;
        std::uint32_t position;
    };

    const Graph *network_;
    std::vector<Outbox> outboxes_;
    std::vector<Incoming> inbox_;
    std::vector<std::size_t> inbox_offsets_;
    std::vector<Incoming> next_inbox_;
    std::vector<std::uint32_t> edge_load_;
    std::vector<std::size_t> touched_edges_;
    std::vector<Staged> staged_;
    std::vector<std::size_t> fill_;
};

RunResult run(const Graph &g, NodeProgram &program, std::uint64_t seed, Exec exec = Exec::serial);
RunResult run_phased(const Graph &g, NodeProgram &program, std::span<const std::uint64_t> phase_budgets,
                     std::uint64_t seed = 0);

}  // namespace c2k

#endif
