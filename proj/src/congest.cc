#include "c2k/congest.h"

#include <algorithm>
#include <limits>

namespace c2k {

const char *stage_name(Stage s) {
    switch (s) {
        case Stage::setup:
            return "setup";
        case Stage::color_exchange:
            return "color-exchange";
        case Stage::light:
            return "light";
        case Stage::selected:
            return "selected";
        case Stage::heavy:
            return "heavy";
        case Stage::merged:
            return "merged";
        case Stage::single:
            return "single";
        case Stage::custom:
            return "custom";
    }
    return "?";
}

std::string PhaseLabel::name() const {
    return std::string(stage_name(stage)) + "/" + std::to_string(level);
}

void RoundLedger::record_phase(PhaseLabel label, std::uint64_t rounds, std::uint64_t messages, std::uint64_t dropped,
                               std::uint64_t max_edge_load) {
    rounds_elapsed_ += rounds;
    messages_ += messages;
    dropped_ += dropped;
    max_congestion_ = std::max(max_congestion_, max_edge_load);
    ++phases_executed_;
    for (PhaseRecord &rec : phases_) {
        if (rec.label == label) {
            rec.executions++;
            rec.rounds += rounds;
            rec.messages += messages;
            rec.dropped += dropped;
            rec.max_edge_load = std::max(rec.max_edge_load, max_edge_load);
            return;
        }
    }
    phases_.push_back({label, 1, rounds, messages, dropped, max_edge_load});
}

void RoundLedger::merge(const RoundLedger &other) {
    for (const PhaseRecord &rec : other.phases_) {
        auto it = std::find_if(phases_.begin(), phases_.end(), [&](const PhaseRecord &r) { return r.label == rec.label; });
        if (it == phases_.end()) {
            phases_.push_back(rec);
        } else {
            it->executions += rec.executions;
            it->rounds += rec.rounds;
            it->messages += rec.messages;
            it->dropped += rec.dropped;
            it->max_edge_load = std::max(it->max_edge_load, rec.max_edge_load);
        }
    }
    rounds_elapsed_ += other.rounds_elapsed_;
    messages_ += other.messages_;
    dropped_ += other.dropped_;
    phases_executed_ += other.phases_executed_;
    max_congestion_ = std::max(max_congestion_, other.max_congestion_);
}

std::uint64_t RoundLedger::rounds_for(Stage stage) const {
    std::uint64_t total = 0;
    for (const PhaseRecord &rec : phases_) {
        if (rec.label.stage == stage) {
            total += rec.rounds;
        }
    }
    return total;
}

nlohmann::json RoundLedger::to_json() const {
    nlohmann::json phases = nlohmann::json::array();
    for (const PhaseRecord &rec : phases_) {
        phases.push_back({
            {"phase", rec.label.name()},
            {"executions", rec.executions},
            {"rounds", rec.rounds},
            {"messages", rec.messages},
            {"dropped", rec.dropped},
            {"max_edge_load", rec.max_edge_load},
        });
    }
    return {
        {"rounds_elapsed", rounds_elapsed_},
        {"max_congestion", max_congestion_},
        {"messages", messages_},
        {"dropped", dropped_},
        {"phases_executed", phases_executed_},
        {"phases", phases},
    };
}

std::string Fault::describe() const {
    return "phase " + std::to_string(phase) + ": node " + std::to_string(from) + " sent to non-neighbor " +
           std::to_string(to);
}

std::size_t RunResult::count(Verdict v) const {
    return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), v));
}

nlohmann::json RunResult::to_json() const {
    nlohmann::json j = ledger.to_json();
    j["verdicts"] = {{"accept", count(Verdict::accept)}, {"reject", count(Verdict::reject)}};
    if (fault) {
        j["fault"] = fault->describe();
    }
    return j;
}

Simulator::Simulator(const Graph &network)
    : network_(&network),
      outboxes_(network.node_count()),
      inbox_offsets_(network.node_count() + 1, 0),
      edge_load_(network.directed_edge_count(), 0),
      fill_(network.node_count() + 1, 0) {}

RunResult Simulator::run(NodeProgram &program, const RunOptions &options) {
    const Graph &g = *network_;
    const std::size_t n = g.node_count();
    const bool parallel = options.exec == Exec::parallel;
    RunResult result;

    inbox_.clear();
    std::fill(inbox_offsets_.begin(), inbox_offsets_.end(), 0);
    std::uint64_t round = 0;

    const std::size_t phases = program.phase_count();
    for (std::size_t phase = 0; phase < phases; ++phase) {
        StepContext ctx{options.seed, phase, round};

        // Compute kernel: every node steps on its own inbox.
#pragma omp parallel for schedule(static) if (parallel)
        for (std::size_t v = 0; v < n; ++v) {
            outboxes_[v].clear();
            std::span<const Incoming> inbox(inbox_.data() + inbox_offsets_[v], inbox_offsets_[v + 1] - inbox_offsets_[v]);
            program.step(static_cast<NodeId>(v), ctx, inbox, outboxes_[v]);
        }

        // Barrier: validate targets and serialize per directed edge in
        // (sender id, send order) order.
        const std::uint64_t budget = phase < options.phase_budgets.size() ? options.phase_budgets[phase]
                                                                          : std::numeric_limits<std::uint64_t>::max();
        staged_.clear();
        std::uint64_t max_load = 0;
        std::uint64_t dropped = 0;
        std::uint64_t sent = 0;
        for (std::size_t v = 0; v < n && !result.fault; ++v) {
            for (const Outgoing &o : outboxes_[v].items()) {
                std::size_t idx = o.to < n ? g.neighbor_index(static_cast<NodeId>(v), o.to) : g.degree(static_cast<NodeId>(v));
                if (idx == g.degree(static_cast<NodeId>(v))) {
                    result.fault = Fault{phase, static_cast<NodeId>(v), o.to};
                    break;
                }
                std::size_t e = g.adjacency_offset(static_cast<NodeId>(v)) + idx;
                std::uint32_t position = edge_load_[e]++;
                if (position == 0) {
                    touched_edges_.push_back(e);
                }
                ++sent;
                if (position >= budget) {
                    ++dropped;
                    continue;
                }
                staged_.push_back({static_cast<NodeId>(v), o.to, o.msg, position});
            }
        }
        for (std::size_t e : touched_edges_) {
            max_load = std::max<std::uint64_t>(max_load, edge_load_[e]);
            edge_load_[e] = 0;
        }
        touched_edges_.clear();
        if (result.fault) {
            break;
        }
        std::uint64_t phase_rounds = std::min(max_load, budget);

        // Deliver: bucket staged messages by receiver, preserving order.
        std::fill(fill_.begin(), fill_.end(), 0);
        for (const Staged &s : staged_) {
            fill_[s.to + 1]++;
        }
        for (std::size_t v = 0; v < n; ++v) {
            fill_[v + 1] += fill_[v];
        }
        std::copy(fill_.begin(), fill_.end(), inbox_offsets_.begin());
        next_inbox_.resize(staged_.size());
        for (const Staged &s : staged_) {
            next_inbox_[fill_[s.to]++] = Incoming{s.from, s.msg};
            if (options.trace) {
                result.trace.push_back({s.from, s.to, s.msg, round, round + s.position + 1});
            }
        }
        inbox_.swap(next_inbox_);

        result.ledger.record_phase(program.phase_label(phase), phase_rounds, sent, dropped, max_load);
        round += phase_rounds;
    }

    result.verdicts.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        Verdict verdict = program.verdict(static_cast<NodeId>(v));
        result.verdicts[v] = verdict == Verdict::reject ? Verdict::reject : Verdict::accept;
    }
    return result;
}

RunResult run(const Graph &g, NodeProgram &program, std::uint64_t seed, Exec exec) {
    Simulator sim(g);
    RunOptions options;
    options.seed = seed;
    options.exec = exec;
    return sim.run(program, options);
}

RunResult run_phased(const Graph &g, NodeProgram &program, std::span<const std::uint64_t> phase_budgets,
                     std::uint64_t seed) {
    Simulator sim(g);
    RunOptions options;
    options.seed = seed;
    options.phase_budgets.assign(phase_budgets.begin(), phase_budgets.end());
    return sim.run(program, options);
}

}  // namespace c2k
