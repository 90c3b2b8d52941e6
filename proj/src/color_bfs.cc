#include "c2k/color_bfs.h"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace c2k {

namespace {

constexpr std::uint8_t kTagInit = 0;
constexpr std::uint8_t kTagAscending = 1;
constexpr std::uint8_t kTagDescending = 2;
constexpr std::uint8_t kTagBridge = 3;

}  // namespace

ColorBfsConfig ColorBfsConfig::even(int k, std::uint64_t threshold, Stage stage) {
    ColorBfsConfig c;
    c.k = k;
    c.num_colors = 2 * k;
    c.threshold = threshold;
    c.stage = stage;
    return c;
}

ColorBfsConfig ColorBfsConfig::randomized(int k, std::uint64_t tau, Stage stage) {
    if (tau == 0) {
        throw std::invalid_argument("randomized color-BFS needs tau >= 1");
    }
    ColorBfsConfig c = even(k, kRandomizedThreshold, stage);
    c.activation = 1.0 / static_cast<double>(tau);
    return c;
}

int ColorBfsConfig::levels() const {
    return std::max(k - 1, num_colors - 1 - k);
}

void ColorBfsConfig::validate() const {
    if (k < 2) {
        throw std::invalid_argument("color-BFS needs k >= 2");
    }
    if (num_colors != 2 * k && num_colors != 2 * k + 1) {
        throw std::invalid_argument("color-BFS needs 2k or 2k+1 colors");
    }
    if (odd_bridge && num_colors != 2 * k) {
        throw std::invalid_argument("odd bridge is only defined with 2k colors");
    }
    if (threshold == 0) {
        throw std::invalid_argument("color-BFS threshold must be >= 1");
    }
    if (!(activation > 0.0 && activation <= 1.0)) {
        throw std::invalid_argument("activation probability must be in (0, 1]");
    }
}

ColorBfs::ColorBfs(const Graph &h, const Coloring &coloring, const NodeSet &sources, ColorBfsConfig config) {
    reset(h, coloring, sources, config);
}

void ColorBfs::reset(const Graph &h, const Coloring &coloring, const NodeSet &sources, ColorBfsConfig config) {
    config.validate();
    if (coloring.size() != h.node_count() || sources.universe() != h.node_count()) {
        throw std::invalid_argument("color-BFS: coloring/source set size does not match H");
    }
    if (coloring.num_colors() != config.num_colors) {
        throw std::invalid_argument("color-BFS: coloring uses a different palette size");
    }
    h_ = &h;
    coloring_ = &coloring;
    sources_ = &sources;
    config_ = config;
    std::size_t n = h.node_count();
    auto reset_all = [n](std::vector<Received> &v) {
        v.resize(n);
        for (auto &r : v) {
            r.clear();
        }
    };
    reset_all(rx_asc_);
    reset_all(rx_desc_);
    reset_all(rx_bridge_);
    rejected_.assign(n, 0);
    activated_.assign(n, 0);
    forwarded_.assign(n, 0);
    witness_source_.assign(n, 0);
}

std::size_t ColorBfs::phase_count() const {
    return static_cast<std::size_t>(config_.levels()) + 2;
}

PhaseLabel ColorBfs::phase_label(std::size_t phase) const {
    return {config_.stage, static_cast<std::uint16_t>(phase)};
}

void ColorBfs::normalize(Received &r) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end(), [](const auto &a, const auto &b) { return a.first == b.first; }), r.end());
}

std::optional<NodeId> ColorBfs::sender_of(const Received &r, NodeId id) {
    auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(id, NodeId{0}));
    if (it == r.end() || it->first != id) {
        return std::nullopt;
    }
    return it->second;
}

void ColorBfs::forward(NodeId v, const Received &ids, int target_color, std::uint8_t tag, Outbox &out) const {
    for (NodeId u : h_->neighbors(v)) {
        if ((*coloring_)[u] != target_color) {
            continue;
        }
        for (const auto &[id, sender] : ids) {
            out.send(u, Message{id, tag});
        }
    }
}

void ColorBfs::step(NodeId v, const StepContext &ctx, std::span<const Incoming> inbox, Outbox &out) {
    const int m = config_.num_colors;
    const int k = config_.k;
    const int cv = (*coloring_)[v];

    for (const Incoming &in : inbox) {
        const int cf = (*coloring_)[in.from];
        const std::uint8_t tag = in.msg.tag;
        if (tag == kTagBridge) {
            if (config_.odd_bridge && cv == k - 1 && cf == k + 1) {
                rx_bridge_[v].emplace_back(in.msg.id, in.from);
            }
            continue;
        }
        if ((tag == kTagInit || tag == kTagAscending) && cf + 1 == cv && cv <= k) {
            rx_asc_[v].emplace_back(in.msg.id, in.from);
        } else if ((tag == kTagInit || tag == kTagDescending) && (cv + 1) % m == cf && cv >= k) {
            rx_desc_[v].emplace_back(in.msg.id, in.from);
        }
    }

    const int level = static_cast<int>(ctx.phase);
    const int last = config_.levels();

    if (level == 0) {
        if (cv == 0 && sources_->contains(v)) {
            bool active = true;
            if (config_.activation < 1.0) {
                StreamRng rng = ctx.node_rng(v);
                active = std::bernoulli_distribution(config_.activation)(rng);
            }
            if (active) {
                activated_[v] = 1;
                for (NodeId u : h_->neighbors(v)) {
                    out.send(u, Message{v, kTagInit});
                }
            }
        }
        return;
    }

    if (level <= last) {
        if (cv == level && cv <= k - 1) {
            normalize(rx_asc_[v]);
            if (distinct(rx_asc_[v]) <= config_.threshold && !rx_asc_[v].empty()) {
                forwarded_[v] = 1;
                forward(v, rx_asc_[v], cv + 1, kTagAscending, out);
            }
        }
        if (cv == m - level && cv >= k + 1) {
            normalize(rx_desc_[v]);
            if (distinct(rx_desc_[v]) <= config_.threshold && !rx_desc_[v].empty()) {
                forwarded_[v] = 1;
                forward(v, rx_desc_[v], cv - 1, kTagDescending, out);
                if (config_.odd_bridge && cv == k + 1) {
                    forward(v, rx_desc_[v], k - 1, kTagBridge, out);
                }
            }
        }
        return;
    }

    // Final check.
    normalize(rx_asc_[v]);
    normalize(rx_desc_[v]);
    normalize(rx_bridge_[v]);
    auto first_common = [](const Received &a, const Received &b) -> std::optional<NodeId> {
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (i->first < j->first) {
                ++i;
            } else if (j->first < i->first) {
                ++j;
            } else {
                return i->first;
            }
        }
        return std::nullopt;
    };
    if (cv == k) {
        if (auto id = first_common(rx_asc_[v], rx_desc_[v])) {
            rejected_[v] = 1;
            witness_source_[v] = *id;
        }
    } else if (config_.odd_bridge && cv == k - 1) {
        if (auto id = first_common(rx_asc_[v], rx_bridge_[v])) {
            rejected_[v] = 1;
            witness_source_[v] = *id;
        }
    }
}

Verdict ColorBfs::verdict(NodeId v) const {
    return rejected_[v] ? Verdict::reject : Verdict::accept;
}

bool ColorBfs::any_rejected() const {
    return std::any_of(rejected_.begin(), rejected_.end(), [](std::uint8_t r) { return r != 0; });
}

std::vector<NodeId> ColorBfs::rejecting_nodes() const {
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < rejected_.size(); ++v) {
        if (rejected_[v]) {
            out.push_back(static_cast<NodeId>(v));
        }
    }
    return out;
}

std::vector<NodeId> ColorBfs::received(NodeId v) const {
    const int cv = (*coloring_)[v];
    const int k = config_.k;
    Received r;
    if (cv >= 1 && cv <= k - 1) {
        r = rx_asc_[v];
    } else if (cv >= k + 1) {
        r = rx_desc_[v];
    }
    normalize(r);
    std::vector<NodeId> ids;
    ids.reserve(r.size());
    for (const auto &[id, sender] : r) {
        ids.push_back(id);
    }
    return ids;
}

std::optional<std::vector<NodeId>> ColorBfs::trace_back(NodeId from, NodeId source, bool ascending) const {
    // Walks sender links back to the source; returns nodes from `from` to the
    // last node before the source.
    std::vector<NodeId> chain;
    NodeId cur = from;
    for (int guard = 0; guard <= config_.num_colors; ++guard) {
        if ((*coloring_)[cur] == 0) {
            if (cur != source) {
                return std::nullopt;
            }
            return chain;
        }
        chain.push_back(cur);
        Received r = ascending ? rx_asc_[cur] : rx_desc_[cur];
        normalize(r);
        auto sender = sender_of(r, source);
        if (!sender) {
            return std::nullopt;
        }
        cur = *sender;
    }
    return std::nullopt;
}

std::optional<BfsCertificate> ColorBfs::certificate(NodeId v) const {
    if (!rejected_[v]) {
        return std::nullopt;
    }
    BfsCertificate cert;
    cert.rejecting_node = v;
    cert.source = witness_source_[v];
    const NodeId x = cert.source;
    const int cv = (*coloring_)[v];
    const bool bridge = cv != config_.k;
    cert.bridge = bridge;

    Received asc = rx_asc_[v];
    normalize(asc);
    auto a = sender_of(asc, x);
    Received other = bridge ? rx_bridge_[v] : rx_desc_[v];
    normalize(other);
    auto b = sender_of(other, x);
    if (!a || !b) {
        return std::nullopt;
    }
    auto up = trace_back(*a, x, true);
    auto down = trace_back(*b, x, false);
    if (!up || !down) {
        return std::nullopt;
    }
    cert.cycle.push_back(x);
    cert.cycle.insert(cert.cycle.end(), up->rbegin(), up->rend());
    cert.cycle.push_back(v);
    cert.cycle.insert(cert.cycle.end(), down->begin(), down->end());
    return cert;
}

ColorBfsResult run_color_bfs(const Graph &network, const Graph &h, const Coloring &coloring, const NodeSet &sources,
                             const ColorBfsConfig &config, const RunOptions &options) {
    ColorBfs program(h, coloring, sources, config);
    Simulator sim(network);
    ColorBfsResult out;
    out.run = sim.run(program, options);
    out.rejecting = program.rejecting_nodes();
    for (NodeId v : out.rejecting) {
        if (auto cert = program.certificate(v)) {
            out.certificates.push_back(std::move(*cert));
        }
    }
    out.received.resize(h.node_count());
    for (std::size_t v = 0; v < h.node_count(); ++v) {
        out.received[v] = program.received(static_cast<NodeId>(v));
        if (program.activated(static_cast<NodeId>(v))) {
            out.activated.push_back(static_cast<NodeId>(v));
        }
    }
    return out;
}

ColorBfsResult color_bfs(const Graph &network, const Graph &h, const Coloring &coloring, const NodeSet &sources, int k,
                         std::uint64_t tau, const RunOptions &options) {
    return run_color_bfs(network, h, coloring, sources, ColorBfsConfig::even(k, tau), options);
}

ColorBfsResult randomized_color_bfs(const Graph &network, const Graph &h, const Coloring &coloring,
                                    const NodeSet &sources, int k, std::uint64_t tau, const RunOptions &options) {
    return run_color_bfs(network, h, coloring, sources, ColorBfsConfig::randomized(k, tau), options);
}

}  // namespace c2k
