#include "c2k/generators.h"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "c2k/rng.h"

namespace c2k {

namespace {

const std::map<std::string, GraphKind> &kind_names() {
    static const std::map<std::string, GraphKind> names = {
        {"empty", GraphKind::empty},
        {"cycle", GraphKind::cycle},
        {"path", GraphKind::path},
        {"star", GraphKind::star},
        {"erdos_renyi", GraphKind::erdos_renyi},
        {"bipartite", GraphKind::complete_bipartite},
        {"random_bipartite", GraphKind::random_bipartite},
        {"tree", GraphKind::tree},
        {"petersen", GraphKind::petersen},
        {"projective_plane", GraphKind::projective_plane},
    };
    return names;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, sep)) {
        parts.push_back(item);
    }
    return parts;
}

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

bool is_prime(int q) {
    if (q < 2) {
        return false;
    }
    for (int d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string &text) {
    auto parts = split(text, ':');
    require(!parts.empty(), "empty generator spec");
    auto it = kind_names().find(parts[0]);
    require(it != kind_names().end(), "unknown graph kind '" + parts[0] + "'");
    GeneratorSpec spec;
    spec.kind = it->second;
    auto arg = [&](std::size_t i) -> const std::string & {
        require(i < parts.size(), "generator spec '" + text + "' is missing an argument");
        return parts[i];
    };
    auto number = [&](std::size_t i) -> double {
        const std::string &word = arg(i);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(word, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        require(used == word.size() && value >= 0.0, "malformed number '" + word + "' in generator spec '" + text + "'");
        return value;
    };
    auto count = [&](std::size_t i) { return static_cast<std::size_t>(number(i)); };
    switch (spec.kind) {
        case GraphKind::empty:
        case GraphKind::cycle:
        case GraphKind::path:
        case GraphKind::star:
        case GraphKind::tree:
            spec.n = count(1);
            break;
        case GraphKind::erdos_renyi:
            spec.n = count(1);
            spec.p = number(2);
            break;
        case GraphKind::complete_bipartite:
            spec.a = count(1);
            spec.b = count(2);
            break;
        case GraphKind::random_bipartite:
            spec.a = count(1);
            spec.b = count(2);
            spec.p = number(3);
            break;
        case GraphKind::petersen:
            break;
        case GraphKind::projective_plane:
            spec.q = static_cast<int>(number(1));
            require(is_prime(spec.q), "projective_plane order must be prime in '" + text + "'");
            break;
    }
    if (spec.kind == GraphKind::cycle) {
        require(spec.n >= 3, "cycle needs at least 3 nodes in '" + text + "'");
    }
    return spec;
}

std::string to_string(const GeneratorSpec &spec) {
    std::string name;
    for (const auto &[key, kind] : kind_names()) {
        if (kind == spec.kind) {
            name = key;
        }
    }
    std::ostringstream out;
    out << name;
    switch (spec.kind) {
        case GraphKind::empty:
        case GraphKind::cycle:
        case GraphKind::path:
        case GraphKind::star:
        case GraphKind::tree:
            out << ":" << spec.n;
            break;
        case GraphKind::erdos_renyi:
            out << ":" << spec.n << ":" << spec.p;
            break;
        case GraphKind::complete_bipartite:
            out << ":" << spec.a << ":" << spec.b;
            break;
        case GraphKind::random_bipartite:
            out << ":" << spec.a << ":" << spec.b << ":" << spec.p;
            break;
        case GraphKind::petersen:
            break;
        case GraphKind::projective_plane:
            out << ":" << spec.q;
            break;
    }
    return out.str();
}

Graph generate(const GeneratorSpec &spec, std::uint64_t seed) {
    Graph g;
    switch (spec.kind) {
        case GraphKind::empty:
            require(spec.n >= 1, "empty graph needs n >= 1");
            g = Graph(spec.n);
            break;
        case GraphKind::cycle:
            g = cycle_graph(spec.n);
            break;
        case GraphKind::path:
            g = path_graph(spec.n);
            break;
        case GraphKind::star:
            g = star_graph(spec.n);
            break;
        case GraphKind::erdos_renyi:
            g = erdos_renyi(spec.n, spec.p, seed);
            break;
        case GraphKind::complete_bipartite:
            g = complete_bipartite(spec.a, spec.b);
            break;
        case GraphKind::random_bipartite:
            g = random_bipartite(spec.a, spec.b, spec.p, seed);
            break;
        case GraphKind::tree:
            g = random_tree(spec.n, seed);
            break;
        case GraphKind::petersen:
            g = petersen_graph();
            break;
        case GraphKind::projective_plane:
            g = projective_plane_incidence(spec.q);
            break;
    }
    if (!g.check_invariants()) {
        throw std::logic_error("generator produced a non-canonical graph");
    }
    return g;
}

Graph cycle_graph(std::size_t n) {
    require(n >= 3, "cycle needs n >= 3");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n)});
    }
    return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
    require(n >= 1, "path needs n >= 1");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
    }
    return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t n) {
    require(n >= 1, "star needs n >= 1");
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) {
        edges.push_back({0, static_cast<NodeId>(i)});
    }
    return Graph::from_edges(n, edges);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    require(n >= 1, "erdos_renyi needs n >= 1");
    require(p >= 0.0 && p <= 1.0, "erdos_renyi needs 0 <= p <= 1");
    StreamRng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::generator), 1));
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (coin(rng)) {
                edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
            }
        }
    }
    return Graph::from_edges(n, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
    require(a >= 1 && b >= 1, "complete_bipartite needs a, b >= 1");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(a + j)});
        }
    }
    return Graph::from_edges(a + b, edges);
}

Graph random_bipartite(std::size_t a, std::size_t b, double p, std::uint64_t seed) {
    require(a >= 1 && b >= 1, "random_bipartite needs a, b >= 1");
    require(p >= 0.0 && p <= 1.0, "random_bipartite needs 0 <= p <= 1");
    StreamRng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::generator), 2));
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            if (coin(rng)) {
                edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(a + j)});
            }
        }
    }
    return Graph::from_edges(a + b, edges);
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
    require(n >= 1, "tree needs n >= 1");
    StreamRng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::generator), 3));
    std::vector<NodeId> label(n);
    std::iota(label.begin(), label.end(), NodeId{0});
    std::shuffle(label.begin(), label.end(), rng);
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        edges.push_back({label[i], label[parent(rng)]});
    }
    return Graph::from_edges(n, edges);
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({i, i + 5});
        edges.push_back({i + 5, (i + 2) % 5 + 5});
    }
    return Graph::from_edges(10, edges);
}

Graph projective_plane_incidence(int q) {
    require(is_prime(q), "projective_plane needs a prime q");
    std::vector<std::array<int, 3>> points;
    for (int x = 0; x < q; ++x) {
        for (int y = 0; y < q; ++y) {
            points.push_back({1, x, y});
        }
    }
    for (int y = 0; y < q; ++y) {
        points.push_back({0, 1, y});
    }
    points.push_back({0, 0, 1});
    std::size_t m = points.size();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            int dot = points[i][0] * points[j][0] + points[i][1] * points[j][1] + points[i][2] * points[j][2];
            if (dot % q == 0) {
                edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(m + j)});
            }
        }
    }
    return Graph::from_edges(2 * m, edges);
}

Graph subdivide(const Graph &g, std::size_t parts) {
    require(parts >= 1, "subdivide needs parts >= 1");
    std::vector<Edge> edges;
    auto next = static_cast<NodeId>(g.node_count());
    for (const Edge &e : g.edges()) {
        NodeId prev = e.u;
        for (std::size_t j = 1; j < parts; ++j) {
            edges.push_back({prev, next});
            prev = next++;
        }
        edges.push_back({prev, e.v});
    }
    return Graph::from_edges(next, edges);
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
        }
    }
    return Graph::from_edges(n, edges);
}

PlantedCycle plant_cycle(const Graph &g, std::size_t length, bool heavy_hub, std::uint64_t seed,
                         int degree_exponent) {
    require(length >= 3, "plant_cycle needs length >= 3");
    require(length <= g.node_count(), "plant_cycle needs length <= n");
    StreamRng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::generator), 4));
    std::vector<NodeId> order(g.node_count());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);

    PlantedCycle out;
    out.cycle.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(length));
    auto edges = g.edges();
    for (std::size_t i = 0; i < length; ++i) {
        edges.push_back({out.cycle[i], out.cycle[(i + 1) % length]});
    }
    std::size_t n = g.node_count();

    if (heavy_hub) {
        int e = degree_exponent > 0 ? degree_exponent : std::max<int>(2, static_cast<int>(length / 2));
        NodeId hub = out.cycle[0];
        out.hub = hub;
        Graph current = Graph::from_edges(n, edges);
        std::size_t degree = current.degree(hub);
        std::vector<NodeId> isolated;
        for (std::size_t i = length; i < order.size(); ++i) {
            if (g.degree(order[i]) == 0) {
                isolated.push_back(order[i]);
            }
        }
        std::size_t next_isolated = 0;
        while (power_at_most(degree, e, n)) {
            NodeId leaf;
            if (next_isolated < isolated.size()) {
                leaf = isolated[next_isolated++];
            } else {
                leaf = static_cast<NodeId>(n++);
            }
            edges.push_back({hub, leaf});
            ++degree;
        }
    }
    out.graph = Graph::from_edges(n, edges);
    return out;
}

}  // namespace c2k
