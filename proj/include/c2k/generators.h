#ifndef C2K_GENERATORS_H
#define C2K_GENERATORS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2k/graph.h"

namespace c2k {

enum class GraphKind {
    empty,
    cycle,
    path,
    star,
    erdos_renyi,
    complete_bipartite,
    random_bipartite,
    tree,
    petersen,
    projective_plane,
};

/// Parameters of a generated instance. Which fields matter depends on `kind`:
/// n for empty/cycle/path/star/erdos_renyi/tree, p for erdos_renyi and
/// random_bipartite, a/b for the bipartite kinds, q (prime) for projective_plane.
struct GeneratorSpec {
    GraphKind kind = GraphKind::empty;
    std::size_t n = 0;
    double p = 0.0;
    std::size_t a = 0;
    std::size_t b = 0;
    int q = 0;
};

/// Parses "kind[:arg[:arg]]", e.g. "cycle:6", "erdos_renyi:32:0.2",
/// "bipartite:3:4", "random_bipartite:8:8:0.3", "tree:32", "projective_plane:3".
GeneratorSpec parse_generator_spec(const std::string &text);
std::string to_string(const GeneratorSpec &spec);

/// Deterministic for a fixed seed. Throws std::invalid_argument on invalid parameters.
Graph generate(const GeneratorSpec &spec, std::uint64_t seed);

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// K_{1,n-1} with center 0.
Graph star_graph(std::size_t n);
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);
/// Sides [0,a) and [a,a+b).
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph random_bipartite(std::size_t a, std::size_t b, double p, std::uint64_t seed);
Graph random_tree(std::size_t n, std::uint64_t seed);
Graph petersen_graph();
/// Point-line incidence graph of PG(2,q) for prime q: bipartite, (q+1)-regular, girth 6.
Graph projective_plane_incidence(int q);
/// Replaces every edge by a path with `parts` edges.
Graph subdivide(const Graph &g, std::size_t parts);
Graph complete_graph(std::size_t n);

struct PlantedCycle {
    Graph graph;
    std::vector<NodeId> cycle;
    std::optional<NodeId> hub;
};

/// Adds a simple cycle of exactly `length` on distinct existing nodes chosen
/// at random. With `heavy_hub`, the first cycle node additionally receives
/// pendant edges until deg^e > n, where e = degree_exponent (default
/// max(2, length/2)). Pendants go to isolated non-cycle nodes first, then to
/// fresh appended nodes.
PlantedCycle plant_cycle(const Graph &g, std::size_t length, bool heavy_hub, std::uint64_t seed,
                         int degree_exponent = 0);

}  // namespace c2k

#endif
