#ifndef C2K_FIXTURES_H
#define C2K_FIXTURES_H

#include <cstdint>
#include <vector>

#include "c2k/congest.h"
#include "c2k/graph.h"
#include "c2k/witness.h"

namespace c2k {

/// K_{4,5} between S = {0..3} and W_0 = {4..8}, plus node 9 (V_1) adjacent to all of W_0; k = 2.
struct LevelInstance {
    Graph graph;
    LevelSets levels;
};
LevelInstance k45_instance();

/// Point-line incidence graph of the Fano plane: bipartite, 3-regular, girth 6, 14 nodes.
Graph heawood_graph();

/// A detection scenario with a forced coloring and a forced selection whose
/// designated node rejects in the designated call of detect_even.
struct ForcedScenario {
    Graph graph;
    int k = 2;
    Coloring coloring;
    NodeSet selection;
    NodeId designated_node = 0;
    Stage designated_call = Stage::light;
    std::vector<NodeId> cycle;
};

/// Well-colored C_4 on light nodes only; rejects in the light call.
ForcedScenario light_cycle_scenario();
/// Well-colored C_4 through a heavy selected node; rejects in the selected call.
ForcedScenario selected_cycle_scenario();
/// Well-colored C_4 avoiding S through a heavy node with k^2 selected
/// neighbors; rejects in the heavy call.
ForcedScenario heavy_cycle_scenario();

/// Tree on 24 nodes plus 8 isolated nodes with a planted C_4 through a heavy hub (n = 32).
struct PlantedInstance {
    Graph graph;
    std::vector<NodeId> cycle;
};
PlantedInstance planted_c4_heavy_hub(std::uint64_t seed);

/// Isolated C_4 (0, 1, 2, 3) padded to n nodes, colored 0, 1, 2, 3 along the cycle.
struct ColoredInstance {
    Graph graph;
    Coloring coloring;
    std::vector<NodeId> cycle;
};
ColoredInstance well_colored_c4(std::size_t n);

/// A triangle padded to 16 nodes with a path tail.
Graph girth3_instance();
/// C_9, K_4 subdivided into paths of length 3 (girth 9), Petersen subdivided once (girth 10).
std::vector<Graph> girth9_fixtures();

/// Random LevelSets instance on at most 40 nodes for the given k in {2, 3, 4}.
/// Half of the instances are dense (one level-1 node adjacent to many W_0 nodes).
LevelInstance random_level_instance(int k, std::uint64_t seed);

}  // namespace c2k

#endif
