#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cleconn/mc.hpp"

namespace cleconn {

struct ExactResult {
    long double numerator_weight = 0.0L;
    long double denominator_weight = 0.0L;
    double probability = 0.0;
};

// ---- FK(q) on a rectangle with wired left and right sides ------------------

struct FkInstance {
    int n = 1;
    double q = 2.0;
    std::optional<double> p;  // defaults to the self-dual sqrt(q)/(1+sqrt(q))

    double bond_probability() const;
};

// Graph of the rectangle [0,n+1] x [0,n] with the two side columns contracted.
// Vertex 0 is the left side, vertex 1 the right side.
struct FkGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
};
FkGraph fk_graph(int n);

constexpr int kFkEdgeCap = 24;

ExactResult fk_exact_crossing(const FkInstance& inst);

struct FkMcConfig {
    std::uint64_t sweeps = 20000;
    std::uint64_t burn_in = 1000;
    std::uint64_t batches = 50;
    std::uint64_t seed = 1;
};

McEstimate fk_mc_crossing(const FkInstance& inst, const FkMcConfig& cfg);

// (1 - pi) - pi / (pi + (1 - pi)/q); vanishes at pi = 1/(1+sqrt(q)).
double fk_duality_identity(double pi, double q);

// ---- O(N) loop model on an n x n tile grid ----------------------------------

enum class Tileset { FullyPacked, Dilute };

struct FplInstance {
    int n = 1;
    Tileset tileset = Tileset::FullyPacked;
    double loop_weight = 1.0;
    double mu = 1.0;  // weight per occupied tile arc, dilute only
};

// Boundary stubs are numbered clockwise from the top-left corner: top row left
// to right, right column top to bottom, bottom row right to left, left column
// bottom to top.  The wired arcs join stubs (n-1, 2n-1) and (3n-1, 4n-1); the
// remaining stubs in each gap are joined to their neighbours in pairs.  Needs
// odd n.  In the dilute model a free pair is either empty or occupied at
// both stubs; the wired stubs are always occupied.
struct FplBoundary {
    std::pair<int, int> first_arc;
    std::pair<int, int> second_arc;
    std::vector<std::pair<int, int>> free_pairs;
};
FplBoundary fpl_boundary(int n);

constexpr int kFullyPackedCap = 4;
constexpr int kDiluteCap = 3;

ExactResult fpl_enumerate_hookup(const FplInstance& inst);

// Rotating a fully packed configuration by a quarter turn (and swapping the two
// tiles) maps configurations where the wired arcs share a loop bijectively onto
// those where they do not, adding exactly one loop.
bool fpl_rotation_check(const FplInstance& inst);

}  // namespace cleconn
