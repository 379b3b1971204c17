#include "cleconn/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "cleconn/errors.hpp"

namespace cleconn {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

// ---- FK ------------------------------------------------------------------------

double FkInstance::bond_probability() const {
    if (p) return *p;
    const double s = std::sqrt(q);
    return s / (1.0 + s);
}

FkGraph fk_graph(int n) {
    if (n < 1) throw DomainError("fk grid needs n >= 1");
    FkGraph g;
    g.vertex_count = 2 + n * (n + 1);
    auto vertex = [n](int col, int row) {
        if (col == 0) return 0;
        if (col == n + 1) return 1;
        return 2 + (col - 1) * (n + 1) + row;
    };
    for (int row = 0; row <= n; ++row)
        for (int col = 0; col <= n; ++col) g.edges.emplace_back(vertex(col, row), vertex(col + 1, row));
    for (int col = 1; col <= n; ++col)
        for (int row = 0; row < n; ++row) g.edges.emplace_back(vertex(col, row), vertex(col, row + 1));
    return g;
}

namespace {

void check_fk(const FkInstance& inst) {
    if (!(inst.q > 0.0) || !std::isfinite(inst.q)) throw DomainError("q must be positive");
    const double p = inst.bond_probability();
    if (!(p > 0.0 && p < 1.0)) throw DomainError("bond probability must lie in (0,1)");
    if (inst.n < 1) throw DomainError("fk grid needs n >= 1");
}

}  // namespace

ExactResult fk_exact_crossing(const FkInstance& inst) {
    check_fk(inst);
    const FkGraph g = fk_graph(inst.n);
    const int m = static_cast<int>(g.edges.size());
    if (m > kFkEdgeCap)
        throw ResourceError("fk enumeration over " + std::to_string(m) + " edges exceeds the cap of " +
                            std::to_string(kFkEdgeCap));
    const long double p = inst.bond_probability(), q = inst.q;
    // weight p^o (1-p)^c q^k = (1-p)^m (p/(1-p))^o q^k; the common factor cancels
    const long double ratio = p / (1.0L - p);
    ExactResult res;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        UnionFind uf(g.vertex_count);
        int open = 0, clusters = g.vertex_count;
        for (int e = 0; e < m; ++e)
            if (mask >> e & 1) {
                ++open;
                if (uf.unite(g.edges[e].first, g.edges[e].second)) --clusters;
            }
        const long double w = std::pow(ratio, open) * std::pow(q, clusters);
        res.denominator_weight += w;
        if (uf.find(0) == uf.find(1)) res.numerator_weight += w;
    }
    res.probability = static_cast<double>(res.numerator_weight / res.denominator_weight);
    return res;
}

McEstimate fk_mc_crossing(const FkInstance& inst, const FkMcConfig& cfg) {
    check_fk(inst);
    if (inst.q < 1.0) throw DomainError("heat-bath dynamics needs q >= 1");
    if (inst.n > 32) throw ResourceError("fk monte carlo is limited to n <= 32");
    if (cfg.batches < 50) throw StatisticsError("need at least 50 batches");
    if (cfg.sweeps < cfg.batches) throw StatisticsError("fewer sweeps than batches");
    const FkGraph g = fk_graph(inst.n);
    const double p = inst.bond_probability();
    const double p_isolated = p / (p + inst.q * (1.0 - p));

    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);  // (neighbour, edge)
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        adj[g.edges[e].first].emplace_back(g.edges[e].second, e);
        adj[g.edges[e].second].emplace_back(g.edges[e].first, e);
    }
    std::vector<char> open(g.edges.size(), 0);
    std::vector<int> mark(g.vertex_count, 0);
    int stamp = 0;
    std::vector<int> queue(g.vertex_count);
    auto connected = [&](int from, int to) {
        if (from == to) return true;
        ++stamp;
        int head = 0, tail = 0;
        queue[tail++] = from;
        mark[from] = stamp;
        while (head < tail) {
            const int v = queue[head++];
            for (auto [w, e] : adj[v]) {
                if (!open[e] || mark[w] == stamp) continue;
                if (w == to) return true;
                mark[w] = stamp;
                queue[tail++] = w;
            }
        }
        return false;
    };

    Rng rng = make_rng(cfg.seed, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sweep = [&] {
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            open[e] = 0;
            const bool joined = connected(g.edges[e].first, g.edges[e].second);
            open[e] = unif(rng) < (joined ? p : p_isolated);
        }
    };
    for (std::uint64_t s = 0; s < cfg.burn_in; ++s) sweep();
    const std::uint64_t per_batch = cfg.sweeps / cfg.batches;
    std::vector<double> batch_means(cfg.batches);
    for (std::uint64_t b = 0; b < cfg.batches; ++b) {
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < per_batch; ++s) {
            sweep();
            hits += connected(0, 1);
        }
        batch_means[b] = static_cast<double>(hits) / per_batch;
    }
    McEstimate est = summarize(batch_means, cfg.seed);
    est.n = per_batch * cfg.batches;
    return est;
}

double fk_duality_identity(double pi, double q) {
    if (!(pi > 0.0 && pi < 1.0)) throw DomainError("pi must lie in (0,1)");
    if (!(q > 0.0)) throw DomainError("q must be positive");
    return (1.0 - pi) - pi / (pi + (1.0 - pi) / q);
}

// ---- loop model ----------------------------------------------------------------

namespace {

enum Side { North, East, South, West };

// arcs joining tile sides; the fully packed model uses the last two
const std::array<std::vector<std::pair<Side, Side>>, 7> kTiles = {{
    {},
    {{North, East}},
    {{East, South}},
    {{South, West}},
    {{West, North}},
    {{North, West}, {South, East}},
    {{North, East}, {South, West}},
}};
constexpr int kPackedNW = 5;
constexpr int kPackedNE = 6;

bool occupies(int tile, Side s) {
    for (auto [a, b] : kTiles[tile])
        if (a == s || b == s) return true;
    return false;
}

struct TileGrid {
    int n;
    int horizontal(int r, int c) const { return r * n + c; }
    int vertical(int r, int c) const { return (n + 1) * n + r * (n + 1) + c; }
    int midpoint_count() const { return 2 * n * (n + 1); }
    int side(int r, int c, Side s) const {
        switch (s) {
            case North: return horizontal(r, c);
            case South: return horizontal(r + 1, c);
            case West: return vertical(r, c);
            default: return vertical(r, c + 1);
        }
    }
    // cell and side behind boundary stub k
    std::pair<int, Side> stub_cell(int k) const {
        if (k < n) return {k, North};
        if (k < 2 * n) return {(k - n) * n + (n - 1), East};
        if (k < 3 * n) return {(n - 1) * n + (n - 1 - (k - 2 * n)), South};
        return {(n - 1 - (k - 3 * n)) * n, West};
    }
    int stub_midpoint(int k) const {
        auto [cell, s] = stub_cell(k);
        return side(cell / n, cell % n, s);
    }
};

struct LoopCount {
    bool admissible = false;
    int loops = 0;
    int arcs = 0;
    bool hooked = false;
};

LoopCount count_loops(const TileGrid& grid, const FplBoundary& bd, const std::vector<int>& tiles) {
    const int n = grid.n;
    LoopCount out;
    auto stub_occupied = [&](int k) {
        auto [cell, s] = grid.stub_cell(k);
        return occupies(tiles[cell], s);
    };
    for (int k : {bd.first_arc.first, bd.first_arc.second, bd.second_arc.first, bd.second_arc.second})
        if (!stub_occupied(k)) return out;
    for (auto [a, b] : bd.free_pairs)
        if (stub_occupied(a) != stub_occupied(b)) return out;

    UnionFind uf(grid.midpoint_count());
    std::vector<char> used(grid.midpoint_count(), 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            for (auto [a, b] : kTiles[tiles[r * n + c]]) {
                const int ma = grid.side(r, c, a), mb = grid.side(r, c, b);
                used[ma] = used[mb] = 1;
                uf.unite(ma, mb);
                ++out.arcs;
            }
    uf.unite(grid.stub_midpoint(bd.first_arc.first), grid.stub_midpoint(bd.first_arc.second));
    uf.unite(grid.stub_midpoint(bd.second_arc.first), grid.stub_midpoint(bd.second_arc.second));
    for (auto [a, b] : bd.free_pairs)
        if (stub_occupied(a)) uf.unite(grid.stub_midpoint(a), grid.stub_midpoint(b));
    for (int m = 0; m < grid.midpoint_count(); ++m)
        if (used[m] && uf.find(m) == m) ++out.loops;
    out.hooked = uf.find(grid.stub_midpoint(bd.first_arc.first)) == uf.find(grid.stub_midpoint(bd.second_arc.first));
    out.admissible = true;
    return out;
}

// Every tiling whose interior edges are consistently occupied, cell by cell.
template <class Visit>
void for_each_tiling(int n, const std::vector<int>& tileset, Visit&& visit) {
    std::vector<int> tiles(n * n, 0);
    auto rec = [&](auto&& self, int cell) -> void {
        if (cell == n * n) {
            visit(tiles);
            return;
        }
        const int r = cell / n, c = cell % n;
        for (int t : tileset) {
            if (c > 0 && occupies(t, West) != occupies(tiles[cell - 1], East)) continue;
            if (r > 0 && occupies(t, North) != occupies(tiles[cell - n], South)) continue;
            tiles[cell] = t;
            self(self, cell + 1);
        }
    };
    rec(rec, 0);
}

void check_fpl(const FplInstance& inst) {
    if (inst.n < 1) throw DomainError("tile grid needs n >= 1");
    if (!(inst.loop_weight > 0.0) || !std::isfinite(inst.loop_weight)) throw DomainError("loop weight must be positive");
    if (!(inst.mu > 0.0) || !std::isfinite(inst.mu)) throw DomainError("mu must be positive");
    const int cap = inst.tileset == Tileset::FullyPacked ? kFullyPackedCap : kDiluteCap;
    if (inst.n > cap)
        throw ResourceError("loop enumeration limited to n <= " + std::to_string(cap) + " for this tileset");
}

std::vector<int> tileset_of(Tileset t) {
    if (t == Tileset::FullyPacked) return {kPackedNW, kPackedNE};
    return {0, 1, 2, 3, 4, 5, 6};
}

}  // namespace

FplBoundary fpl_boundary(int n) {
    if (n < 1) throw DomainError("tile grid needs n >= 1");
    if (n % 2 == 0)
        throw ConfigurationError("wired boundary needs odd n: each gap between wired stubs holds n-1 stubs, "
                                 "which cannot be paired for even n");
    FplBoundary bd;
    const int total = 4 * n;
    const std::array<int, 4> wired = {n - 1, 2 * n - 1, 3 * n - 1, 4 * n - 1};
    bd.first_arc = {wired[0], wired[1]};
    bd.second_arc = {wired[2], wired[3]};
    for (int j = 0; j < 4; ++j)
        for (int k = 1; k < n; k += 2)
            bd.free_pairs.emplace_back((wired[j] + k) % total, (wired[j] + k + 1) % total);
    return bd;
}

ExactResult fpl_enumerate_hookup(const FplInstance& inst) {
    check_fpl(inst);
    const FplBoundary bd = fpl_boundary(inst.n);
    const TileGrid grid{inst.n};
    const long double big_n = inst.loop_weight;
    const long double mu = inst.tileset == Tileset::Dilute ? inst.mu : 1.0;
    ExactResult res;
    for_each_tiling(inst.n, tileset_of(inst.tileset), [&](const std::vector<int>& tiles) {
        const LoopCount lc = count_loops(grid, bd, tiles);
        if (!lc.admissible) return;
        const long double w = std::pow(big_n, lc.loops) * std::pow(mu, lc.arcs);
        res.denominator_weight += w;
        if (lc.hooked) res.numerator_weight += w;
    });
    if (!(res.denominator_weight > 0.0L)) throw ConfigurationError("no admissible configuration");
    res.probability = static_cast<double>(res.numerator_weight / res.denominator_weight);
    return res;
}

bool fpl_rotation_check(const FplInstance& inst) {
    if (inst.tileset != Tileset::FullyPacked) throw DomainError("rotation check is for the fully packed model");
    check_fpl(inst);
    const int n = inst.n;
    const FplBoundary bd = fpl_boundary(n);
    const TileGrid grid{n};
    std::map<std::vector<int>, LoopCount> all;
    for_each_tiling(n, tileset_of(inst.tileset), [&](const std::vector<int>& tiles) {
        all.emplace(tiles, count_loops(grid, bd, tiles));
    });
    std::size_t hooked = 0, unhooked = 0;
    std::map<std::vector<int>, int> hits;
    for (const auto& [tiles, lc] : all) {
        if (!lc.admissible) return false;
        if (!lc.hooked) {
            ++unhooked;
            continue;
        }
        ++hooked;
        std::vector<int> turned(n * n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const int old = tiles[(n - 1 - c) * n + r];
                turned[r * n + c] = old == kPackedNW ? kPackedNE : kPackedNW;
            }
        const LoopCount& image = all.at(turned);
        if (image.hooked || image.loops != lc.loops + 1) return false;
        if (++hits[turned] > 1) return false;
    }
    return hooked == unhooked && hits.size() == unhooked;
}

}  // namespace cleconn
