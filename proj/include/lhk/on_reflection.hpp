#pragma once

// Two-strand compatibility check between the wall weights and the bulk face
// weights.  Two lines, carrying parameters u and v, each bounce off the wall
// once and cross each other twice; the two planar arrangements (both
// crossings before the bounces, or both after) tile into two wall triangles
// plus two rhombic crossing tiles.  Summing loop configurations over either
// tiling, with fugacity n per closed loop, gives an amplitude for every
// planar connection pattern of the four external edges; the wall weights are
// compatible with the bulk weights exactly when the two tilings agree
// channel by channel.
//
// Conventions, each pinned numerically (every alternative fails by order
// one, see the layout flags):
//  * The crossing of the two not-yet-bounced lines carries argument u - v;
//    bouncing advances a line's argument by a half turn, so the crossing of
//    a bounced line with a not-yet-bounced one carries u + v + pi.  The
//    shift flips the sign of the four corner weights relative to the bare
//    u + v table and leaves the other five weights unchanged.
//  * Corner arcs spanning the sector whose angle realizes the crossing
//    argument carry u2; the complementary corners carry u1 (w2/w1 for the
//    matching double arcs).  In the edge orderings below this is the table
//    with u2 on the {0,1} and {2,3} corners.
//  * Wall tiles keep the lattice assignment: empty carries r, the arc y.
//
// External edges are indexed cyclically 0..3: 0 enters next to the wall at
// the bottom, 1 enters beside it, 2 leaves at the top away from the wall,
// 3 leaves next to the wall.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lhk/on_weights.hpp"

namespace lhk {

// Connection pattern of the four external edges: partner[e] is the edge the
// strand entering at e exits through, or -1 if e is unoccupied.
using ReflectionChannel = std::array<int, 4>;
using ChannelAmplitudes = std::map<ReflectionChannel, double>;

// Contrast knobs for falsifying the conventions above; the defaults are the
// passing assignment.  plain_corners puts u1 on the argument-sector corners
// instead of u2, unshifted_sum drops the half-turn advance of the bounced
// line, swap_wall exchanges the empty and arc wall weights.
struct ReflectionLayout {
    bool plain_corners = false;
    bool unshifted_sum = false;
    bool swap_wall = false;
};

namespace refl {

struct DiagState {
    std::array<std::pair<int, int>, 2> arcs{};  // local edge index pairs
    int arc_count = 0;
    double wt = 0.0;
};

struct DiagTile {
    std::vector<int> edge;  // local index -> global edge id
    std::vector<DiagState> states;
};

inline DiagState dstate(std::initializer_list<std::pair<int, int>> arcs, double wt) {
    DiagState s;
    s.wt = wt;
    for (const auto& a : arcs) s.arcs[s.arc_count++] = a;
    return s;
}

// Crossing tile with edges in cyclic order; corners {0,1} and {2,3} carry u2
// (w2 for the double arc), the other diagonal u1 (w1); plain reverses that.
inline std::vector<DiagState> crossing_states(const OnWeightSet& w, bool plain = false) {
    const double ua = plain ? w.u1 : w.u2, ub = plain ? w.u2 : w.u1;
    const double wa = plain ? w.w1 : w.w2, wb = plain ? w.w2 : w.w1;
    return {
        dstate({}, w.t),
        dstate({{0, 1}}, ua),
        dstate({{2, 3}}, ua),
        dstate({{1, 2}}, ub),
        dstate({{3, 0}}, ub),
        dstate({{0, 2}}, w.v),
        dstate({{1, 3}}, w.v),
        dstate({{0, 1}, {2, 3}}, wa),
        dstate({{1, 2}, {3, 0}}, wb),
    };
}

// Wall tile: local edges 0,1 are the two legs.
inline std::vector<DiagState> wall_states(const OnBoundaryWeights& bw, bool swapped) {
    return {
        dstate({}, swapped ? bw.y : bw.r),
        dstate({{0, 1}}, swapped ? bw.r : bw.y),
    };
}

// Sum every joint state assignment whose arcs match up across glued edges,
// classify the resulting strand diagram by its external connection pattern,
// and accumulate weight products times n per closed loop.
inline ChannelAmplitudes channel_amplitudes(const std::vector<DiagTile>& tiles, double n,
                                            int n_edges = 8, int n_external = 4) {
    ChannelAmplitudes out;
    std::vector<int> idx(tiles.size(), 0);
    std::vector<int> occ(n_edges);
    std::vector<std::pair<int, int>> arcs;
    while (true) {
        std::fill(occ.begin(), occ.end(), 0);
        arcs.clear();
        double prod = 1.0;
        for (std::size_t ti = 0; ti < tiles.size(); ++ti) {
            const DiagState& s = tiles[ti].states[idx[ti]];
            prod *= s.wt;
            for (int k = 0; k < s.arc_count; ++k) {
                const int a = tiles[ti].edge[s.arcs[k].first];
                const int b = tiles[ti].edge[s.arcs[k].second];
                arcs.emplace_back(a, b);
                ++occ[a];
                ++occ[b];
            }
        }
        bool ok = true;
        for (int e = 0; e < n_edges && ok; ++e)
            ok = e < n_external ? occ[e] <= 1 : (occ[e] == 0 || occ[e] == 2);
        if (ok) {
            std::vector<std::vector<int>> at(n_edges);
            for (std::size_t ai = 0; ai < arcs.size(); ++ai) {
                at[arcs[ai].first].push_back(static_cast<int>(ai));
                at[arcs[ai].second].push_back(static_cast<int>(ai));
            }
            std::vector<char> used(arcs.size(), 0);
            auto step = [&](int edge, int via) {
                used[via] = 1;
                return arcs[via].first == edge ? arcs[via].second : arcs[via].first;
            };
            ReflectionChannel ch{-1, -1, -1, -1};
            for (int e = 0; e < n_external; ++e) {
                if (occ[e] != 1 || ch[e] != -1) continue;
                int cur = e;
                while (true) {
                    int via = -1;
                    for (int ai : at[cur])
                        if (!used[ai]) via = ai;
                    if (via < 0) throw std::logic_error("open strand lost inside the diagram");
                    cur = step(cur, via);
                    if (cur < n_external) break;
                }
                ch[e] = cur;
                ch[cur] = e;
            }
            int loops = 0;
            for (std::size_t ai = 0; ai < arcs.size(); ++ai) {
                if (used[ai]) continue;
                int start = arcs[ai].first, cur = start;
                do {
                    int via = -1;
                    for (int aj : at[cur])
                        if (!used[aj]) via = aj;
                    cur = step(cur, via);
                } while (cur != start);
                ++loops;
            }
            out[ch] += prod * std::pow(n, loops);
        }
        std::size_t ti = 0;
        for (; ti < tiles.size(); ++ti) {
            if (++idx[ti] < static_cast<int>(tiles[ti].states.size())) break;
            idx[ti] = 0;
        }
        if (ti == tiles.size()) break;
    }
    return out;
}

}  // namespace refl

// Channel amplitudes of one of the two tilings.  crossings_first = true puts
// both crossings on the incoming side of the bounces (reading the stack from
// the external edges 0,1 upward: diff crossing, wall u, sum crossing, wall v);
// false reverses the stack (wall v, sum crossing, wall u, diff crossing).
inline ChannelAmplitudes reflection_channels(double lambda, double u, double v,
                                             bool crossings_first,
                                             const ReflectionLayout& lay = {}) {
    const OnWeightSet wd = bulk_weights(lambda, u - v);
    const OnWeightSet ws = bulk_weights(lambda, u + v + (lay.unshifted_sum ? 0.0 : pi));
    const OnBoundaryWeights ku = boundary_weights(lambda, u);
    const OnBoundaryWeights kv = boundary_weights(lambda, v);
    std::vector<refl::DiagTile> tiles;
    if (crossings_first) {
        tiles = {
            {{1, 0, 4, 5}, refl::crossing_states(wd, lay.plain_corners)},
            {{4, 6}, refl::wall_states(ku, lay.swap_wall)},
            {{6, 5, 2, 7}, refl::crossing_states(ws, lay.plain_corners)},
            {{7, 3}, refl::wall_states(kv, lay.swap_wall)},
        };
    } else {
        tiles = {
            {{0, 4}, refl::wall_states(kv, lay.swap_wall)},
            {{1, 4, 5, 7}, refl::crossing_states(ws, lay.plain_corners)},
            {{5, 6}, refl::wall_states(ku, lay.swap_wall)},
            {{6, 7, 2, 3}, refl::crossing_states(wd, lay.plain_corners)},
        };
    }
    return refl::channel_amplitudes(tiles, loop_fugacity(lambda));
}

// Max over channels of the amplitude difference between the two tilings.
inline double reflection_residual(double lambda, double u, double v,
                                  const ReflectionLayout& lay = {}) {
    const auto lhs = reflection_channels(lambda, u, v, true, lay);
    const auto rhs = reflection_channels(lambda, u, v, false, lay);
    double worst = 0.0;
    auto scan = [&](const ChannelAmplitudes& a, const ChannelAmplitudes& b) {
        for (const auto& [key, amp] : a) {
            const auto it = b.find(key);
            worst = std::max(worst, std::abs(amp - (it == b.end() ? 0.0 : it->second)));
        }
    };
    scan(lhs, rhs);
    scan(rhs, lhs);
    return worst;
}

}  // namespace lhk
