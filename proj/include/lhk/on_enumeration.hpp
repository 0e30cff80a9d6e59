#pragma once

// Exact enumeration of loop configurations on small rhombic domains with an
// optional open path anchored at the marked boundary midedge a, the winding
// phase observable built from it, and discrete-contour residuals across
// rhombic faces (complex) and triangular boundary faces (imaginary part).
//
// Path winding is the total turning of the step sequence
//   [downward vertical reference, chords between visited midedges, outward
//    transversal at the far endpoint],
// i.e. paths start at a oriented along the outward normal through the bottom
// wall and finish along the canonical crossing transversal stored on the last
// face traversed.  With a on an upper boundary edge (the builder's choice) no
// chord is ever antiparallel to the reference, so every turn stays strictly
// inside the principal branch and the winding is single-valued.
//
// The observable's contour integral vanishes as a complex number on every
// rhombus not touching a, and its imaginary part vanishes on every triangular
// wall face; both cancellations are exact for the weight assignment below and
// break under any other assignment, which is how the convention was pinned.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lhk/lattice.hpp"
#include "lhk/on_weights.hpp"

namespace lhk {

namespace loopdet {

enum WeightId { WT_T = 0, WT_U1, WT_U2, WT_V, WT_W1, WT_W2, WT_ONE, WT_R, WT_Y };

struct FaceState {
    std::array<std::pair<int, int>, 2> arcs{};  // pairs of edge indices
    int arc_count = 0;
    int weight_id = WT_T;
};

inline FaceState make_state(std::initializer_list<std::pair<int, int>> arcs, int wid) {
    FaceState s;
    s.weight_id = wid;
    for (const auto& a : arcs) s.arcs[s.arc_count++] = a;
    return s;
}

// The nine rhombus states: empty, four single corner arcs, two straight
// chords, two double-arc states.  Corner arcs hugging the bottom/top vertices
// carry u1, those hugging the left/right vertices u2; the double states
// inherit w1 (bottom+top) and w2 (left+right).  Edges are indexed as in
// lattice.hpp: 0 lower-left, 1 lower-right, 2 upper-right, 3 upper-left.
inline const std::vector<FaceState>& rhombus_states() {
    static const std::vector<FaceState> s = {
        make_state({}, WT_T),
        make_state({{0, 1}}, WT_U1),
        make_state({{1, 2}}, WT_U2),
        make_state({{2, 3}}, WT_U1),
        make_state({{3, 0}}, WT_U2),
        make_state({{0, 2}}, WT_V),
        make_state({{1, 3}}, WT_V),
        make_state({{0, 1}, {2, 3}}, WT_W1),
        make_state({{1, 2}, {3, 0}}, WT_W2),
    };
    return s;
}

// Triangular wall faces (edges: 0 wall cut, 1 right leg, 2 left leg) have two
// states: empty, and the reflection arc joining the two legs.  Nothing ever
// occupies the cut midedge, so the observable vanishes there and the wall
// edge drops out of contour integrals on its own.  The default weight
// assignment (empty carries r, the reflection carries y) is the one the
// boundary contour identity singles out; swapping or perturbing it breaks
// the identity at finite size.
struct TriangleConvention {
    int empty = WT_R;
    int reflection = WT_Y;
};

inline std::vector<FaceState> triangle_states(const TriangleConvention& tc) {
    return {
        make_state({}, tc.empty),
        make_state({{1, 2}}, tc.reflection),
    };
}

inline double weight_value(int wid, const OnWeightSet& w, const OnBoundaryWeights* bw) {
    switch (wid) {
        case WT_T: return w.t;
        case WT_U1: return w.u1;
        case WT_U2: return w.u2;
        case WT_V: return w.v;
        case WT_W1: return w.w1;
        case WT_W2: return w.w2;
        case WT_ONE: return 1.0;
        case WT_R:
        case WT_Y:
            if (!bw)
                throw std::invalid_argument("boundary weights required for triangle faces");
            return wid == WT_R ? bw->r : bw->y;
    }
    throw std::logic_error("weight_value: bad id");
}

inline std::vector<std::vector<FaceState>> state_tables(const RhombicDomain& dom,
                                                        const TriangleConvention& tc) {
    std::vector<std::vector<FaceState>> st;
    st.reserve(dom.faces.size());
    for (const Face& f : dom.faces) {
        if (f.kind == FaceKind::rhombus)
            st.push_back(rhombus_states());
        else if (f.kind == FaceKind::triangle)
            st.push_back(triangle_states(tc));
        else
            throw std::invalid_argument("loop enumeration does not support pentagon faces");
    }
    return st;
}

inline cplx crossing_transversal(const Face& f, int midedge) {
    const int j = f.edge_index_of(midedge);
    if (j < 0) throw std::logic_error("crossing_transversal: midedge not on face");
    return f.transversals[j];
}

// Depth-first assignment of face states, pruning on finalized midedge parity.
// a_mid >= 0 admits up to two odd midedges, one of which must be a_mid
// (open-path sector on top of the closed one); a_mid < 0 admits none.
template <class Visit>
void enumerate_raw(const RhombicDomain& dom, const std::vector<std::vector<FaceState>>& st,
                   int a_mid, int max_faces, Visit&& visit) {
    const int nfaces = static_cast<int>(dom.faces.size());
    if (nfaces > max_faces) throw std::invalid_argument("enumerate: domain too large");
    std::vector<std::vector<int>> finalize(nfaces);
    std::vector<int> final_depth(dom.midedges.size(), 0);
    for (int m = 0; m < static_cast<int>(dom.midedges.size()); ++m) {
        int last = 0;
        for (int f : dom.midedge_faces[m]) last = std::max(last, f);
        finalize[last].push_back(m);
        final_depth[m] = last;
    }
    std::vector<int> occ(dom.midedges.size(), 0), choice(nfaces, -1), odds;

    std::function<void(int)> rec = [&](int fi) {
        if (fi == nfaces) {
            visit(choice, odds);
            return;
        }
        const Face& face = dom.faces[fi];
        for (int si = 0; si < static_cast<int>(st[fi].size()); ++si) {
            const FaceState& s = st[fi][si];
            for (int k = 0; k < s.arc_count; ++k) {
                ++occ[face.midedge_ids[s.arcs[k].first]];
                ++occ[face.midedge_ids[s.arcs[k].second]];
            }
            int pushed = 0;
            for (int m : finalize[fi])
                if (occ[m] == 1) {
                    odds.push_back(m);
                    ++pushed;
                }
            bool ok = static_cast<int>(odds.size()) <= (a_mid >= 0 ? 2 : 0);
            if (ok && a_mid >= 0 && !odds.empty() && final_depth[a_mid] <= fi && occ[a_mid] != 1)
                ok = false;  // endpoints present but a can no longer be one of them
            if (ok) {
                choice[fi] = si;
                rec(fi + 1);
            }
            for (; pushed > 0; --pushed) odds.pop_back();
            for (int k = 0; k < s.arc_count; ++k) {
                --occ[face.midedge_ids[s.arcs[k].first]];
                --occ[face.midedge_ids[s.arcs[k].second]];
            }
        }
    };
    rec(0);
}

struct Decomposition {
    int closed_loops = 0;
    std::vector<int> path_mids;   // midedge sequence a .. z (empty if no path)
    std::vector<int> path_faces;  // face traversed by each path arc
    std::vector<int> occupied;    // midedges with nonzero occupancy
};

// Split the arc system of a configuration into closed loops plus at most one
// open path traced from a.
inline Decomposition decompose(const RhombicDomain& dom, const std::vector<std::vector<FaceState>>& st,
                               const std::vector<int>& choice, const std::vector<int>& odds,
                               int a_mid) {
    struct ArcEnd {
        int other, face, arc;
    };
    std::vector<std::vector<ArcEnd>> adj(dom.midedges.size());
    int arc_total = 0;
    for (int fi = 0; fi < static_cast<int>(choice.size()); ++fi) {
        const FaceState& s = st[fi][choice[fi]];
        for (int k = 0; k < s.arc_count; ++k) {
            const int ma = dom.faces[fi].midedge_ids[s.arcs[k].first];
            const int mb = dom.faces[fi].midedge_ids[s.arcs[k].second];
            adj[ma].push_back({mb, fi, arc_total});
            adj[mb].push_back({ma, fi, arc_total});
            ++arc_total;
        }
    }
    Decomposition d;
    for (int m = 0; m < static_cast<int>(adj.size()); ++m)
        if (!adj[m].empty()) d.occupied.push_back(m);

    std::vector<char> used(arc_total, 0);
    auto walk_from = [&](int start, std::vector<int>* mids, std::vector<int>* faces) {
        int cur = start;
        while (true) {
            const ArcEnd* next = nullptr;
            for (const ArcEnd& e : adj[cur])
                if (!used[e.arc]) {
                    next = &e;
                    break;
                }
            if (!next) return cur;
            used[next->arc] = 1;
            if (mids) mids->push_back(next->other);
            if (faces) faces->push_back(next->face);
            cur = next->other;
            if (cur == start && !mids) return cur;  // loop closed
        }
    };

    if (!odds.empty()) {
        d.path_mids.push_back(a_mid);
        walk_from(a_mid, &d.path_mids, &d.path_faces);
    }
    for (int m = 0; m < static_cast<int>(adj.size()); ++m)
        for (const ArcEnd& e : adj[m])
            if (!used[e.arc]) {
                walk_from(m, nullptr, nullptr);
                ++d.closed_loops;
            }
    return d;
}

// Winding of the traced path: the initial orientation is the fixed downward
// vertical (the outward normal through the wall the triangles sit on), the
// final one the last face's outward crossing transversal at z.
inline double path_winding(const RhombicDomain& dom, const Decomposition& d) {
    if (d.path_mids.size() < 2) return 0.0;
    std::vector<cplx> steps;
    steps.push_back(cplx{0.0, -1.0});
    for (std::size_t i = 1; i < d.path_mids.size(); ++i)
        steps.push_back(dom.midedges[d.path_mids[i]] - dom.midedges[d.path_mids[i - 1]]);
    steps.push_back(-crossing_transversal(dom.faces[d.path_faces.back()], d.path_mids.back()));
    return winding_angle(steps);
}

}  // namespace loopdet

struct LoopConfig {
    std::vector<int> face_state;
    std::vector<int> occupied_midedges;
    int closed_loop_count = 0;
    std::optional<Path> open_path;
    double winding = 0.0;
};

// Closed-configuration enumeration (contributes to the partition function).
inline std::vector<LoopConfig> enumerate_configs(const RhombicDomain& dom, int max_faces = 12,
                                                 const loopdet::TriangleConvention& tc = {}) {
    const auto st = loopdet::state_tables(dom, tc);
    std::vector<LoopConfig> out;
    loopdet::enumerate_raw(dom, st, -1, max_faces,
                           [&](const std::vector<int>& choice, const std::vector<int>& odds) {
                               auto d = loopdet::decompose(dom, st, choice, odds, -1);
                               LoopConfig c;
                               c.face_state = choice;
                               c.occupied_midedges = d.occupied;
                               c.closed_loop_count = d.closed_loops;
                               out.push_back(std::move(c));
                           });
    return out;
}

// Open-path enumeration between midedges a and z; z == a yields the closed
// configurations carrying the zero-length path.
inline std::vector<LoopConfig> enumerate_configs(const RhombicDomain& dom, int a, int z,
                                                 int max_faces = 12,
                                                 const loopdet::TriangleConvention& tc = {}) {
    const auto st = loopdet::state_tables(dom, tc);
    std::vector<LoopConfig> out;
    loopdet::enumerate_raw(
        dom, st, a, max_faces,
        [&](const std::vector<int>& choice, const std::vector<int>& odds) {
            const bool zero_len = odds.empty() && z == a;
            const bool matches = odds.size() == 2 &&
                                 ((odds[0] == a && odds[1] == z) || (odds[1] == a && odds[0] == z));
            if (!zero_len && !matches) return;
            auto d = loopdet::decompose(dom, st, choice, odds, a);
            LoopConfig c;
            c.face_state = choice;
            c.occupied_midedges = d.occupied;
            c.closed_loop_count = d.closed_loops;
            Path p;
            p.midedges = d.path_mids.empty() ? std::vector<int>{a} : d.path_mids;
            for (std::size_t i = 1; i < d.path_mids.size(); ++i)
                p.steps.push_back(dom.midedges[d.path_mids[i]] - dom.midedges[d.path_mids[i - 1]]);
            c.winding = loopdet::path_winding(dom, d);
            c.open_path = std::move(p);
            out.push_back(std::move(c));
        });
    return out;
}

inline double config_weight(const RhombicDomain& dom, const LoopConfig& c, const OnWeightSet& w,
                            const OnBoundaryWeights* bw = nullptr,
                            const loopdet::TriangleConvention& tc = {}) {
    const auto st = loopdet::state_tables(dom, tc);
    double prod = std::pow(w.n, c.closed_loop_count);
    for (std::size_t fi = 0; fi < c.face_state.size(); ++fi)
        prod *= loopdet::weight_value(st[fi][c.face_state[fi]].weight_id, w, bw);
    return prod;
}

// One sweep accumulating the closed-sector sum and every open-path numerator.
struct ObservableSums {
    double Z = 0.0;
    std::map<int, cplx> numerator;  // keyed by far endpoint midedge
};

inline ObservableSums enumerate_observable(const RhombicDomain& dom, double s,
                                           const OnWeightSet& w,
                                           const OnBoundaryWeights* bw = nullptr,
                                           const loopdet::TriangleConvention& tc = {},
                                           int max_faces = 12) {
    const auto st = loopdet::state_tables(dom, tc);
    const int a = dom.boundary_point_a;
    ObservableSums sums;
    loopdet::enumerate_raw(
        dom, st, a, max_faces,
        [&](const std::vector<int>& choice, const std::vector<int>& odds) {
            if (odds.size() == 2 && odds[0] != a && odds[1] != a) return;
            auto d = loopdet::decompose(dom, st, choice, odds, a);
            double prod = std::pow(w.n, d.closed_loops);
            for (std::size_t fi = 0; fi < choice.size(); ++fi)
                prod *= loopdet::weight_value(st[fi][choice[fi]].weight_id, w, bw);
            if (odds.empty()) {
                sums.Z += prod;
                sums.numerator[a] += prod;  // zero-length path
            } else {
                const double theta = loopdet::path_winding(dom, d);
                sums.numerator[d.path_mids.back()] += prod * std::polar(1.0, -s * theta);
            }
        });
    return sums;
}

inline std::map<int, cplx> observable_map(const RhombicDomain& dom, const ObservableSums& sums) {
    if (sums.Z == 0.0) throw std::runtime_error("observable: vanishing partition function");
    std::map<int, cplx> f;
    for (std::size_t m = 0; m < dom.midedges.size(); ++m) f[static_cast<int>(m)] = 0.0;
    for (const auto& [z, num] : sums.numerator) f[z] = num / sums.Z;
    return f;
}

inline cplx observable(const RhombicDomain& dom, int z, double s, const OnWeightSet& w,
                       const OnBoundaryWeights* bw = nullptr,
                       const loopdet::TriangleConvention& tc = {}, int max_faces = 12) {
    const auto sums = enumerate_observable(dom, s, w, bw, tc, max_faces);
    return observable_map(dom, sums).at(z);
}

// Max |contour integral| of the observable over rhombic faces away from the
// path source: the two faces whose boundary contains a carry the source term
// of the observable and are genuinely non-holomorphic.
inline double verify_bulk_holomorphicity(const RhombicDomain& dom, double s, const OnWeightSet& w,
                                         const OnBoundaryWeights* bw = nullptr,
                                         const loopdet::TriangleConvention& tc = {},
                                         int max_faces = 12) {
    const auto f = observable_map(dom, enumerate_observable(dom, s, w, bw, tc, max_faces));
    double worst = 0.0;
    for (const Face& face : dom.faces)
        if (face.kind == FaceKind::rhombus && face.edge_index_of(dom.boundary_point_a) < 0)
            worst = std::max(worst, std::abs(contour_integral(f, face)));
    return worst;
}

// Max |Im contour integral| of the observable over triangular wall faces away
// from the path source.  The imaginary part is the component the straight
// wall constrains; the real part stays of order one.
inline double verify_boundary_holomorphicity(const RhombicDomain& dom, double s,
                                             const OnWeightSet& w, const OnBoundaryWeights& bw,
                                             const loopdet::TriangleConvention& tc = {},
                                             int max_faces = 12) {
    const auto f = observable_map(dom, enumerate_observable(dom, s, w, &bw, tc, max_faces));
    double worst = 0.0;
    bool any = false;
    for (const Face& face : dom.faces)
        if (face.kind == FaceKind::triangle && face.edge_index_of(dom.boundary_point_a) < 0) {
            any = true;
            worst = std::max(worst, std::abs(contour_integral(f, face).imag()));
        }
    if (!any) throw std::invalid_argument("domain has no triangular boundary faces");
    return worst;
}

}  // namespace lhk
