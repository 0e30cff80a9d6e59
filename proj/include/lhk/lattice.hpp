#pragma once

// Embedded rhombic-lattice strips with optional triangular or pentagonal
// boundary faces, midedge bookkeeping, discrete contour integrals and winding
// angles of midedge paths.
//
// Conventions fixed here and relied on elsewhere:
//  * rhombi have unit side length and angle alpha at their left/right
//    vertices; the strip axis is horizontal;
//  * every vertex sits at (q*cos(alpha/2), rho*sin(alpha/2)) for integers
//    q, rho with q+rho even; a rhombus (row r, col c) has its left vertex at
//    q = 2c + (r mod 2), rho = r, so odd rows are offset half a face and the
//    left/right strip boundaries are vertical lines up to a zigzag;
//  * face vertices are listed counter-clockwise starting from the left vertex
//    (rhombi: left, bottom, right, top);
//  * a triangle boundary is a straight wall along the bottom of the strip:
//    row 0 holds one triangle per column, the upper half of a rhombus cut
//    along its horizontal diagonal (vertices: left cut end, right cut end,
//    apex; edge 0 is the wall cut, edge 1 the right leg, edge 2 the left
//    leg), and full rhombus rows 1..rows sit on top of it with the legs
//    shared;
//  * a pentagon replaces a right-boundary face by its left half extended by
//    two unit edges meeting the boundary cut, which is the single
//    non-contributing edge.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lhk/numerics.hpp"

namespace lhk {

enum class FaceKind { rhombus, triangle, pentagon };
enum class BoundaryKind { rhombi_only, triangles, pentagons };

inline const char* to_string(FaceKind k) {
    switch (k) {
        case FaceKind::rhombus: return "rhombus";
        case FaceKind::triangle: return "triangle";
        default: return "pentagon";
    }
}

struct Face {
    FaceKind kind = FaceKind::rhombus;
    std::vector<cplx> vertices;     // counter-clockwise
    std::vector<int> midedge_ids;   // edge j joins vertices[j] -> vertices[(j+1) % m]
    std::vector<int> contributing;  // edge indices entering contour integrals
    std::vector<cplx> transversals;  // unit inward crossing direction per edge
    int row = 0, col = 0;

    int edge_count() const { return static_cast<int>(vertices.size()); }
    cplx edge_vector(int j) const {
        return vertices[(j + 1) % vertices.size()] - vertices[j];
    }
    cplx midedge_position(int j) const {
        return 0.5 * (vertices[(j + 1) % vertices.size()] + vertices[j]);
    }
    int edge_index_of(int midedge) const {
        for (int j = 0; j < edge_count(); ++j)
            if (midedge_ids[j] == midedge) return j;
        return -1;
    }
};

struct Path {
    std::vector<int> midedges;
    std::vector<cplx> steps;
};

struct RhombicDomain {
    double alpha = 0.0;
    std::optional<double> beta;  // pentagon boundary opening angle
    int rows = 0, cols = 0;
    std::vector<Face> faces;
    std::vector<cplx> midedges;                   // embedding coordinate per midedge id
    std::vector<std::vector<int>> midedge_faces;  // incident face indices per midedge id
    int boundary_point_a = 0;                     // marked boundary midedge
};

// Discrete contour integral sum_j (p_{j+1}-p_j) f((p_{j+1}+p_j)/2) over the
// face's contributing edges.
inline cplx contour_integral(const std::map<int, cplx>& f, const Face& face) {
    cplx acc{0.0, 0.0};
    for (int j : face.contributing) {
        auto it = f.find(face.midedge_ids[j]);
        if (it == f.end())
            throw std::invalid_argument("contour_integral: f undefined at a required midedge");
        acc += face.edge_vector(j) * it->second;
    }
    return acc;
}

// Signed turn from direction `from` to direction `to`, in (-pi, pi].
inline double turn_angle(cplx from, cplx to) {
    if (std::abs(from) == 0.0 || std::abs(to) == 0.0)
        throw std::invalid_argument("turn_angle: zero-length step");
    double t = std::arg(to / from);
    if (t <= -pi) t += 2.0 * pi;
    return t;
}

// Total turning of a polyline given as a list of step direction vectors.
inline double winding_angle(const std::vector<cplx>& steps) {
    if (steps.size() < 2) throw std::invalid_argument("winding_angle: need at least 2 steps");
    double acc = 0.0;
    for (std::size_t i = 1; i < steps.size(); ++i) acc += turn_angle(steps[i - 1], steps[i]);
    return acc;
}

inline double winding_angle(const Path& p) { return winding_angle(p.steps); }

// Path through listed midedges; consecutive midedges must share a face.
inline Path path_through(const RhombicDomain& dom, const std::vector<int>& midedge_ids) {
    if (midedge_ids.size() < 2)
        throw std::invalid_argument("path_through: need at least 2 midedges");
    Path p;
    p.midedges = midedge_ids;
    for (std::size_t i = 1; i < midedge_ids.size(); ++i) {
        const int a = midedge_ids[i - 1], b = midedge_ids[i];
        bool common = false;
        for (int fa : dom.midedge_faces.at(a))
            for (int fb : dom.midedge_faces.at(b))
                if (fa == fb) common = true;
        if (!common)
            throw std::invalid_argument("path_through: consecutive midedges share no face");
        const cplx step = dom.midedges[b] - dom.midedges[a];
        if (std::abs(step) == 0.0)
            throw std::invalid_argument("path_through: zero-length step");
        p.steps.push_back(step);
    }
    return p;
}

inline RhombicDomain build_domain(int rows, int cols, double alpha, BoundaryKind kind,
                                  std::optional<double> beta = std::nullopt) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("build_domain: rows and cols must be >= 1");
    if (!(alpha > 0.0 && alpha < pi))
        throw std::invalid_argument("build_domain: alpha must lie in (0,pi)");
    if (kind == BoundaryKind::pentagons) {
        if (!beta) throw std::invalid_argument("build_domain: beta required for pentagon boundary");
        if (!(*beta > 0.0 && *beta < pi))
            throw std::invalid_argument("build_domain: beta must lie in (0,pi)");
        // The boundary cut runs upward between the two added unit edges; it
        // degenerates to a point at beta = pi - alpha and would self-intersect
        // below that.
        if (*beta < pi - alpha - 1e-12)
            throw std::invalid_argument("build_domain: pentagon boundary needs beta >= pi - alpha");
    } else if (beta) {
        throw std::invalid_argument("build_domain: beta only meaningful for pentagon boundary");
    }

    const double hw = std::cos(alpha / 2.0);  // half horizontal diagonal
    const double h = std::sin(alpha / 2.0);   // half vertical diagonal = row height
    auto pos = [&](int q, int rho) { return cplx{q * hw, rho * h}; };

    RhombicDomain dom;
    dom.alpha = alpha;
    dom.beta = beta;
    dom.rows = rows;
    dom.cols = cols;

    std::map<std::pair<std::int64_t, std::int64_t>, int> registry;
    auto midedge_id = [&](cplx p) {
        const auto key = std::make_pair(std::llround(p.real() * 1e7), std::llround(p.imag() * 1e7));
        const auto [it, fresh] = registry.emplace(key, static_cast<int>(dom.midedges.size()));
        if (fresh) dom.midedges.push_back(p);
        return it->second;
    };

    // Inward crossing directions: along the lattice diagonals d1/d2 on
    // original rhombus edges (the centre-to-centre direction of the rhombic
    // tiling), vertical across the triangle wall, and the inward normal on
    // the pentagon's added unit edges.
    const cplx d1 = std::polar(1.0, -alpha / 2.0), d2 = std::polar(1.0, alpha / 2.0);

    if (kind == BoundaryKind::triangles)
        for (int c = 0; c < cols; ++c) {
            const int q = 2 * c;
            Face face;
            face.kind = FaceKind::triangle;
            face.row = 0;
            face.col = c;
            face.vertices = {pos(q, 0), pos(q + 2, 0), pos(q + 1, 1)};
            face.contributing = {0, 1, 2};  // edge 0 is the wall cut
            face.transversals = {cplx{0.0, 1.0}, -d2, d1};
            for (int j = 0; j < face.edge_count(); ++j)
                face.midedge_ids.push_back(midedge_id(face.midedge_position(j)));
            dom.faces.push_back(std::move(face));
        }

    const int r_lo = kind == BoundaryKind::triangles ? 1 : 0;
    const int r_hi = kind == BoundaryKind::triangles ? rows : rows - 1;
    for (int r = r_lo; r <= r_hi; ++r)
        for (int c = 0; c < cols; ++c) {
            const int q = 2 * c + (r % 2);
            const cplx p1 = pos(q, r), p2 = pos(q + 1, r - 1), p3 = pos(q + 2, r),
                       p4 = pos(q + 1, r + 1);
            Face face;
            face.row = r;
            face.col = c;
            if (kind == BoundaryKind::pentagons && r % 2 == 0 && c == cols - 1) {
                const cplx b2 = p2 + std::polar(1.0, pi / 2.0 - *beta / 2.0);
                const cplx b1 = p4 + std::polar(1.0, *beta / 2.0 - pi / 2.0);
                face.kind = FaceKind::pentagon;
                face.vertices = {p4, p1, p2, b2, b1};  // edge 3 (b2 -> b1) is the boundary cut
                face.contributing = {0, 1, 2, 4};
                face.transversals = {d1, d2, std::polar(1.0, pi - *beta / 2.0), cplx{-1.0, 0.0},
                                     std::polar(1.0, pi + *beta / 2.0)};
            } else {
                face.kind = FaceKind::rhombus;
                face.vertices = {p1, p2, p3, p4};
                face.contributing = {0, 1, 2, 3};
                face.transversals = {d2, -d1, -d2, d1};
            }
            for (int j = 0; j < face.edge_count(); ++j)
                face.midedge_ids.push_back(midedge_id(face.midedge_position(j)));
            dom.faces.push_back(std::move(face));
        }

    dom.midedge_faces.assign(dom.midedges.size(), {});
    for (int fi = 0; fi < static_cast<int>(dom.faces.size()); ++fi)
        for (int mid : dom.faces[fi].midedge_ids) dom.midedge_faces[mid].push_back(fi);

    // Mark a on the upper-left edge of the top-left face.  Paths started
    // there point into the domain with no step parallel to the upward
    // vertical, so every initial turn measured from the downward reference
    // direction stays strictly inside the principal branch.
    dom.boundary_point_a = dom.faces[dom.faces.size() - cols].midedge_ids[3];
    return dom;
}

inline std::string domain_to_json(const RhombicDomain& dom) {
    nlohmann::json j;
    j["alpha"] = dom.alpha;
    if (dom.beta) j["beta"] = *dom.beta;
    j["faces"] = nlohmann::json::array();
    for (const Face& f : dom.faces) {
        nlohmann::json jf;
        jf["kind"] = to_string(f.kind);
        jf["vertices"] = nlohmann::json::array();
        for (const cplx& v : f.vertices) jf["vertices"].push_back({v.real(), v.imag()});
        jf["contributing"] = f.contributing;
        jf["midedges"] = f.midedge_ids;
        j["faces"].push_back(std::move(jf));
    }
    j["midedges"] = nlohmann::json::array();
    for (const cplx& m : dom.midedges) j["midedges"].push_back({m.real(), m.imag()});
    return j.dump(2);
}

}  // namespace lhk
