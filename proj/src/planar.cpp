#include "gridweaver/planar.hpp"

#include <algorithm>
#include <deque>

namespace gw {

namespace {

// Lexicographically least rotation of the closed walk, both directions.
std::vector<Token> canonical_cycle(const std::vector<Token>& walk) {
    std::vector<Token> best;
    auto consider = [&](const std::vector<Token>& w) {
        std::size_t n = w.size();
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<Token> rot;
            rot.reserve(n);
            for (std::size_t i = 0; i < n; ++i) rot.push_back(w[(s + i) % n]);
            if (best.empty() || rot < best) best = std::move(rot);
        }
    };
    consider(walk);
    std::vector<Token> rev(walk.rbegin(), walk.rend());
    consider(rev);
    return best;
}

// Trace the face containing the directed edge (u, v): at each step move to
// the clockwise predecessor of the arrival edge in the rotation at v.
std::vector<Token> trace_face(const LazyGraph& g, const Token& u0, const Token& v0, int cap) {
    std::vector<Token> walk;
    Token u = u0, v = v0;
    while (true) {
        walk.push_back(u);
        if (static_cast<int>(walk.size()) > cap)
            throw UnboundedFace("face trace through " + u0 + "-" + v0 + " exceeds cap");
        auto rot = g.rotation(v);
        auto it = std::find(rot.begin(), rot.end(), u);
        if (it == rot.end()) throw Degenerate("rotation at " + v + " missing neighbor " + u);
        std::size_t idx = static_cast<std::size_t>(it - rot.begin());
        Token w = rot[(idx + rot.size() - 1) % rot.size()];
        u = v;
        v = w;
        if (u == u0 && v == v0) break;
    }
    return walk;
}

}  // namespace

std::vector<FaceWalk> face_walks_at(const LazyGraph& g, const Token& v, int codegree_cap) {
    if (!g.has_rotation()) throw NoRotation(g.family);
    std::set<std::vector<Token>> seen;
    std::vector<FaceWalk> out;
    for (const auto& w : g.rotation(v)) {
        for (auto [a, b] : {TokenPair{v, w}, TokenPair{w, v}}) {
            auto walk = trace_face(g, a, b, codegree_cap);
            auto canon = canonical_cycle(walk);
            if (seen.insert(canon).second) out.push_back(FaceWalk{canon});
        }
    }
    return out;
}

SideMap::SideMap(const LazyGraph& g, std::vector<Token> oriented_double_ray, int window_radius)
    : g_(&g), seq_(std::move(oriented_double_ray)), window_radius_(window_radius) {
    for (std::size_t i = 0; i < seq_.size(); ++i) index_[seq_[i]] = i;
    if (index_.size() != seq_.size()) throw Degenerate("double ray repeats a vertex");
}

Side SideMap::label_of_contact(const Token& contact, std::size_t i) const {
    // Interior ray vertex seq_[i]: neighbors strictly between the successor
    // and the predecessor in counterclockwise order lie on the left (side A).
    const Token& succ = seq_[i + 1];
    const Token& pred = seq_[i - 1];
    auto rot = g_->rotation(seq_[i]);
    auto pos = std::find(rot.begin(), rot.end(), succ);
    if (pos == rot.end()) throw Degenerate("rotation missing ray successor at " + seq_[i]);
    std::size_t k = static_cast<std::size_t>(pos - rot.begin());
    for (std::size_t step = 1; step < rot.size(); ++step) {
        const Token& cand = rot[(k + step) % rot.size()];
        if (cand == pred) return Side::B;  // reached predecessor first: contact is right of travel
        if (cand == contact) return Side::A;
    }
    throw Degenerate("contact vertex not adjacent to ray vertex " + seq_[i]);
}

Side SideMap::side_of(const Token& v) const {
    if (index_.count(v)) return Side::On;
    auto hit = cache_.find(v);
    if (hit != cache_.end()) return hit->second;

    // Flood fill from v avoiding the ray; stop at the first ray contact whose
    // ray index is interior (so orientation is defined there).
    std::map<Token, int> depth{{v, 0}};
    std::deque<Token> q{v};
    while (!q.empty()) {
        Token w = q.front();
        q.pop_front();
        int d = depth[w];
        if (d >= window_radius_) continue;
        for (const auto& n : g_->neighbors(w)) {
            auto it = index_.find(n);
            if (it != index_.end()) {
                std::size_t i = it->second;
                if (i == 0 || i + 1 == seq_.size()) continue;  // endpoint: undecidable here
                Side s = label_of_contact(w, i);
                cache_[v] = s;
                return s;
            }
            if (!depth.count(n)) {
                depth[n] = d + 1;
                q.push_back(n);
            }
        }
    }
    throw WindowExhausted("side of " + v + " undecided at radius " +
                          std::to_string(window_radius_));
}

Subgraph incident_face_subgraph(const LazyGraph& g, const SideMap& sm,
                                const std::vector<Token>& ray_segment, Side side,
                                int codegree_cap) {
    Subgraph out;
    std::set<std::vector<Token>> taken;
    for (const auto& v : ray_segment) {
        for (const auto& f : face_walks_at(g, v, codegree_cap)) {
            if (taken.count(f.vertices)) continue;
            bool has_side = false, has_other = false;
            for (const auto& w : f.vertices) {
                Side s = sm.side_of(w);
                if (s == side) has_side = true;
                else if (s != Side::On) has_other = true;
            }
            if (!has_side || has_other) continue;
            taken.insert(f.vertices);
            out.vertices.insert(f.vertices.begin(), f.vertices.end());
            for (std::size_t i = 0; i < f.vertices.size(); ++i)
                out.edges.insert(
                    norm_edge(f.vertices[i], f.vertices[(i + 1) % f.vertices.size()]));
        }
    }
    return out;
}

}  // namespace gw
