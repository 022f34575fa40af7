#include "gridweaver/flow.hpp"

#include <algorithm>
#include <deque>

namespace gw {

WorkGraph WorkGraph::induced(const LazyGraph& g, const std::set<Token>& vertices) {
    WorkGraph wg;
    for (const auto& v : vertices) {
        std::vector<Token> keep;
        for (const auto& n : g.neighbors(v))
            if (vertices.count(n)) keep.push_back(n);
        wg.adj[v] = std::move(keep);
    }
    return wg;
}

WorkGraph WorkGraph::from_subgraph(const std::set<Token>& vertices,
                                   const std::set<TokenPair>& edges) {
    WorkGraph wg;
    for (const auto& v : vertices) wg.adj[v];
    for (const auto& [a, b] : edges) {
        if (!vertices.count(a) || !vertices.count(b)) continue;
        wg.adj[a].push_back(b);
        wg.adj[b].push_back(a);
    }
    for (auto& [v, lst] : wg.adj) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
    return wg;
}

namespace {

// Vertex-split flow network over integer node ids.
// Node 2*i = v_in, 2*i + 1 = v_out; arcs carry unit capacity.
struct SplitNetwork {
    std::vector<Token> tokens;            // id -> token, sorted for determinism
    std::map<Token, int> id;
    int n = 0;
    int src = 0, dst = 0;                 // virtual terminal node ids
    // adjacency: node -> list of (to, arc index); arcs have capacity/flow
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<int> cap;

    int add_arc(int a, int b, int capacity = 1) {
        int idx = static_cast<int>(cap.size());
        cap.push_back(capacity);
        out[a].push_back({b, idx});
        cap.push_back(0);  // residual
        out[b].push_back({a, idx + 1});
        return idx;
    }
};

}  // namespace

DisjointPathsResult vertex_disjoint_paths(const WorkGraph& wg, const std::set<Token>& sources,
                                          const std::set<Token>& sinks, int want,
                                          const std::set<Token>& uncuttable) {
    SplitNetwork net;
    for (const auto& [v, _] : wg.adj) {
        net.id[v] = net.n;
        net.tokens.push_back(v);
        net.n += 1;
    }
    auto vin = [&](int i) { return 2 * i; };
    auto vout = [&](int i) { return 2 * i + 1; };
    net.src = 2 * net.n;
    net.dst = 2 * net.n + 1;
    net.out.assign(2 * net.n + 2, {});

    // With uncuttable vertices the goal is an interior vertex cut, so every
    // arc other than a cuttable vertex's internal arc gets capacity `want`;
    // otherwise the classic all-unit construction keeps paths disjoint.
    int wide = uncuttable.empty() ? 1 : want;
    for (int i = 0; i < net.n; ++i)
        net.add_arc(vin(i), vout(i), uncuttable.count(net.tokens[i]) ? want : 1);
    for (const auto& [v, lst] : wg.adj) {
        int a = net.id[v];
        for (const auto& w : lst) {
            auto it = net.id.find(w);
            if (it != net.id.end()) net.add_arc(vout(a), vin(it->second), wide);
        }
    }
    for (const auto& s : sources)
        if (net.id.count(s)) net.add_arc(net.src, vin(net.id[s]), wide);
    for (const auto& t : sinks)
        if (net.id.count(t)) net.add_arc(vout(net.id[t]), net.dst, wide);

    // BFS augmentation; neighbor lists were built in sorted token order, so
    // augmenting paths are reproducible.
    DisjointPathsResult res;
    std::vector<int> prev_node(net.out.size()), prev_arc(net.out.size());
    while (res.value < want) {
        std::fill(prev_node.begin(), prev_node.end(), -1);
        prev_node[net.src] = net.src;
        std::deque<int> q{net.src};
        bool reached = false;
        while (!q.empty() && !reached) {
            int a = q.front();
            q.pop_front();
            for (auto [b, arc] : net.out[a]) {
                if (net.cap[arc] <= 0 || prev_node[b] != -1) continue;
                prev_node[b] = a;
                prev_arc[b] = arc;
                if (b == net.dst) {
                    reached = true;
                    break;
                }
                q.push_back(b);
            }
        }
        if (!reached) break;
        for (int b = net.dst; b != net.src; b = prev_node[b]) {
            net.cap[prev_arc[b]] -= 1;
            net.cap[prev_arc[b] ^ 1] += 1;
        }
        res.value += 1;
    }

    // Extract paths by following saturated arcs from each used source.
    std::vector<bool> arc_used(net.cap.size() / 2, false);
    for (auto [b, arc] : net.out[net.src]) {
        if (arc % 2 != 0 || net.cap[arc] != 0) continue;  // unsaturated source arc
        std::vector<Token> path;
        int node = b;  // v_in of a source
        while (node != net.dst) {
            if (node % 2 == 0) path.push_back(net.tokens[node / 2]);
            int next = -1;
            for (auto [c, a2] : net.out[node]) {
                if (a2 % 2 != 0 || net.cap[a2] != 0 || arc_used[a2 / 2]) continue;
                arc_used[a2 / 2] = true;
                next = c;
                break;
            }
            if (next < 0) break;  // walked into a residual cycle remnant
            node = next;
        }
        if (!path.empty()) res.paths.push_back(std::move(path));
    }
    std::sort(res.paths.begin(), res.paths.end());

    if (res.value < want) {
        // Residual reachability from src; cut split-arcs give the separator.
        std::vector<bool> reach(net.out.size(), false);
        reach[net.src] = true;
        std::deque<int> q{net.src};
        while (!q.empty()) {
            int a = q.front();
            q.pop_front();
            for (auto [b, arc] : net.out[a])
                if (net.cap[arc] > 0 && !reach[b]) {
                    reach[b] = true;
                    q.push_back(b);
                }
        }
        for (int i = 0; i < net.n; ++i)
            if (reach[vin(i)] && !reach[vout(i)]) res.separator.push_back(net.tokens[i]);
    }
    return res;
}

std::vector<Token> shortest_path(const WorkGraph& wg, const Token& from, const Token& to,
                                 const std::set<Token>& forbidden) {
    if (!wg.contains(from) || !wg.contains(to)) return {};
    if (forbidden.count(from) || forbidden.count(to)) return {};
    if (from == to) return {from};
    std::map<Token, Token> prev{{from, from}};
    std::deque<Token> q{from};
    while (!q.empty()) {
        Token v = q.front();
        q.pop_front();
        for (const auto& n : wg.adj.at(v)) {
            if (prev.count(n) || forbidden.count(n)) continue;
            prev[n] = v;
            if (n == to) {
                std::vector<Token> path{n};
                for (Token c = v; ; c = prev[c]) {
                    path.push_back(c);
                    if (c == from) break;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push_back(n);
        }
    }
    return {};
}

}  // namespace gw
