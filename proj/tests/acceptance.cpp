// Acceptance gate: one pass/fail line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <variant>

#include "gridweaver/json_io.hpp"

using namespace gw;

namespace {

int failures = 0;

void criterion(int num, const std::string& label, const std::function<void()>& body) {
    try {
        body();
        std::cout << "criterion " << num << ": PASS  " << label << "\n";
    } catch (const std::exception& e) {
        ++failures;
        std::cout << "criterion " << num << ": FAIL  " << label << "  [" << e.what() << "]\n";
    }
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

// Host image of pattern row y, walked left to right along the row's edge paths.
std::vector<Token> row_image(const SubdivisionMap& m, int y) {
    std::vector<Token> out{m.branch.at(xy_token(0, y))};
    for (int x = 0; x + 1 <= 2 * m.fragment.cols; ++x) {
        TokenPair key = norm_edge(xy_token(x, y), xy_token(x + 1, y));
        std::vector<Token> p = m.edge_paths.at(key);
        if (key.first != xy_token(x, y)) std::reverse(p.begin(), p.end());
        out.insert(out.end(), p.begin() + 1, p.end());
    }
    return out;
}

SubdivisionMap timed_weave(const LazyGraph& g, int rows, int cols) {
    auto t0 = std::chrono::steady_clock::now();
    SubdivisionMap m = weave(g, rows, cols);
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 60.0, g.family + " weave took " + std::to_string(secs) + "s");
    return m;
}

CoarseEmbedding hex_in_square(int window) {
    return embedding_constants([](const Token& t) { return t; }, make_hex(), make_square(),
                               window);
}

}  // namespace

int main() {
    LazyGraph hex = make_hex();
    LazyGraph sq = make_square();
    LazyGraph tri = make_triangular();
    std::map<std::string, SubdivisionMap> weaves;

    criterion(1, "weave soundness on hex/square/triangular", [&] {
        weaves["hex"] = timed_weave(hex, 5, 5);
        weaves["square"] = timed_weave(sq, 7, 7);
        weaves["triangular"] = timed_weave(tri, 7, 7);
        require(verify_subdivision(hex, weaves["hex"]).ok(), "hex weave rejected");
        require(verify_subdivision(sq, weaves["square"]).ok(), "square weave rejected");
        require(verify_subdivision(tri, weaves["triangular"]).ok(), "triangular weave rejected");
        for (const auto& [e, p] : weaves["hex"].edge_paths)
            require(p.size() == 2, "hex weave is not the identity fragment");
    });

    criterion(2, "apex-hub counterexample: no certificate at scale 5", [&] {
        LazyGraph apex = make_apex_hub();
        try {
            diverging_pair(apex, 5, 10000);
            require(false, "diverging_pair unexpectedly succeeded");
        } catch (const NotFound&) {
        }
        // exhaustive oracle: every sphere-n pair sits within distance 2 of the hub
        for (int n = 1; n <= 20; ++n) {
            auto sphere = ball(hex, "0,0", n).frontier;
            Token hub = std::to_string(n);
            for (const auto& v : sphere)
                require(apex.adjacent(v, hub), "sphere vertex " + v + " misses hub " + hub);
        }
    });

    criterion(3, "square east/west divergence certificate to n = 24", [&] {
        DivergingPair dp = diverging_pair(sq, 24, 10000);
        require(!dp.cert.rows.empty() && dp.cert.rows.back().n == 24, "table stops early");
        int pn = 0, pi = -1, pj = -1;
        for (const auto& row : dp.cert.rows) {
            require(row.n > pn && row.i >= pi && row.j >= pj, "monotone nesting broken");
            pn = row.n;
            pi = row.i;
            pj = row.j;
        }
        require(verify_divergence_cert(sq, dp.r1, dp.r2, dp.cert).ok(),
                "recomputation rejected the certificate");
    });

    criterion(4, "coarse-embedding transfer end to end", [&] {
        CoarseEmbedding emb = hex_in_square(8);
        require(emb.L == 1, "L != 1");
        require(emb.K >= 1 && emb.K <= 8, "K not witnessed finite");
        int s = 2 * emb.K + 1;
        SubdivisionMap big = identity_subdivision(s * 3 + 1, s * 4);
        SubdivisionMap sparse = sparsify(hex, big, emb.K);
        require(sparse.fragment.rows == 4 && sparse.fragment.cols == 4,
                "sparsified fragment is not 4x4");
        MinorModel model = transfer_minor(emb, hex, sq, sparse);
        require(verify_minor(sq, model).ok(), "transferred minor rejected");
        SubdivisionMap sub = minor_to_subdivision(sq, model);
        require(verify_subdivision(sq, sub).ok(), "upgraded subdivision rejected");
        try {
            transfer_minor(emb, hex, sq, identity_subdivision(2, 2));
            require(false, "unsparsified transfer did not clash");
        } catch (const DisjointnessViolation&) {
        }
    });

    criterion(5, "two-storey subdivision exists but is not diverging", [&] {
        LazyGraph ts = make_two_storey();
        SubdivisionMap m = weave_two_storey(6, 6);
        require(verify_subdivision(ts, m).ok(), "two-storey subdivision rejected");
        int f = 3;
        std::vector<Token> a = row_image(m, f), b = row_image(m, f - 1);  // the storey-0 rows
        auto outcome = check_divergence(ts, Ray::explicit_ray(a), Ray::explicit_ray(b), 3);
        require(std::holds_alternative<FailureWitness>(outcome), "rows unexpectedly diverge");
    });

    criterion(6, "pattern rows two apart diverge at scale 8", [&] {
        for (const auto& [name, m] : weaves) {
            LazyGraph g = make_graph(name);
            for (int i = 0; i < m.fragment.rows; ++i)
                for (int j = i + 2; j < m.fragment.rows; ++j) {
                    std::vector<Token> a = row_image(m, i), b = row_image(m, j);
                    std::reverse(b.begin(), b.end());  // opposite tails
                    auto outcome =
                        check_divergence(g, Ray::explicit_ray(a), Ray::explicit_ray(b), 8);
                    require(std::holds_alternative<DivergenceCertificate>(outcome),
                            name + " rows " + std::to_string(i) + "/" + std::to_string(j));
                }
        }
    });

    criterion(7, "half-grid refutation on cylinder(4) and the 3-regular tree", [&] {
        LazyGraph cyl = make_cylinder(4);
        RefutationWitness w = refute_half_grid(cyl, natural_cylinder_qi(), 5, 30);
        require(w.refuted && w.mode == "capacity", "no capacity refutation");
        require(w.capacity == 4, "capacity is " + std::to_string(w.capacity));
        require(!w.tree_vertex.empty(), "no tree vertex reported");

        LazyGraph tree = make_regular_tree(3);
        Ray r1{{"1"}, Extender{"tree_deepen", {{"letter", "1"}}}};
        Ray r2{{"2"}, Extender{"tree_deepen", {{"letter", "1"}}}};
        auto eq = equivalent(tree, r1, r2, 2, 10);
        require(!eq.found, "tree rays claimed equivalent");
        require(eq.separator == std::vector<Token>{"e"}, "separator is not the root");
    });

    criterion(8, "tree capacity b(0)=1, b(1)=4 and exact ball sizes", [&] {
        LazyGraph tree = make_regular_tree(3);
        QIToTree qi{tree, 1.0, 0.0, [](const Token& t) { return t; }};
        require(qi_tree_capacity(tree, qi, 0, 6) == 1, "b(0) != 1");
        require(qi_tree_capacity(tree, qi, 1, 6) == 4, "b(1) != 4");
        for (int r = 1; r <= 10; ++r) {
            std::size_t want = 3 * (std::size_t(1) << r) - 2;
            require(ball(tree, "e", r).vertices.size() == want,
                    "ball size off at r=" + std::to_string(r));
        }
    });

    criterion(9, "chain and clique demonstration minors", [&] {
        require(verify_minor(make_cylinder(9), chain_minor(6, 9, 10)).ok(), "chain 6-in-9");
        require(verify_minor(make_cubic(), clique_minor_cubic(6)).ok(), "clique K6");
        MinorModel ident = chain_minor(5, 5, 6);
        require(verify_minor(make_cylinder(5), ident).ok(), "chain 5-in-5");
        for (const auto& [pv, set] : ident.branch_sets)
            require(set.size() == 1 && *set.begin() == pv, "identity model is not singleton");
    });

    criterion(10, "single-token mutations flip every verifier", [&] {
        // subdivision golden
        SubdivisionMap sub = weaves.count("hex") ? weaves["hex"] : weave(hex, 3, 3);
        {
            auto bad = sub;
            bad.branch[xy_token(0, 0)] = bad.branch.at(xy_token(2, 0));
            require(!verify_subdivision(hex, bad).ok(), "branch clash accepted");
        }
        {
            auto bad = sub;
            bad.edge_paths.begin()->second.front() = "99,99";
            require(!verify_subdivision(hex, bad).ok(), "broken endpoint accepted");
        }
        {
            auto bad = sub;
            bad.edge_paths.erase(bad.edge_paths.begin());
            require(!verify_subdivision(hex, bad).ok(), "missing path accepted");
        }
        // minor golden
        MinorModel minor = chain_minor(6, 9, 4);
        LazyGraph cyl9 = make_cylinder(9);
        {
            auto bad = minor;
            bad.branch_sets["0,0"].insert(*bad.branch_sets.at("1,0").begin());
            require(!verify_minor(cyl9, bad).ok(), "overlap accepted");
        }
        {
            auto bad = minor;
            bad.edge_witness.begin()->second.first = "4,3";
            require(!verify_minor(cyl9, bad).ok(), "foreign witness accepted");
        }
        {
            auto bad = minor;
            bad.branch_sets["0,0"] = {"0,0", "0,2"};
            require(!verify_minor(cyl9, bad).ok(), "disconnected set accepted");
        }
        // divergence golden
        DivergingPair dp = diverging_pair(sq, 8, 10000);
        {
            auto bad = dp.cert;
            bad.rows.back().n = 500;
            require(!verify_divergence_cert(sq, dp.r1, dp.r2, bad).ok(),
                    "inflated bound accepted");
        }
        {
            auto bad = dp.cert;
            require(bad.rows.size() >= 2, "certificate too short to mutate");
            std::swap(bad.rows.front(), bad.rows.back());
            require(!verify_divergence_cert(sq, dp.r1, dp.r2, bad).ok(),
                    "non-monotone table accepted");
        }
    });

    criterion(11, "byte-identical artifacts across repeated runs", [&] {
        auto dump_twice = [&](const std::function<nlohmann::json()>& make) {
            std::string a = make().dump(2), b = make().dump(2);
            require(a == b, "reruns differ");
        };
        dump_twice([&] { return to_json(weave(hex, 3, 3)); });
        dump_twice([&] {
            DivergingPair dp = diverging_pair(sq, 8, 10000);
            return nlohmann::json{{"r1", to_json(dp.r1)}, {"r2", to_json(dp.r2)},
                                  {"cert", to_json(dp.cert)}};
        });
        dump_twice([&] { return to_json(chain_minor(6, 9, 4)); });
        dump_twice([&] { return to_json(clique_minor_cubic(4)); });
        dump_twice([&] { return to_json(weave_two_storey(4, 4)); });
        dump_twice([&] {
            return to_json(refute_half_grid(make_cylinder(4), natural_cylinder_qi(), 5, 20));
        });
        dump_twice([&] {
            CoarseEmbedding emb = hex_in_square(6);
            SubdivisionMap sparse =
                sparsify(hex, identity_subdivision(2 * (2 * emb.K + 1) + 1, 2 * emb.K + 1),
                         emb.K);
            return to_json(transfer_minor(emb, hex, sq, sparse));
        });
    });

    if (failures > 0) std::cout << failures << " criteria failed\n";
    return failures == 0 ? 0 : 1;
}
