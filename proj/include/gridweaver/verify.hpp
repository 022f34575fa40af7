#pragma once

#include "gridweaver/transfer_types.hpp"
#include "gridweaver/weaver.hpp"

namespace gw {

struct Violation {
    std::string rule;     // stable rule id, e.g. "internal-disjointness"
    std::string witness;  // offending token / index, re-checkable by hand
    std::string message;
};

struct CheckReport {
    std::vector<Violation> violations;
    std::map<std::string, int> stats;  // counts of checked items

    bool ok() const { return violations.empty(); }
    void add(const std::string& rule, const std::string& witness, const std::string& message) {
        violations.push_back({rule, witness, message});
    }
    void sort_violations();
};

struct Separation {
    std::set<Token> a, b;

    int order() const;
};

CheckReport verify_subdivision(const LazyGraph& g, const SubdivisionMap& m);
CheckReport verify_minor(const LazyGraph& g, const MinorModel& model);
CheckReport verify_comb(const LazyGraph& g, const Comb& comb, const Ray& target);
CheckReport verify_divergence_cert(const LazyGraph& g, const Ray& r1, const Ray& r2,
                                   const DivergenceCertificate& cert);
/// Window-scoped: tightness components are searched inside the given window.
CheckReport verify_separation_tight(const LazyGraph& g, const Separation& sep,
                                    const FiniteWindow& window);

}  // namespace gw
