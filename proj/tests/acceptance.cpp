// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// throughout, wall-clock budgets enforced where stated.

#include <chrono>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "vlink/codec.hpp"
#include "vlink/diagram.hpp"
#include "vlink/invariant.hpp"
#include "vlink/numbering.hpp"
#include "vlink/poly.hpp"
#include "vlink/random_gen.hpp"

using namespace vlink;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << "\n";
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

MultiPoly ap(std::initializer_list<std::pair<int, std::int64_t>> terms) {
    MultiPoly p;
    for (auto [k, c] : terms) p += MultiPoly::a_power(k, c);
    return p;
}

const MultiPoly kX_plus = ap({{8, 1}, {4, -1}, {0, 1}, {-4, -1}, {-8, 1}});
const MultiPoly kX_minus = MultiPoly::one();
const MultiPoly kX_virt =
    ap({{8, 1}, {4, -1}, {0, 1}}) + MultiPoly::mono(2, {{1, 1}}, -1) + MultiPoly::mono(-2, {{1, 1}}, 1);

void criterion1_published_triple() {
    auto t0 = Clock::now();
    int found = -1;
    bool mirrored = false;
    for (int mir = 0; mir < 2 && found < 0; ++mir) {
        Diagram base = mir ? mirror(catalog("figure8")) : catalog("figure8");
        for (const auto& c : base.classical()) {
            SkeinTriple t = skein_triples(base, c.id);
            if (t.relabeled) continue;
            if (x_polynomial(t.plus) == kX_plus && x_polynomial(t.minus) == kX_minus &&
                x_polynomial(t.virt) == kX_virt) {
                found = c.id;
                mirrored = mir;
                break;
            }
        }
    }
    double dt = seconds_since(t0);
    bool pinned_matches =
        found == figure8_triple_crossing() && !mirrored &&
        x_polynomial(catalog("paper_triple_plus")) == kX_plus &&
        x_polynomial(catalog("paper_triple_minus")) == kX_minus &&
        x_polynomial(catalog("paper_triple_virtual")) == kX_virt;
    report(1, found >= 0 && pinned_matches && dt < 1.0,
           "figure-eight triple reproduces the published X values exactly (crossing " +
               std::to_string(found) + ", " + std::to_string(dt) + "s)");
}

void criterion2_main_skein() {
    auto t0 = Clock::now();
    bool ok = true;
    auto f8 = verify_skein_main(catalog("figure8"), figure8_triple_crossing());
    ok &= f8.applicable && f8.residual.is_zero();
    auto insts = random_instances(1001, 100, {});
    for (const auto& in : insts) {
        auto chk = verify_skein_main(in.diagram, in.crossing);
        ok &= chk.applicable && chk.residual.is_zero();
    }
    double dt = seconds_since(t0);
    report(2, ok && dt < 60.0,
           "main skein residual zero on figure-eight and 100 random classical closures (" +
               std::to_string(dt) + "s)");
}

// Virtualize at the highest classical id that is not the instance's chosen
// crossing, so the chosen crossing stays available for the verifier.
Diagram virtualized_variant(const RandomInstance& in) {
    int pick = -1;
    for (const auto& c : in.diagram.classical())
        if (c.id != in.crossing) pick = std::max(pick, c.id);
    return virtualize(in.diagram, pick);
}

void criterion3_classical_skein() {
    auto t0 = Clock::now();
    bool ok = true;
    auto insts = random_instances(1001, 100, {});
    for (const auto& in : insts)
        ok &= verify_skein_classical(in.diagram, in.crossing).residual.is_zero();
    for (int i = 0; i < 50; ++i)
        ok &= verify_skein_classical(virtualized_variant(insts[i]), insts[i].crossing)
                  .residual.is_zero();
    double dt = seconds_since(t0);
    report(3, ok && dt < 60.0,
           "classical skein residual zero on 100 classical instances + 50 virtualized variants (" +
               std::to_string(dt) + "s)");
}

void criterion4_checkerboard_skein() {
    bool ok = true;
    int computed = 0, gated = 0;
    auto run = [&](const Diagram& d, int crossing) {
        auto chk = verify_skein_virtual_cc(d, crossing);
        bool colorable = is_checkerboard_colorable(skein_triples(d, crossing).plus);
        if (colorable) {
            ok &= chk.applicable && chk.residual.is_zero();
            ++computed;
        } else {
            ok &= !chk.applicable && chk.residual.is_zero();
            ++gated;
        }
    };
    auto insts = random_instances(1001, 100, {});
    for (const auto& in : insts) run(in.diagram, in.crossing);
    for (int i = 0; i < 50; ++i) run(virtualized_variant(insts[i]), insts[i].crossing);
    auto vt = verify_skein_virtual_cc(catalog("vtrefoil"), 0);
    ok &= !vt.applicable;
    report(4, ok && computed > 0 && gated > 0,
           "checkerboard skein residual zero on " + std::to_string(computed) +
               " colorable instances; " + std::to_string(gated) + " gated, none computed");
}

void criterion5_cut_independence() {
    bool ok = true;
    for (const auto& name : catalog_names()) {
        Diagram d = catalog(name);
        CutSystem canon = canonical_cut_system(d);
        MultiPoly base = double_bracket(d, canon);
        auto arcs = semi_arcs(d);

        CutSystem p1 = insert_canceling_pair(d, canon, 0);
        ok &= double_bracket(d, p1) == base;

        CutSystem p2 = canon;
        for (const auto& a : arcs) p2 = insert_canceling_pair(d, p2, a.id);
        ok &= double_bracket(d, p2) == base;

        // a push-based perturbation when the diagram has a classical crossing
        if (!d.classical().empty()) {
            int cid = d.classical().front().id;
            auto tab = semi_arcs(d);
            int over_arc = -1, under_arc = -1;
            for (const auto& a : tab) {
                if (a.closed) continue;
                if (a.end.node == cid && a.end.role == PortRole::OverIn) over_arc = a.id;
                if (a.end.node == cid && a.end.role == PortRole::UnderIn) under_arc = a.id;
            }
            CutSystem p3 = insert_canceling_pair(d, canon, over_arc);
            p3 = insert_canceling_pair(d, p3, under_arc);
            p3 = push_through_crossing(d, p3, cid);
            ok &= is_valid_cut_system(d, p3);
            ok &= double_bracket(d, p3) == base;
        } else {
            CutSystem p3 = insert_canceling_pair(d, insert_canceling_pair(d, canon, 0), 0);
            ok &= double_bracket(d, p3) == base;
        }
    }
    report(5, ok, "double bracket agrees exactly across canonical and 3 perturbed cut systems");
}

void criterion6_oracle_equivalence() {
    auto t0 = Clock::now();
    bool ok = true;
    for (const auto& name : catalog_names()) {
        Diagram d = catalog(name);
        ok &= x_polynomial(d) == arrow_oracle(d);
    }
    for (const auto& in : random_instances(606, 100, {.allow_virtual_tokens = true}))
        ok &= x_polynomial(in.diagram) == arrow_oracle(in.diagram);
    double dt = seconds_since(t0);
    report(6, ok && dt < 120.0,
           "cut-system route equals the cut-free oracle on fixtures + 100 mixed instances (" +
               std::to_string(dt) + "s)");
}

void criterion7_d_freeness() {
    bool ok = true;
    for (const auto& in : random_instances(707, 50, {})) {
        if (!is_almost_classical_diagram(in.diagram)) {
            ok = false;
            continue;
        }
        MultiPoly x = x_polynomial(in.diagram);
        for (const auto& [m, c] : x.terms()) ok &= m.d_part.empty();
    }
    int congruent = 0;
    for (const auto& in : random_instances(709, 50, {.virtualize_one = true})) {
        auto rep = check_exponent_congruence(in.diagram);
        ok &= rep.ok();
        if (rep.ok()) ++congruent;
    }
    report(7, ok,
           "almost classical instances are d-free; " + std::to_string(congruent) +
               "/50 one-virtualization instances satisfy the d1 and exponent congruences");
}

void criterion8_solver_ground_truth() {
    bool ok = true;
    ok &= solve_numbering(catalog("trefoil"), {}, 0).solvable();
    ok &= !solve_numbering(catalog("vtrefoil"), {}, 0).solvable();
    ok &= solve_numbering(catalog("vtrefoil"), canonical_cut_system(catalog("vtrefoil")), 0)
              .solvable();
    SkeinTriple t = skein_triples(catalog("figure8"), figure8_triple_crossing());
    CutSystem av = around_virtual_cut_system(t.virt, figure8_triple_crossing());
    ok &= av.cuts.size() == 2 && is_valid_cut_system(t.virt, av);
    report(8, ok,
           "trefoil numberable, virtual trefoil not, canonical cuts fix it, two-cut placement "
           "validates on the virtualized figure-eight");
}

void criterion9_desk_scale() {
    // The identities are exact algebra; show they persist beyond the random
    // suite sizes and that the cap is a refusal threshold, not a tolerance.
    bool ok = true;
    Diagram big = parse_braid("s=4: s1 S2 s3 s1 S2 s3 s1 s2 S3 s1 s2 s1 S2 s3");
    ok &= static_cast<int>(big.classical().size()) == 14;
    BracketOptions opts;
    auto chk = verify_skein_main(big, 0, opts);
    ok &= chk.applicable && chk.residual.is_zero();
    ok &= x_polynomial(big, opts) == arrow_oracle(big, opts);

    BracketOptions tight;
    tight.max_crossings = 10;
    bool capped = false;
    try {
        x_polynomial(big, tight);
    } catch (const CapExceeded&) {
        capped = true;
    }
    ok &= capped;
    report(9, ok,
           "exact identities reproduced on a 14-crossing instance; crossing cap refuses, "
           "never approximates");
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    criterion1_published_triple();
    criterion2_main_skein();
    criterion3_classical_skein();
    criterion4_checkerboard_skein();
    criterion5_cut_independence();
    criterion6_oracle_equivalence();
    criterion7_d_freeness();
    criterion8_solver_ground_truth();
    criterion9_desk_scale();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << " (" << seconds_since(t0) << "s total)\n";
    return failures == 0 ? 0 : 1;
}
