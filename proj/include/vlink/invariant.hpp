#ifndef VLINK_INVARIANT_HPP
#define VLINK_INVARIANT_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlink/diagram.hpp"
#include "vlink/numbering.hpp"
#include "vlink/poly.hpp"

namespace vlink {

/// Thrown when a diagram has more classical crossings than the configured
/// state-sum cap (2^m states).
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(int crossings, int cap);
    int crossings = 0;
    int cap = 0;
};

struct BracketOptions {
    int max_crossings = 26;
    int threads = 0;  // 0 = pick automatically
    /// Reject invalid cut systems up front. Disabled only by tests probing
    /// the odd-cut-sum hard failure.
    bool validate_cuts = true;
};

/// One loop of a spliced state.
struct LoopReport {
    std::vector<int> edges;  // edge ids in traversal order
    int cut_sum = 0;         // cut signs, flipped on backward traversal
    int iota = 0;            // |cut_sum| / 2
    int mark_sum = 0;        // disoriented-corner marks (cut-free route)
    int iota_mark = 0;       // |mark_sum| / 2
};

struct StateReport {
    std::uint64_t index = 0;
    std::string splices;  // 'A'/'B' per classical crossing in id order
    int a_minus_b = 0;
    int loop_count = 0;
    std::vector<LoopReport> loops;
    MultiPoly monomial;  // cut-point-state contribution to the double bracket
};

/// Visit all 2^m cut point states in index order. Splice choices are the
/// bits of the state index over crossings sorted by id (0 = A, 1 = B).
void enumerate_states(const Diagram& d, const CutSystem& cuts,
                      const std::function<void(const StateReport&)>& fn,
                      const BracketOptions& opts = {});

/// Sum of A^natural * (-A^2-A^{-2})^(loops-1) * d_1^tau_1 * d_2^tau_2 * ...
/// over all states, where tau_i counts loops of index i.
MultiPoly double_bracket(const Diagram& d, const CutSystem& cuts,
                         const BracketOptions& opts = {});

/// (-A^3)^{-writhe} * double bracket over the canonical cut system.
MultiPoly x_polynomial(const Diagram& d, const BracketOptions& opts = {});

/// x_polynomial with every d_i set to 1.
MultiPoly f_polynomial(const Diagram& d, const BracketOptions& opts = {});

/// Independent route to the same invariant: no cut system; each disoriented
/// splice contributes passage-signed marks on its two corners and the loop
/// index is half the absolute mark sum.
MultiPoly arrow_oracle(const Diagram& d, const BracketOptions& opts = {});

/// Outcome of one skein-relation check.
struct SkeinCheck {
    std::string identity;
    bool applicable = false;
    std::string gate_reason;  // why the check was not computed
    MultiPoly lhs, rhs, residual;

    bool holds() const { return applicable && residual.is_zero(); }
};

/// A^4 f(D+) - A^{-4} f(D-) + (A^2 - A^{-2}) f(D0) = 0; no precondition.
SkeinCheck verify_skein_classical(const Diagram& d, int crossing,
                                  const BracketOptions& opts = {});

/// A^3 f(D+) + A^{-3} f(D-) = (A^3 + A^{-3}) f(Dv); requires D+ (equivalently
/// the input) to be checkerboard colorable.
SkeinCheck verify_skein_virtual_cc(const Diagram& d, int crossing,
                                   const BracketOptions& opts = {});

/// (A^6 - d1) X(D+) + (-A^{-6} + d1) X(D-) = (A^6 - A^{-6}) X(Dv); requires
/// D+ and D- to be almost classical.
SkeinCheck verify_skein_main(const Diagram& d, int crossing,
                             const BracketOptions& opts = {});

struct DiagramSummary {
    std::string name;
    int writhe = 0;
    int components = 0;
    bool almost_classical = false;
    bool checkerboard = false;
    MultiPoly x, f;
};

struct SkeinReport {
    int crossing = -1;
    bool relabeled = false;
    std::vector<DiagramSummary> diagrams;  // D+, D-, D0, Dv
    std::vector<SkeinCheck> checks;

    bool all_hold() const;
};

/// Full triple report: invariants of all four diagrams plus the three
/// identity checks with gating diagnostics.
SkeinReport skein_report(const Diagram& d, int crossing, const BracketOptions& opts = {});

struct CongruenceReport {
    int component_count = 0;
    std::set<int> exp_plain;  // Exp(X)
    std::set<int> exp_d1;     // Exp(X | d1)
    bool plain_congruent = false;
    bool d1_congruent = false;
    bool only_d1 = false;
    std::vector<std::string> violations;

    bool ok() const { return plain_congruent && d1_congruent && only_d1; }
};

/// Check the exponent congruences for a diagram obtained from an almost
/// classical diagram by one virtualization (caller-asserted): Exp(X) lies in
/// 4Z (odd component count) or 4Z+2 (even), Exp(X|d1) in the other class,
/// and no d-variable beyond d1 appears.
CongruenceReport check_exponent_congruence(const Diagram& d, const BracketOptions& opts = {});

}  // namespace vlink

#endif
