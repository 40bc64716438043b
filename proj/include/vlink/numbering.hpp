#ifndef VLINK_NUMBERING_HPP
#define VLINK_NUMBERING_HPP

#include <optional>
#include <vector>

#include "vlink/diagram.hpp"

namespace vlink {

/// Oriented cut point on a semi-arc. Traversing the arc forward through a
/// +1 cut point raises the Alexander number by 1; a -1 lowers it. Cut points
/// on one arc are ordered by (position of `edge` within the arc, rank).
struct CutPoint {
    int arc = -1;   // semi-arc id relative to semi_arcs(d)
    int edge = -1;  // edge the point sits on (must belong to the arc)
    int rank = 0;   // order among cut points on the same edge
    int sign = +1;  // +1 or -1
};

struct CutSystem {
    std::vector<CutPoint> cuts;

    bool empty() const { return cuts.empty(); }
};

/// Cut points of one arc in traversal order.
std::vector<CutPoint> cuts_on_arc(const CutSystem& c, const SemiArc& arc);

struct SegmentRef {
    int arc = -1;
    int seg = -1;  // 0-based index among the arc's segments
    friend bool operator==(const SegmentRef&, const SegmentRef&) = default;
};

/// Alexander numbering: one value per arc segment (segments are the pieces
/// of a semi-arc between consecutive cut points). modulus 0 means integers.
struct Numbering {
    int modulus = 0;
    std::vector<std::vector<int>> values;  // indexed [arc][segment]
};

/// Inconsistent cycle returned when no numbering exists: following the
/// segments in order accumulates `offset` != 0 (mod m).
struct NumberingWitness {
    long long offset = 0;
    std::vector<SegmentRef> cycle;
};

struct NumberingResult {
    std::optional<Numbering> numbering;
    std::optional<NumberingWitness> witness;

    bool solvable() const { return numbering.has_value(); }
};

/// Propagate the crossing/cut-point difference constraints over the segment
/// graph. Solvable iff every cycle's accumulated offset vanishes (mod m).
/// Base value 0 is assigned per constraint-graph component.
NumberingResult solve_numbering(const Diagram& d, const CutSystem& c, int modulus);

bool is_almost_classical_diagram(const Diagram& d);
bool is_checkerboard_colorable(const Diagram& d);
bool is_valid_cut_system(const Diagram& d, const CutSystem& c);

/// Deterministic cut system: solve the relaxed system where each semi-arc
/// carries an unknown jump (crossing constraints only), spanning-tree jumps
/// pinned to 0, and realize each leftover jump j as |j| cut points of sign
/// sgn(j) on the arc's last edge. Empty iff the diagram is almost classical.
CutSystem canonical_cut_system(const Diagram& d);

/// Two cut points adjacent after the given virtual crossing, one on each of
/// its pass-through arcs, with opposite signs. Placement used when a single
/// classical crossing of an almost classical diagram has been virtualized.
/// Tries (-1 on pass A, +1 on pass B) then the negated pair; throws if
/// neither yields a valid cut system.
CutSystem around_virtual_cut_system(const Diagram& d, int virtual_id);

/// Append a (+1, -1) pair at the end of the given arc. Validity-preserving.
CutSystem insert_canceling_pair(const Diagram& d, const CutSystem& c, int arc);

/// Move the terminal cut points of the two arcs entering a classical
/// crossing onto the two outgoing arcs (as initial cut points, same sign).
/// Requires both incoming arcs to end with cut points of equal sign.
CutSystem push_through_crossing(const Diagram& d, const CutSystem& c, int crossing);

}  // namespace vlink

#endif
