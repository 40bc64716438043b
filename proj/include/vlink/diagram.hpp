#ifndef VLINK_DIAGRAM_HPP
#define VLINK_DIAGRAM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace vlink {

/// Port roles at a crossing. Classical crossings carry the over strand
/// through OverIn -> OverOut and the under strand through UnderIn -> UnderOut.
/// Virtual crossings carry two transverse strands PassAIn -> PassAOut and
/// PassBIn -> PassBOut; they never gain over/under data.
enum class PortRole : std::uint8_t {
    OverIn,
    OverOut,
    UnderIn,
    UnderOut,
    PassAIn,
    PassAOut,
    PassBIn,
    PassBOut,
};

bool role_is_in(PortRole r);
bool role_is_classical(PortRole r);
/// The out-role a strand continues through when it enters at `in`.
PortRole strand_out_role(PortRole in);
const char* role_name(PortRole r);

struct Port {
    int node = -1;
    PortRole role = PortRole::OverIn;

    bool is_null() const { return node < 0; }
    friend bool operator==(const Port&, const Port&) = default;
};

/// Directed edge from the tail out-port to the head in-port. An edge with
/// both ports null is a crossingless free loop (a whole component).
struct Edge {
    int id = -1;
    Port tail;
    Port head;

    bool is_free_loop() const { return tail.is_null() && head.is_null(); }
};

struct ClassicalCrossing {
    int id = -1;
    int sign = +1;  // +1 or -1
};

struct VirtualCrossing {
    int id = -1;
};

/// Maximal directed run of edges through virtual crossings. Open arcs start
/// and end at classical-crossing ports; closed arcs are loops that meet no
/// classical crossing (including crossingless free loops).
struct SemiArc {
    int id = -1;
    std::vector<int> edges;  // edge ids in traversal order
    bool closed = false;
    Port start;  // tail port of the first edge (null for closed arcs)
    Port end;    // head port of the last edge (null for closed arcs)
};

/// Oriented virtual link diagram as an abstract 4-valent graph. No planar
/// embedding is stored; virtual crossings are explicit pass-through vertices.
/// All mutating surgery lives in free functions that return fresh diagrams.
class Diagram {
public:
    int add_classical(int sign);
    int add_virtual();
    int add_edge(Port tail, Port head);
    int add_free_loop();

    const std::vector<ClassicalCrossing>& classical() const { return classical_; }
    const std::vector<VirtualCrossing>& virtual_crossings() const { return virtual_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const ClassicalCrossing* find_classical(int id) const;
    const VirtualCrossing* find_virtual(int id) const;
    const Edge* find_edge(int id) const;

    bool empty() const { return edges_.empty(); }

    // Mutators used by the surgery functions below.
    ClassicalCrossing* find_classical(int id);
    Edge* find_edge(int id);
    void remove_classical(int id);
    void remove_edge(int id);
    /// Replace a classical crossing by a virtual one with the same id.
    /// Incident edge ports must be retagged by the caller.
    void reclassify_as_virtual(int id);

private:
    std::vector<ClassicalCrossing> classical_;
    std::vector<VirtualCrossing> virtual_;
    std::vector<Edge> edges_;
    int next_node_id_ = 0;
    int next_edge_id_ = 0;
};

/// Port-to-edge lookup built once per operation.
class DiagramIndex {
public:
    explicit DiagramIndex(const Diagram& d);

    /// Edge whose head is this port; null port or missing -> nullptr.
    const Edge* edge_into(Port p) const;
    /// Edge whose tail is this port.
    const Edge* edge_out_of(Port p) const;
    bool is_classical_node(int node) const;
    int classical_sign(int node) const;

    const Diagram& diagram() const { return d_; }

private:
    const Diagram& d_;
    std::unordered_map<std::uint64_t, int> by_head_;
    std::unordered_map<std::uint64_t, int> by_tail_;
    std::unordered_map<int, int> sign_;  // classical node -> sign
};

/// All invariant violations (empty means the diagram is well-formed).
std::vector<std::string> validate_diagram(const Diagram& d);

/// Number of link components (strands traverse straight through both
/// crossing kinds).
int components(const Diagram& d);

/// Sum of classical crossing signs.
int writhe(const Diagram& d);

/// Deterministic semi-arc decomposition; every edge lands in exactly one arc.
std::vector<SemiArc> semi_arcs(const Diagram& d);

Diagram crossing_change(const Diagram& d, int crossing);
Diagram virtualize(const Diagram& d, int crossing);
Diagram smooth_oriented(const Diagram& d, int crossing);
Diagram mirror(const Diagram& d);

struct SkeinTriple {
    Diagram plus;
    Diagram minus;
    Diagram zero;
    Diagram virt;
    int crossing = -1;
    /// True when the selected crossing was negative in the input, so the
    /// input became D_- and its crossing change became D_+.
    bool relabeled = false;
};

/// Build (D_+, D_-, D_0, D_v) at a classical crossing.
SkeinTriple skein_triples(const Diagram& d, int crossing);

}  // namespace vlink

#endif
