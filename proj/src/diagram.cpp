#include "vlink/diagram.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vlink {

namespace {

std::uint64_t port_key(Port p) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.node)) << 8) |
           static_cast<std::uint64_t>(p.role);
}

const PortRole kClassicalRoles[4] = {PortRole::OverIn, PortRole::OverOut,
                                     PortRole::UnderIn, PortRole::UnderOut};
const PortRole kVirtualRoles[4] = {PortRole::PassAIn, PortRole::PassAOut,
                                   PortRole::PassBIn, PortRole::PassBOut};

std::string port_str(Port p) {
    std::ostringstream os;
    os << "node " << p.node << " port " << role_name(p.role);
    return os.str();
}

}  // namespace

bool role_is_in(PortRole r) {
    switch (r) {
        case PortRole::OverIn:
        case PortRole::UnderIn:
        case PortRole::PassAIn:
        case PortRole::PassBIn:
            return true;
        default:
            return false;
    }
}

bool role_is_classical(PortRole r) {
    switch (r) {
        case PortRole::OverIn:
        case PortRole::OverOut:
        case PortRole::UnderIn:
        case PortRole::UnderOut:
            return true;
        default:
            return false;
    }
}

PortRole strand_out_role(PortRole in) {
    switch (in) {
        case PortRole::OverIn: return PortRole::OverOut;
        case PortRole::UnderIn: return PortRole::UnderOut;
        case PortRole::PassAIn: return PortRole::PassAOut;
        case PortRole::PassBIn: return PortRole::PassBOut;
        default: throw std::logic_error("strand_out_role: not an in-port");
    }
}

const char* role_name(PortRole r) {
    switch (r) {
        case PortRole::OverIn: return "o_in";
        case PortRole::OverOut: return "o_out";
        case PortRole::UnderIn: return "u_in";
        case PortRole::UnderOut: return "u_out";
        case PortRole::PassAIn: return "a_in";
        case PortRole::PassAOut: return "a_out";
        case PortRole::PassBIn: return "b_in";
        case PortRole::PassBOut: return "b_out";
    }
    return "?";
}

int Diagram::add_classical(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("crossing sign must be +1 or -1");
    classical_.push_back({next_node_id_, sign});
    return next_node_id_++;
}

int Diagram::add_virtual() {
    virtual_.push_back({next_node_id_});
    return next_node_id_++;
}

int Diagram::add_edge(Port tail, Port head) {
    edges_.push_back({next_edge_id_, tail, head});
    return next_edge_id_++;
}

int Diagram::add_free_loop() {
    edges_.push_back({next_edge_id_, Port{}, Port{}});
    return next_edge_id_++;
}

const ClassicalCrossing* Diagram::find_classical(int id) const {
    for (const auto& c : classical_)
        if (c.id == id) return &c;
    return nullptr;
}

ClassicalCrossing* Diagram::find_classical(int id) {
    for (auto& c : classical_)
        if (c.id == id) return &c;
    return nullptr;
}

const VirtualCrossing* Diagram::find_virtual(int id) const {
    for (const auto& v : virtual_)
        if (v.id == id) return &v;
    return nullptr;
}

const Edge* Diagram::find_edge(int id) const {
    for (const auto& e : edges_)
        if (e.id == id) return &e;
    return nullptr;
}

Edge* Diagram::find_edge(int id) {
    for (auto& e : edges_)
        if (e.id == id) return &e;
    return nullptr;
}

void Diagram::remove_classical(int id) {
    std::erase_if(classical_, [id](const ClassicalCrossing& c) { return c.id == id; });
}

void Diagram::remove_edge(int id) {
    std::erase_if(edges_, [id](const Edge& e) { return e.id == id; });
}

void Diagram::reclassify_as_virtual(int id) {
    if (!find_classical(id)) throw std::invalid_argument("reclassify_as_virtual: not a classical crossing");
    remove_classical(id);
    virtual_.push_back({id});
}

DiagramIndex::DiagramIndex(const Diagram& d) : d_(d) {
    for (const auto& e : d.edges()) {
        if (!e.head.is_null()) by_head_.emplace(port_key(e.head), e.id);
        if (!e.tail.is_null()) by_tail_.emplace(port_key(e.tail), e.id);
    }
    for (const auto& c : d.classical()) sign_.emplace(c.id, c.sign);
}

const Edge* DiagramIndex::edge_into(Port p) const {
    if (p.is_null()) return nullptr;
    auto it = by_head_.find(port_key(p));
    return it == by_head_.end() ? nullptr : d_.find_edge(it->second);
}

const Edge* DiagramIndex::edge_out_of(Port p) const {
    if (p.is_null()) return nullptr;
    auto it = by_tail_.find(port_key(p));
    return it == by_tail_.end() ? nullptr : d_.find_edge(it->second);
}

bool DiagramIndex::is_classical_node(int node) const { return sign_.count(node) > 0; }

int DiagramIndex::classical_sign(int node) const {
    auto it = sign_.find(node);
    if (it == sign_.end()) throw std::invalid_argument("not a classical crossing");
    return it->second;
}

std::vector<std::string> validate_diagram(const Diagram& d) {
    std::vector<std::string> bad;
    std::unordered_map<std::uint64_t, int> head_count, tail_count;
    std::unordered_map<int, bool> node_classical;
    for (const auto& c : d.classical()) node_classical[c.id] = true;
    for (const auto& v : d.virtual_crossings()) {
        if (node_classical.count(v.id)) bad.push_back("duplicate crossing id " + std::to_string(v.id));
        node_classical[v.id] = false;
    }

    for (const auto& e : d.edges()) {
        if (e.tail.is_null() != e.head.is_null()) {
            bad.push_back("edge " + std::to_string(e.id) + " has exactly one null endpoint");
            continue;
        }
        if (e.is_free_loop()) continue;
        for (Port p : {e.tail, e.head}) {
            auto it = node_classical.find(p.node);
            if (it == node_classical.end()) {
                bad.push_back("edge " + std::to_string(e.id) + " references missing " + port_str(p));
                continue;
            }
            if (it->second != role_is_classical(p.role))
                bad.push_back("edge " + std::to_string(e.id) + " port kind mismatch at " + port_str(p));
        }
        if (!e.tail.is_null()) {
            if (role_is_in(e.tail.role))
                bad.push_back("edge " + std::to_string(e.id) + " tail is an in-port (" + port_str(e.tail) + ")");
            tail_count[port_key(e.tail)]++;
        }
        if (!e.head.is_null()) {
            if (!role_is_in(e.head.role))
                bad.push_back("edge " + std::to_string(e.id) + " head is an out-port (" + port_str(e.head) + ")");
            head_count[port_key(e.head)]++;
        }
    }

    auto check_arity = [&](int node, PortRole role) {
        Port p{node, role};
        auto& cnt = role_is_in(role) ? head_count : tail_count;
        auto it = cnt.find(port_key(p));
        int n = it == cnt.end() ? 0 : it->second;
        if (n == 0)
            bad.push_back("dangling port: " + port_str(p));
        else if (n > 1)
            bad.push_back("port arity violation: " + port_str(p) + " used by " + std::to_string(n) + " edges");
    };
    for (const auto& c : d.classical())
        for (PortRole r : kClassicalRoles) check_arity(c.id, r);
    for (const auto& v : d.virtual_crossings())
        for (PortRole r : kVirtualRoles) check_arity(v.id, r);

    return bad;
}

int components(const Diagram& d) {
    DiagramIndex idx(d);
    std::unordered_map<int, bool> seen;
    int n = 0;
    for (const auto& e : d.edges()) {
        if (seen[e.id]) continue;
        ++n;
        int cur = e.id;
        while (!seen[cur]) {
            seen[cur] = true;
            const Edge* ce = d.find_edge(cur);
            if (ce->is_free_loop()) break;
            const Edge* next = idx.edge_out_of({ce->head.node, strand_out_role(ce->head.role)});
            if (!next) throw std::invalid_argument("components: diagram is not closed");
            cur = next->id;
        }
    }
    return n;
}

int writhe(const Diagram& d) {
    int w = 0;
    for (const auto& c : d.classical()) w += c.sign;
    return w;
}

std::vector<SemiArc> semi_arcs(const Diagram& d) {
    DiagramIndex idx(d);
    std::vector<SemiArc> arcs;
    std::unordered_map<int, bool> used;

    auto trace_from = [&](const Edge* e) {
        SemiArc arc;
        arc.id = static_cast<int>(arcs.size());
        arc.start = e->tail;
        while (true) {
            used[e->id] = true;
            arc.edges.push_back(e->id);
            if (e->head.is_null() || role_is_classical(e->head.role)) {
                arc.end = e->head;
                arc.closed = e->head.is_null();
                break;
            }
            const Edge* next = idx.edge_out_of({e->head.node, strand_out_role(e->head.role)});
            if (!next) throw std::invalid_argument("semi_arcs: diagram is not closed");
            if (used[next->id]) {  // closed run through virtual crossings only
                arc.closed = true;
                arc.start = Port{};
                arc.end = Port{};
                break;
            }
            e = next;
        }
        arcs.push_back(std::move(arc));
    };

    // Open arcs first, rooted at classical out-ports in id order.
    for (const auto& c : d.classical()) {
        for (PortRole r : {PortRole::OverOut, PortRole::UnderOut}) {
            const Edge* e = idx.edge_out_of({c.id, r});
            if (e && !used[e->id]) trace_from(e);
        }
    }
    // Remaining edges form closed arcs (virtual-only cycles and free loops).
    for (const auto& e : d.edges())
        if (!used[e.id]) trace_from(&e);

    return arcs;
}

namespace {

const ClassicalCrossing& require_classical(const Diagram& d, int crossing) {
    const ClassicalCrossing* c = d.find_classical(crossing);
    if (!c) {
        if (d.find_virtual(crossing))
            throw std::invalid_argument("crossing " + std::to_string(crossing) + " is virtual");
        throw std::invalid_argument("no crossing with id " + std::to_string(crossing));
    }
    return *c;
}

void swap_over_under_ports(Diagram& d, int crossing) {
    for (const auto& e : d.edges()) {
        Edge* me = d.find_edge(e.id);
        for (Port* p : {&me->tail, &me->head}) {
            if (p->node != crossing) continue;
            switch (p->role) {
                case PortRole::OverIn: p->role = PortRole::UnderIn; break;
                case PortRole::OverOut: p->role = PortRole::UnderOut; break;
                case PortRole::UnderIn: p->role = PortRole::OverIn; break;
                case PortRole::UnderOut: p->role = PortRole::OverOut; break;
                default: break;
            }
        }
    }
}

}  // namespace

Diagram crossing_change(const Diagram& d, int crossing) {
    require_classical(d, crossing);
    Diagram out = d;
    out.find_classical(crossing)->sign *= -1;
    swap_over_under_ports(out, crossing);
    return out;
}

Diagram mirror(const Diagram& d) {
    Diagram out = d;
    for (const auto& c : d.classical()) {
        out.find_classical(c.id)->sign *= -1;
        swap_over_under_ports(out, c.id);
    }
    return out;
}

Diagram virtualize(const Diagram& d, int crossing) {
    require_classical(d, crossing);
    Diagram out = d;
    // The node id is reused so callers can address the new virtual crossing
    // by the old classical id. Over strand -> pass A, under strand -> pass B.
    out.reclassify_as_virtual(crossing);
    for (const auto& e : d.edges()) {
        Edge* me = out.find_edge(e.id);
        for (Port* p : {&me->tail, &me->head}) {
            if (p->node != crossing) continue;
            switch (p->role) {
                case PortRole::OverIn: p->role = PortRole::PassAIn; break;
                case PortRole::OverOut: p->role = PortRole::PassAOut; break;
                case PortRole::UnderIn: p->role = PortRole::PassBIn; break;
                case PortRole::UnderOut: p->role = PortRole::PassBOut; break;
                default: break;
            }
        }
    }
    return out;
}

Diagram smooth_oriented(const Diagram& d, int crossing) {
    require_classical(d, crossing);
    DiagramIndex idx(d);
    const Edge* in_over = idx.edge_into({crossing, PortRole::OverIn});
    const Edge* out_over = idx.edge_out_of({crossing, PortRole::OverOut});
    const Edge* in_under = idx.edge_into({crossing, PortRole::UnderIn});
    const Edge* out_under = idx.edge_out_of({crossing, PortRole::UnderOut});
    if (!in_over || !out_over || !in_under || !out_under)
        throw std::invalid_argument("smooth_oriented: crossing has dangling ports");

    Diagram out = d;
    out.remove_classical(crossing);

    // Oriented reconnection: o_in continues as u_out, u_in continues as o_out.
    int p = in_over->id, q = out_under->id;   // weld head(p) -> tail(q)
    int r = in_under->id, s = out_over->id;   // weld head(r) -> tail(s)

    auto merge2 = [&out](int keep, int drop) {
        Port new_head = out.find_edge(drop)->head;
        out.find_edge(keep)->head = new_head;
        out.remove_edge(drop);
    };
    auto merge3 = [&out](int keep, int mid, int last) {
        Port new_head = out.find_edge(last)->head;
        out.find_edge(keep)->head = new_head;
        out.remove_edge(mid);
        out.remove_edge(last);
    };
    auto free_loop = [&out](int id) {
        Edge* e = out.find_edge(id);
        e->tail = Port{};
        e->head = Port{};
    };

    if (p == q && r == s) {
        free_loop(p);
        free_loop(r);
    } else if (p == q) {
        free_loop(p);
        merge2(r, s);
    } else if (r == s) {
        free_loop(r);
        merge2(p, q);
    } else if (q == r && s == p) {
        // the two welds close a single cycle through both edges
        out.remove_edge(q);
        free_loop(p);
    } else if (q == r) {
        merge3(p, q, s);
    } else if (s == p) {
        merge3(r, s, q);
    } else {
        merge2(p, q);
        merge2(r, s);
    }
    return out;
}

SkeinTriple skein_triples(const Diagram& d, int crossing) {
    const ClassicalCrossing& c = require_classical(d, crossing);
    SkeinTriple t;
    t.crossing = crossing;
    t.relabeled = c.sign < 0;
    if (t.relabeled) {
        t.plus = crossing_change(d, crossing);
        t.minus = d;
    } else {
        t.plus = d;
        t.minus = crossing_change(d, crossing);
    }
    // The oriented smoothing and the virtualization do not depend on which
    // strand is on top, so they may be built from the input directly.
    t.zero = smooth_oriented(d, crossing);
    t.virt = virtualize(d, crossing);
    return t;
}

}  // namespace vlink
