#include "vlink/numbering.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace vlink {

namespace {

// Alexander numbering offsets around a classical crossing: the port value is
// i + offset(port) for a shared i. Concrete rendering of the crossing rules
// under the pinned chirality (opposite global choice negates all numberings
// and changes nothing downstream).
int port_offset(PortRole role, int sign) {
    bool pos = sign > 0;
    switch (role) {
        case PortRole::OverIn: return pos ? 1 : 0;
        case PortRole::OverOut: return pos ? 0 : 1;
        case PortRole::UnderIn: return pos ? 0 : 1;
        case PortRole::UnderOut: return pos ? 1 : 0;
        default: throw std::logic_error("port_offset: virtual port");
    }
}

struct ArcTable {
    std::vector<SemiArc> arcs;
    std::unordered_map<int, std::pair<int, int>> edge_pos;  // edge -> (arc, index)
    // (node,role) keys for classical ports
    std::map<std::pair<int, PortRole>, int> arc_ending_at;    // in-port -> arc
    std::map<std::pair<int, PortRole>, int> arc_starting_at;  // out-port -> arc

    explicit ArcTable(const Diagram& d) : arcs(semi_arcs(d)) {
        for (const auto& a : arcs) {
            for (size_t i = 0; i < a.edges.size(); ++i)
                edge_pos.emplace(a.edges[i], std::make_pair(a.id, static_cast<int>(i)));
            if (!a.closed) {
                arc_starting_at[{a.start.node, a.start.role}] = a.id;
                arc_ending_at[{a.end.node, a.end.role}] = a.id;
            }
        }
    }
};

}  // namespace

std::vector<CutPoint> cuts_on_arc(const CutSystem& c, const SemiArc& arc) {
    std::unordered_map<int, int> pos;
    for (size_t i = 0; i < arc.edges.size(); ++i) pos[arc.edges[i]] = static_cast<int>(i);
    std::vector<CutPoint> out;
    for (const auto& q : c.cuts)
        if (q.arc == arc.id) {
            if (!pos.count(q.edge))
                throw std::invalid_argument("cut point edge does not belong to its arc");
            out.push_back(q);
        }
    std::sort(out.begin(), out.end(), [&](const CutPoint& x, const CutPoint& y) {
        if (pos[x.edge] != pos[y.edge]) return pos[x.edge] < pos[y.edge];
        return x.rank < y.rank;
    });
    return out;
}

NumberingResult solve_numbering(const Diagram& d, const CutSystem& c, int modulus) {
    if (modulus < 0) throw std::invalid_argument("modulus must be >= 0");
    ArcTable tab(d);

    // Segment variables per arc. Open arc with k cuts: k+1 segments.
    // Closed arc with k cuts: max(1, k) segments (cyclic pieces).
    std::vector<std::vector<CutPoint>> arc_cuts(tab.arcs.size());
    std::vector<int> seg_count(tab.arcs.size());
    std::vector<int> var_base(tab.arcs.size());
    int n_vars = 0;
    for (const auto& a : tab.arcs) {
        arc_cuts[a.id] = cuts_on_arc(c, a);
        int k = static_cast<int>(arc_cuts[a.id].size());
        seg_count[a.id] = a.closed ? std::max(1, k) : k + 1;
        var_base[a.id] = n_vars;
        n_vars += seg_count[a.id];
    }
    auto var_of = [&](int arc, int seg) { return var_base[arc] + seg; };

    struct Rel {
        int from, to, weight;
    };
    std::vector<Rel> rels;

    // Cut-point constraints along each arc.
    for (const auto& a : tab.arcs) {
        const auto& qs = arc_cuts[a.id];
        int k = static_cast<int>(qs.size());
        if (!a.closed) {
            for (int i = 0; i < k; ++i)
                rels.push_back({var_of(a.id, i), var_of(a.id, i + 1), qs[i].sign});
        } else if (k >= 1) {
            // segment i sits after cut i; crossing cut (i+1) leads to segment i+1
            for (int i = 0; i + 1 < k; ++i)
                rels.push_back({var_of(a.id, i), var_of(a.id, i + 1), qs[i + 1].sign});
            rels.push_back({var_of(a.id, k - 1), var_of(a.id, 0), qs[0].sign});
        }
    }

    // Crossing constraints: relate the four incident end segments.
    for (const auto& cr : d.classical()) {
        auto seg_at = [&](PortRole role) {
            if (role_is_in(role)) {
                auto it = tab.arc_ending_at.find({cr.id, role});
                if (it == tab.arc_ending_at.end())
                    throw std::invalid_argument("solve_numbering: dangling port");
                return var_of(it->second, seg_count[it->second] - 1);
            }
            auto it = tab.arc_starting_at.find({cr.id, role});
            if (it == tab.arc_starting_at.end())
                throw std::invalid_argument("solve_numbering: dangling port");
            return var_of(it->second, 0);
        };
        int anchor = seg_at(PortRole::OverIn);
        int anchor_off = port_offset(PortRole::OverIn, cr.sign);
        for (PortRole r : {PortRole::OverOut, PortRole::UnderIn, PortRole::UnderOut})
            rels.push_back({anchor, seg_at(r), port_offset(r, cr.sign) - anchor_off});
    }

    // Difference-constraint graph; consistency is cycle-sum vanishing.
    std::vector<std::vector<std::pair<int, int>>> adj(n_vars);  // (to, weight)
    for (const auto& r : rels) {
        adj[r.from].push_back({r.to, r.weight});
        adj[r.to].push_back({r.from, -r.weight});
    }

    std::vector<long long> val(n_vars, 0);
    std::vector<bool> visited(n_vars, false);
    std::vector<int> parent(n_vars, -1);
    std::vector<int> depth(n_vars, 0);
    auto norm = [&](long long v) {
        if (modulus == 0) return v;
        long long m = v % modulus;
        return m < 0 ? m + modulus : m;
    };

    for (int root = 0; root < n_vars; ++root) {
        if (visited[root]) continue;
        visited[root] = true;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, w] : adj[u]) {
                if (!visited[v]) {
                    visited[v] = true;
                    val[v] = norm(val[u] + w);
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    stack.push_back(v);
                } else {
                    long long diff = norm(val[u] + w - val[v]);
                    if (diff != 0) {
                        // Inconsistent cycle: tree path u..v plus this edge.
                        NumberingWitness wit;
                        wit.offset = diff;
                        std::vector<int> pu, pv;
                        int x = u, y = v;
                        while (depth[x] > depth[y]) { pu.push_back(x); x = parent[x]; }
                        while (depth[y] > depth[x]) { pv.push_back(y); y = parent[y]; }
                        while (x != y) {
                            pu.push_back(x); x = parent[x];
                            pv.push_back(y); y = parent[y];
                        }
                        pu.push_back(x);
                        std::vector<int> cyc(pu.rbegin(), pu.rend());
                        cyc.insert(cyc.end(), pv.begin(), pv.end());
                        for (int var : cyc) {
                            // invert var -> (arc, seg)
                            int arc = 0;
                            while (arc + 1 < static_cast<int>(tab.arcs.size()) && var_base[arc + 1] <= var) ++arc;
                            wit.cycle.push_back({arc, var - var_base[arc]});
                        }
                        NumberingResult res;
                        res.witness = std::move(wit);
                        return res;
                    }
                }
            }
        }
    }

    Numbering num;
    num.modulus = modulus;
    num.values.resize(tab.arcs.size());
    for (const auto& a : tab.arcs) {
        num.values[a.id].resize(seg_count[a.id]);
        for (int s = 0; s < seg_count[a.id]; ++s)
            num.values[a.id][s] = static_cast<int>(val[var_of(a.id, s)]);
    }
    NumberingResult res;
    res.numbering = std::move(num);
    return res;
}

bool is_almost_classical_diagram(const Diagram& d) {
    return solve_numbering(d, {}, 0).solvable();
}

bool is_checkerboard_colorable(const Diagram& d) {
    return solve_numbering(d, {}, 2).solvable();
}

bool is_valid_cut_system(const Diagram& d, const CutSystem& c) {
    return solve_numbering(d, c, 0).solvable();
}

CutSystem canonical_cut_system(const Diagram& d) {
    ArcTable tab(d);

    // Relaxed system: one rigid cluster per classical crossing (its four port
    // values differ by fixed offsets), semi-arcs carry free jumps. A spanning
    // forest of arcs gets jump 0; each non-tree arc absorbs its cycle defect.
    std::unordered_map<int, int> cluster_index;
    std::vector<int> cluster_ids;
    for (const auto& cr : d.classical()) {
        cluster_index[cr.id] = static_cast<int>(cluster_ids.size());
        cluster_ids.push_back(cr.id);
    }
    int n = static_cast<int>(cluster_ids.size());

    struct ArcLink {
        int arc;
        int from_cluster, to_cluster;
        int weight;  // base[to] = base[from] + weight when the jump is 0
    };
    std::vector<ArcLink> links;
    for (const auto& a : tab.arcs) {
        if (a.closed) continue;
        int c1 = cluster_index.at(a.start.node);
        int c2 = cluster_index.at(a.end.node);
        int o1 = port_offset(a.start.role, d.find_classical(a.start.node)->sign);
        int o2 = port_offset(a.end.role, d.find_classical(a.end.node)->sign);
        links.push_back({a.id, c1, c2, o1 - o2});
    }

    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (link idx, +1/-1 direction)
    for (size_t i = 0; i < links.size(); ++i) {
        adj[links[i].from_cluster].push_back({static_cast<int>(i), +1});
        adj[links[i].to_cluster].push_back({static_cast<int>(i), -1});
    }

    std::vector<long long> base(n, 0);
    std::vector<bool> visited(n, false);
    std::vector<bool> link_used(links.size(), false);
    for (int root = 0; root < n; ++root) {
        if (visited[root]) continue;
        visited[root] = true;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [li, dir] : adj[u]) {
                const ArcLink& L = links[li];
                int v = dir > 0 ? L.to_cluster : L.from_cluster;
                if (visited[v]) continue;
                link_used[li] = true;
                visited[v] = true;
                base[v] = base[u] + dir * L.weight;
                stack.push_back(v);
            }
        }
    }

    CutSystem out;
    for (const auto& L : links) {
        long long jump = (base[L.to_cluster] - base[L.from_cluster]) - L.weight;
        if (jump == 0) continue;
        const SemiArc& arc = tab.arcs[L.arc];
        int sign = jump > 0 ? +1 : -1;
        long long count = jump > 0 ? jump : -jump;
        for (long long r = 0; r < count; ++r)
            out.cuts.push_back({arc.id, arc.edges.back(), static_cast<int>(r), sign});
    }
    return out;
}

CutSystem around_virtual_cut_system(const Diagram& d, int virtual_id) {
    if (!d.find_virtual(virtual_id))
        throw std::invalid_argument("around_virtual_cut_system: not a virtual crossing");
    DiagramIndex idx(d);
    const Edge* a_out = idx.edge_out_of({virtual_id, PortRole::PassAOut});
    const Edge* b_out = idx.edge_out_of({virtual_id, PortRole::PassBOut});
    if (!a_out || !b_out)
        throw std::invalid_argument("around_virtual_cut_system: dangling virtual crossing");
    ArcTable tab(d);
    auto arc_of_edge = [&](int edge) { return tab.edge_pos.at(edge).first; };

    for (int flip : {+1, -1}) {
        CutSystem c;
        c.cuts.push_back({arc_of_edge(a_out->id), a_out->id, 0, -flip});
        c.cuts.push_back({arc_of_edge(b_out->id), b_out->id, 0, +flip});
        if (is_valid_cut_system(d, c)) return c;
    }
    throw std::invalid_argument(
        "around_virtual_cut_system: no two-point placement at this crossing admits a numbering");
}

CutSystem insert_canceling_pair(const Diagram& d, const CutSystem& c, int arc) {
    auto arcs = semi_arcs(d);
    if (arc < 0 || arc >= static_cast<int>(arcs.size()))
        throw std::invalid_argument("insert_canceling_pair: no such arc");
    int last_edge = arcs[arc].edges.back();
    int max_rank = -1;
    for (const auto& q : c.cuts)
        if (q.edge == last_edge) max_rank = std::max(max_rank, q.rank);
    CutSystem out = c;
    out.cuts.push_back({arc, last_edge, max_rank + 1, +1});
    out.cuts.push_back({arc, last_edge, max_rank + 2, -1});
    return out;
}

CutSystem push_through_crossing(const Diagram& d, const CutSystem& c, int crossing) {
    if (!d.find_classical(crossing))
        throw std::invalid_argument("push_through_crossing: not a classical crossing");
    ArcTable tab(d);

    auto arc_at_in = [&](PortRole r) {
        auto it = tab.arc_ending_at.find({crossing, r});
        if (it == tab.arc_ending_at.end())
            throw std::invalid_argument("push_through_crossing: dangling port");
        return it->second;
    };
    auto arc_at_out = [&](PortRole r) {
        auto it = tab.arc_starting_at.find({crossing, r});
        if (it == tab.arc_starting_at.end())
            throw std::invalid_argument("push_through_crossing: dangling port");
        return it->second;
    };

    int in_over = arc_at_in(PortRole::OverIn);
    int in_under = arc_at_in(PortRole::UnderIn);

    auto terminal = [&](int arc) -> std::optional<CutPoint> {
        auto qs = cuts_on_arc(c, tab.arcs[arc]);
        if (qs.empty()) return std::nullopt;
        return qs.back();
    };
    auto t_over = terminal(in_over);
    auto t_under = terminal(in_under);
    if (!t_over || !t_under)
        throw std::invalid_argument("push_through_crossing: an incoming arc has no cut point");
    if (t_over->sign != t_under->sign)
        throw std::invalid_argument("push_through_crossing: incoming terminal cut points have opposite signs");
    int sign = t_over->sign;

    CutSystem out;
    auto same = [](const CutPoint& x, const CutPoint& y) {
        return x.arc == y.arc && x.edge == y.edge && x.rank == y.rank && x.sign == y.sign;
    };
    bool removed_over = false, removed_under = false;
    for (const auto& q : c.cuts) {
        if (!removed_over && same(q, *t_over)) { removed_over = true; continue; }
        if (!removed_under && same(q, *t_under)) { removed_under = true; continue; }
        out.cuts.push_back(q);
    }

    for (PortRole r : {PortRole::OverOut, PortRole::UnderOut}) {
        int arc = arc_at_out(r);
        int first_edge = tab.arcs[arc].edges.front();
        int min_rank = 1;
        for (const auto& q : out.cuts)
            if (q.edge == first_edge) min_rank = std::min(min_rank, q.rank);
        out.cuts.push_back({arc, first_edge, min_rank - 1, sign});
    }
    return out;
}

}  // namespace vlink
