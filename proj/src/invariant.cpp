#include "vlink/invariant.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace vlink {

CapExceeded::CapExceeded(int crossings_, int cap_)
    : std::runtime_error("diagram has " + std::to_string(crossings_) +
                         " classical crossings; state-sum cap is " + std::to_string(cap_)),
      crossings(crossings_),
      cap(cap_) {}

namespace {

// Dense rewiring tables for the splice tracer. Darts are edge*2 + dir
// (0 forward, 1 backward); state loops follow darts through splice
// reconnections and virtual pass-throughs.
struct TracerTables {
    int n_edges = 0;
    int n_classical = 0;
    std::vector<int> edge_ids;                    // dense -> id
    std::vector<int> classical_ids;               // dense crossing -> id (sorted)
    std::vector<int> crossing_sign;

    // Per classical crossing: dense edge index at each of the four ports.
    std::vector<int> e_oi, e_oo, e_ui, e_uo;

    // What a dart runs into at its far end.
    struct Arrival {
        int classical = -1;  // dense classical index, or -1
        int virt = -1;       // dense virtual index, or -1
        PortRole role = PortRole::OverIn;
        bool free_loop = false;
    };
    std::vector<Arrival> arrive;  // indexed by dart

    // Per virtual crossing: dense edge index at each port.
    std::vector<int> v_ai, v_ao, v_bi, v_bo;

    std::vector<int> cut_sum_fwd;  // per dense edge, sum of cut signs on it
};

TracerTables build_tables(const Diagram& d, const CutSystem& cuts) {
    TracerTables t;
    t.n_edges = static_cast<int>(d.edges().size());
    std::unordered_map<int, int> edge_dense;
    t.edge_ids.reserve(t.n_edges);
    for (const auto& e : d.edges()) {
        edge_dense[e.id] = static_cast<int>(t.edge_ids.size());
        t.edge_ids.push_back(e.id);
    }

    std::vector<int> cls;
    for (const auto& c : d.classical()) cls.push_back(c.id);
    std::sort(cls.begin(), cls.end());
    t.n_classical = static_cast<int>(cls.size());
    t.classical_ids = cls;
    std::unordered_map<int, int> cls_dense;
    for (int i = 0; i < t.n_classical; ++i) {
        cls_dense[cls[i]] = i;
        t.crossing_sign.push_back(d.find_classical(cls[i])->sign);
    }
    t.e_oi.assign(t.n_classical, -1);
    t.e_oo.assign(t.n_classical, -1);
    t.e_ui.assign(t.n_classical, -1);
    t.e_uo.assign(t.n_classical, -1);

    std::unordered_map<int, int> virt_dense;
    for (const auto& v : d.virtual_crossings()) {
        int next = static_cast<int>(virt_dense.size());
        virt_dense.emplace(v.id, next);
    }
    t.v_ai.assign(virt_dense.size(), -1);
    t.v_ao.assign(virt_dense.size(), -1);
    t.v_bi.assign(virt_dense.size(), -1);
    t.v_bo.assign(virt_dense.size(), -1);

    auto record_port = [&](Port p, int dense_edge) {
        if (role_is_classical(p.role)) {
            int ci = cls_dense.at(p.node);
            switch (p.role) {
                case PortRole::OverIn: t.e_oi[ci] = dense_edge; break;
                case PortRole::OverOut: t.e_oo[ci] = dense_edge; break;
                case PortRole::UnderIn: t.e_ui[ci] = dense_edge; break;
                case PortRole::UnderOut: t.e_uo[ci] = dense_edge; break;
                default: break;
            }
        } else {
            int vi = virt_dense.at(p.node);
            switch (p.role) {
                case PortRole::PassAIn: t.v_ai[vi] = dense_edge; break;
                case PortRole::PassAOut: t.v_ao[vi] = dense_edge; break;
                case PortRole::PassBIn: t.v_bi[vi] = dense_edge; break;
                case PortRole::PassBOut: t.v_bo[vi] = dense_edge; break;
                default: break;
            }
        }
    };

    t.arrive.resize(2 * t.n_edges);
    for (const auto& e : d.edges()) {
        int de = edge_dense[e.id];
        if (e.is_free_loop()) {
            t.arrive[2 * de].free_loop = true;
            t.arrive[2 * de + 1].free_loop = true;
            continue;
        }
        record_port(e.head, de);
        record_port(e.tail, de);
        TracerTables::Arrival fwd;
        fwd.role = e.head.role;
        if (role_is_classical(e.head.role)) fwd.classical = cls_dense.at(e.head.node);
        else fwd.virt = virt_dense.at(e.head.node);
        t.arrive[2 * de] = fwd;
        TracerTables::Arrival bwd;
        bwd.role = e.tail.role;
        if (role_is_classical(e.tail.role)) bwd.classical = cls_dense.at(e.tail.node);
        else bwd.virt = virt_dense.at(e.tail.node);
        t.arrive[2 * de + 1] = bwd;
    }

    t.cut_sum_fwd.assign(t.n_edges, 0);
    for (const auto& q : cuts.cuts) {
        auto it = edge_dense.find(q.edge);
        if (it == edge_dense.end())
            throw std::invalid_argument("cut point references missing edge " + std::to_string(q.edge));
        t.cut_sum_fwd[it->second] += q.sign;
    }
    return t;
}

struct TracedLoop {
    int cut_sum = 0;
    int mark_sum = 0;
    std::vector<int> edges;  // dense indices in traversal order
};

// Follow one dart through the state given by `bits` (bit i set = B-splice at
// the i-th classical crossing). Returns the next dart; adds any
// disoriented-corner mark to `mark_sum`.
inline int step_dart(const TracerTables& t, std::uint64_t bits, int dart, int& mark_sum) {
    const TracerTables::Arrival& a = t.arrive[dart];
    if (a.free_loop) return dart;
    if (a.virt >= 0) {
        switch (a.role) {
            case PortRole::PassAIn: return 2 * t.v_ao[a.virt];
            case PortRole::PassBIn: return 2 * t.v_bo[a.virt];
            case PortRole::PassAOut: return 2 * t.v_ai[a.virt] + 1;
            case PortRole::PassBOut: return 2 * t.v_bi[a.virt] + 1;
            default: throw std::logic_error("tracer: impossible virtual arrival");
        }
    }
    int ci = a.classical;
    int s = t.crossing_sign[ci];
    bool splice_b = (bits >> ci) & 1;
    bool oriented = splice_b ? (s < 0) : (s > 0);
    if (oriented) {
        switch (a.role) {
            case PortRole::OverIn: return 2 * t.e_uo[ci];
            case PortRole::UnderIn: return 2 * t.e_oo[ci];
            case PortRole::OverOut: return 2 * t.e_ui[ci] + 1;
            case PortRole::UnderOut: return 2 * t.e_oi[ci] + 1;
            default: throw std::logic_error("tracer: impossible classical arrival");
        }
    }
    // Disoriented splice: the loop u-turns. Marks record the Alexander-value
    // jump across the corner: sink {o_in,u_in} passed over->under is -sign,
    // source {o_out,u_out} passed over->under is +sign; reversed passage
    // negates. Around any loop these sum to minus the cut-sign sum, which is
    // what makes the cut-free route compute the same loop index.
    switch (a.role) {
        case PortRole::OverIn: mark_sum -= s; return 2 * t.e_ui[ci] + 1;
        case PortRole::UnderIn: mark_sum += s; return 2 * t.e_oi[ci] + 1;
        case PortRole::OverOut: mark_sum += s; return 2 * t.e_uo[ci];
        case PortRole::UnderOut: mark_sum -= s; return 2 * t.e_oo[ci];
        default: throw std::logic_error("tracer: impossible classical arrival");
    }
}

// Trace every loop of one state. `visited` is caller-provided scratch of
// size n_edges, reset here.
void trace_state(const TracerTables& t, std::uint64_t bits, std::vector<char>& visited,
                 std::vector<TracedLoop>& out, bool keep_edges) {
    std::fill(visited.begin(), visited.end(), 0);
    out.clear();
    for (int e0 = 0; e0 < t.n_edges; ++e0) {
        if (visited[e0]) continue;
        TracedLoop loop;
        int start = 2 * e0;
        int cur = start;
        while (true) {
            int de = cur >> 1;
            visited[de] = 1;
            if (keep_edges) loop.edges.push_back(de);
            loop.cut_sum += (cur & 1) ? -t.cut_sum_fwd[de] : t.cut_sum_fwd[de];
            int next = step_dart(t, bits, cur, loop.mark_sum);
            if (next == start) break;
            if (visited[next >> 1])
                throw std::logic_error("tracer: state loop revisits an edge");
            cur = next;
        }
        out.push_back(std::move(loop));
    }
}

int loop_index_from_sum(int sum, const char* what) {
    if (sum % 2 != 0)
        throw std::logic_error(std::string(what) +
                               " has odd per-loop algebraic sum; loop index undefined");
    return sum < 0 ? -sum / 2 : sum / 2;
}

// Accumulates states grouped by (A-count minus B-count, loop count, tau
// multiset); the polynomial is expanded once per group.
struct StateAccumulator {
    using Key = std::tuple<int, int, std::map<int, int>>;
    std::map<Key, std::int64_t> groups;

    void add(int natural, int loop_count, std::map<int, int> d_part) {
        ++groups[{natural, loop_count, std::move(d_part)}];
    }
    void merge(const StateAccumulator& other) {
        for (const auto& [k, c] : other.groups) groups[k] += c;
    }
    MultiPoly expand() const {
        MultiPoly delta = MultiPoly::loop_factor();
        std::vector<MultiPoly> delta_pow{MultiPoly::one()};
        MultiPoly total;
        for (const auto& [key, count] : groups) {
            const auto& [natural, loops, d_part] = key;
            while (static_cast<int>(delta_pow.size()) <= loops - 1)
                delta_pow.push_back(delta_pow.back() * delta);
            total += MultiPoly::mono(natural, d_part, count) * delta_pow[loops - 1];
        }
        return total;
    }
};

void check_preconditions(const Diagram& d, const CutSystem& cuts, const BracketOptions& opts,
                         bool use_cuts) {
    if (d.empty())
        throw std::invalid_argument("state sum of an empty diagram is undefined");
    int m = static_cast<int>(d.classical().size());
    if (m > opts.max_crossings || m > 62) throw CapExceeded(m, std::min(opts.max_crossings, 62));
    if (use_cuts && opts.validate_cuts && !is_valid_cut_system(d, cuts))
        throw std::invalid_argument("cut system admits no Alexander numbering");
}

// Core state sum. use_marks selects the cut-free (arrow) loop index.
MultiPoly state_sum(const Diagram& d, const CutSystem& cuts, bool use_marks,
                    const BracketOptions& opts) {
    check_preconditions(d, cuts, opts, !use_marks);
    TracerTables tables = build_tables(d, use_marks ? CutSystem{} : cuts);
    int m = tables.n_classical;
    std::uint64_t n_states = std::uint64_t{1} << m;

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, StateAccumulator& acc) {
        std::vector<char> visited(tables.n_edges);
        std::vector<TracedLoop> loops;
        for (std::uint64_t bits = lo; bits < hi; ++bits) {
            trace_state(tables, bits, visited, loops, false);
            std::map<int, int> d_part;
            for (const auto& lp : loops) {
                int idx = use_marks ? loop_index_from_sum(lp.mark_sum, "mark sum")
                                    : loop_index_from_sum(lp.cut_sum, "cut-point sum");
                if (idx > 0) d_part[idx]++;
            }
            int natural = m - 2 * static_cast<int>(std::popcount(bits));
            acc.add(natural, static_cast<int>(loops.size()), std::move(d_part));
        }
    };

    int threads = opts.threads > 0 ? opts.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (m < 14 || threads == 1) {
        StateAccumulator acc;
        run_range(0, n_states, acc);
        return acc.expand();
    }

    std::vector<StateAccumulator> accs(threads);
    std::vector<std::thread> pool;
    std::uint64_t chunk = (n_states + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
        std::uint64_t lo = chunk * i;
        std::uint64_t hi = std::min(n_states, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, i] { run_range(lo, hi, accs[i]); });
    }
    for (auto& th : pool) th.join();
    StateAccumulator total;
    for (const auto& a : accs) total.merge(a);
    return total.expand();
}

}  // namespace

void enumerate_states(const Diagram& d, const CutSystem& cuts,
                      const std::function<void(const StateReport&)>& fn,
                      const BracketOptions& opts) {
    check_preconditions(d, cuts, opts, true);
    TracerTables tables = build_tables(d, cuts);
    int m = tables.n_classical;
    std::uint64_t n_states = std::uint64_t{1} << m;
    std::vector<char> visited(tables.n_edges);
    std::vector<TracedLoop> loops;

    MultiPoly delta = MultiPoly::loop_factor();
    for (std::uint64_t bits = 0; bits < n_states; ++bits) {
        trace_state(tables, bits, visited, loops, true);
        StateReport rep;
        rep.index = bits;
        rep.splices.assign(static_cast<size_t>(m), 'A');
        for (int i = 0; i < m; ++i)
            if ((bits >> i) & 1) rep.splices[i] = 'B';
        rep.a_minus_b = m - 2 * static_cast<int>(std::popcount(bits));
        rep.loop_count = static_cast<int>(loops.size());
        std::map<int, int> d_part;
        for (const auto& lp : loops) {
            LoopReport lr;
            lr.cut_sum = lp.cut_sum;
            lr.iota = loop_index_from_sum(lp.cut_sum, "cut-point sum");
            lr.mark_sum = lp.mark_sum;
            lr.iota_mark = loop_index_from_sum(lp.mark_sum, "mark sum");
            for (int de : lp.edges) lr.edges.push_back(tables.edge_ids[de]);
            if (lr.iota > 0) d_part[lr.iota]++;
            rep.loops.push_back(std::move(lr));
        }
        rep.monomial = MultiPoly::mono(rep.a_minus_b, d_part, 1) * delta.pow(rep.loop_count - 1);
        fn(rep);
    }
}

MultiPoly double_bracket(const Diagram& d, const CutSystem& cuts, const BracketOptions& opts) {
    return state_sum(d, cuts, false, opts);
}

MultiPoly x_polynomial(const Diagram& d, const BracketOptions& opts) {
    CutSystem cuts = canonical_cut_system(d);
    MultiPoly bracket = state_sum(d, cuts, false, opts);
    return bracket * MultiPoly::neg_a_cubed_pow(-writhe(d));
}

MultiPoly f_polynomial(const Diagram& d, const BracketOptions& opts) {
    return x_polynomial(d, opts).substitute_d_one();
}

MultiPoly arrow_oracle(const Diagram& d, const BracketOptions& opts) {
    MultiPoly bracket = state_sum(d, {}, true, opts);
    return bracket * MultiPoly::neg_a_cubed_pow(-writhe(d));
}

SkeinCheck verify_skein_classical(const Diagram& d, int crossing, const BracketOptions& opts) {
    SkeinTriple t = skein_triples(d, crossing);
    SkeinCheck chk;
    chk.identity = "A^4 f(D+) - A^-4 f(D-) + (A^2 - A^-2) f(D0) = 0";
    chk.applicable = true;
    MultiPoly fp = f_polynomial(t.plus, opts);
    MultiPoly fm = f_polynomial(t.minus, opts);
    MultiPoly f0 = f_polynomial(t.zero, opts);
    chk.lhs = MultiPoly::a_power(4) * fp +
              (MultiPoly::a_power(2) - MultiPoly::a_power(-2)) * f0;
    chk.rhs = MultiPoly::a_power(-4) * fm;
    chk.residual = chk.lhs - chk.rhs;
    return chk;
}

SkeinCheck verify_skein_virtual_cc(const Diagram& d, int crossing, const BracketOptions& opts) {
    SkeinTriple t = skein_triples(d, crossing);
    SkeinCheck chk;
    chk.identity = "A^3 f(D+) + A^-3 f(D-) = (A^3 + A^-3) f(Dv)";
    if (!is_checkerboard_colorable(t.plus)) {
        chk.applicable = false;
        chk.gate_reason = "D+ is not checkerboard colorable";
        return chk;
    }
    chk.applicable = true;
    chk.lhs = MultiPoly::a_power(3) * f_polynomial(t.plus, opts) +
              MultiPoly::a_power(-3) * f_polynomial(t.minus, opts);
    chk.rhs = (MultiPoly::a_power(3) + MultiPoly::a_power(-3)) * f_polynomial(t.virt, opts);
    chk.residual = chk.lhs - chk.rhs;
    return chk;
}

SkeinCheck verify_skein_main(const Diagram& d, int crossing, const BracketOptions& opts) {
    SkeinTriple t = skein_triples(d, crossing);
    SkeinCheck chk;
    chk.identity = "(A^6 - d1) X(D+) + (-A^-6 + d1) X(D-) = (A^6 - A^-6) X(Dv)";
    bool ac_plus = is_almost_classical_diagram(t.plus);
    bool ac_minus = is_almost_classical_diagram(t.minus);
    if (!ac_plus || !ac_minus) {
        chk.applicable = false;
        chk.gate_reason = std::string("not almost classical: ") +
                          (!ac_plus ? "D+" : "") + (!ac_plus && !ac_minus ? ", " : "") +
                          (!ac_minus ? "D-" : "");
        return chk;
    }
    chk.applicable = true;
    MultiPoly d1 = MultiPoly::mono(0, {{1, 1}}, 1);
    chk.lhs = (MultiPoly::a_power(6) - d1) * x_polynomial(t.plus, opts) +
              (MultiPoly::a_power(-6, -1) + d1) * x_polynomial(t.minus, opts);
    chk.rhs = (MultiPoly::a_power(6) - MultiPoly::a_power(-6)) * x_polynomial(t.virt, opts);
    chk.residual = chk.lhs - chk.rhs;
    return chk;
}

bool SkeinReport::all_hold() const {
    for (const auto& c : checks)
        if (c.applicable && !c.residual.is_zero()) return false;
    return true;
}

SkeinReport skein_report(const Diagram& d, int crossing, const BracketOptions& opts) {
    SkeinTriple t = skein_triples(d, crossing);
    SkeinReport rep;
    rep.crossing = crossing;
    rep.relabeled = t.relabeled;
    const std::pair<const char*, const Diagram*> named[] = {
        {"D+", &t.plus}, {"D-", &t.minus}, {"D0", &t.zero}, {"Dv", &t.virt}};
    for (auto [name, dia] : named) {
        DiagramSummary s;
        s.name = name;
        s.writhe = writhe(*dia);
        s.components = components(*dia);
        s.almost_classical = is_almost_classical_diagram(*dia);
        s.checkerboard = is_checkerboard_colorable(*dia);
        s.x = x_polynomial(*dia, opts);
        s.f = s.x.substitute_d_one();
        rep.diagrams.push_back(std::move(s));
    }
    rep.checks.push_back(verify_skein_classical(d, crossing, opts));
    rep.checks.push_back(verify_skein_virtual_cc(d, crossing, opts));
    rep.checks.push_back(verify_skein_main(d, crossing, opts));
    return rep;
}

CongruenceReport check_exponent_congruence(const Diagram& d, const BracketOptions& opts) {
    CongruenceReport rep;
    rep.component_count = components(d);
    MultiPoly x = x_polynomial(d, opts);
    rep.exp_plain = x.exp_set();
    rep.exp_d1 = x.exp_set_d(1);

    auto mod4 = [](int e) { return ((e % 4) + 4) % 4; };
    int plain_class = (rep.component_count % 2 == 1) ? 0 : 2;
    int d1_class = 2 - plain_class;

    rep.plain_congruent = true;
    for (int e : rep.exp_plain)
        if (mod4(e) != plain_class) {
            rep.plain_congruent = false;
            rep.violations.push_back("Exp(X) contains " + std::to_string(e) + " not in 4Z" +
                                     (plain_class ? "+2" : ""));
        }
    rep.d1_congruent = true;
    for (int e : rep.exp_d1)
        if (mod4(e) != d1_class) {
            rep.d1_congruent = false;
            rep.violations.push_back("Exp(X|d1) contains " + std::to_string(e) + " not in 4Z" +
                                     (d1_class ? "+2" : ""));
        }
    rep.only_d1 = true;
    for (const auto& [m, c] : x.terms())
        for (const auto& [idx, pw] : m.d_part)
            if (idx != 1) {
                rep.only_d1 = false;
                rep.violations.push_back("term uses d" + std::to_string(idx));
            }
    return rep;
}

}  // namespace vlink
