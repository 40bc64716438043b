#include "vlink/codec.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

using nlohmann::json;

namespace vlink {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char take() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
        return text[pos++];
    }
    void expect(char c) {
        char got = take();
        if (got != c)
            throw ParseError(std::string("expected '") + c + "' but found '" + got + "'", pos - 1);
    }
    int integer() {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) throw ParseError("expected an integer", start);
        return std::stoi(text.substr(start, pos - start));
    }
};

}  // namespace

Diagram parse_pd(const std::string& text) {
    Cursor cur{text};
    Diagram d;
    // label -> (port it leaves from, port it enters), with first-seen offsets
    struct LabelUse {
        std::vector<std::pair<Port, size_t>> outs, ins;
    };
    std::map<int, LabelUse> labels;

    bool any = false;
    while (!cur.done()) {
        any = true;
        char kind = cur.take();
        if (kind == 'L') {
            d.add_free_loop();
        } else if (kind == 'X' || kind == 'V') {
            size_t rec_at = cur.pos - 1;
            cur.expect('[');
            int a = cur.integer();
            cur.expect(',');
            int b = cur.integer();
            cur.expect(',');
            int c = cur.integer();
            cur.expect(',');
            int e = cur.integer();
            cur.expect(']');
            int node;
            PortRole in1, out1, in2, out2;
            if (kind == 'X') {
                char sg = cur.take();
                if (sg != '+' && sg != '-')
                    throw ParseError("classical record needs a sign '+' or '-'", cur.pos - 1);
                node = d.add_classical(sg == '+' ? +1 : -1);
                in1 = PortRole::OverIn;
                out1 = PortRole::OverOut;
                in2 = PortRole::UnderIn;
                out2 = PortRole::UnderOut;
            } else {
                node = d.add_virtual();
                in1 = PortRole::PassAIn;
                out1 = PortRole::PassAOut;
                in2 = PortRole::PassBIn;
                out2 = PortRole::PassBOut;
            }
            labels[a].ins.push_back({{node, in1}, rec_at});
            labels[b].outs.push_back({{node, out1}, rec_at});
            labels[c].ins.push_back({{node, in2}, rec_at});
            labels[e].outs.push_back({{node, out2}, rec_at});
        } else {
            throw ParseError(std::string("unknown record kind '") + kind + "'", cur.pos - 1);
        }
        if (!cur.done()) cur.expect(';');
    }
    if (!any) throw ParseError("empty input", 0);

    for (const auto& [label, use] : labels) {
        size_t total = use.ins.size() + use.outs.size();
        if (total != 2)
            throw ParseError("label arity: label " + std::to_string(label) + " appears " +
                                 std::to_string(total) + " times (expected 2)",
                             (use.ins.empty() ? use.outs : use.ins).front().second);
        if (use.ins.size() != 1)
            throw ParseError("label " + std::to_string(label) +
                                 " must appear once as an in slot and once as an out slot",
                             use.ins.empty() ? use.outs.front().second : use.ins.front().second);
        d.add_edge(use.outs.front().first, use.ins.front().first);
    }
    return d;
}

std::string emit_pd(const Diagram& d) {
    // Records sorted by crossing id; labels assigned at first appearance.
    DiagramIndex idx(d);
    struct Rec {
        int id;
        bool classical;
    };
    std::vector<Rec> recs;
    for (const auto& c : d.classical()) recs.push_back({c.id, true});
    for (const auto& v : d.virtual_crossings()) recs.push_back({v.id, false});
    std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) { return a.id < b.id; });

    std::map<int, int> label_of_edge;
    int next_label = 1;
    auto label = [&](const Edge* e) {
        auto [it, fresh] = label_of_edge.try_emplace(e->id, next_label);
        if (fresh) ++next_label;
        return it->second;
    };

    std::vector<std::string> out;
    for (const Rec& r : recs) {
        std::ostringstream os;
        if (r.classical) {
            os << "X[" << label(idx.edge_into({r.id, PortRole::OverIn})) << ","
               << label(idx.edge_out_of({r.id, PortRole::OverOut})) << ","
               << label(idx.edge_into({r.id, PortRole::UnderIn})) << ","
               << label(idx.edge_out_of({r.id, PortRole::UnderOut})) << "] "
               << (d.find_classical(r.id)->sign > 0 ? "+" : "-");
        } else {
            os << "V[" << label(idx.edge_into({r.id, PortRole::PassAIn})) << ","
               << label(idx.edge_out_of({r.id, PortRole::PassAOut})) << ","
               << label(idx.edge_into({r.id, PortRole::PassBIn})) << ","
               << label(idx.edge_out_of({r.id, PortRole::PassBOut})) << "]";
        }
        out.push_back(os.str());
    }
    for (const auto& e : d.edges())
        if (e.is_free_loop()) out.push_back("L");

    std::ostringstream os;
    for (size_t i = 0; i < out.size(); ++i) {
        if (i) os << " ; ";
        os << out[i];
    }
    return os.str();
}

SignedGaussCode parse_gauss(const std::string& text) {
    SignedGaussCode code;
    code.components.emplace_back();
    Cursor cur{text};
    while (!cur.done()) {
        char c = cur.take();
        if (c == '/') {
            if (code.components.back().empty())
                throw ParseError("empty component", cur.pos - 1);
            code.components.emplace_back();
            continue;
        }
        if (c != 'O' && c != 'U')
            throw ParseError(std::string("expected O, U or '/' but found '") + c + "'", cur.pos - 1);
        GaussPass p;
        p.over = (c == 'O');
        p.label = cur.integer();
        char sg = cur.take();
        if (sg != '+' && sg != '-') throw ParseError("pass needs a sign '+' or '-'", cur.pos - 1);
        p.sign = sg == '+' ? +1 : -1;
        code.components.back().push_back(p);
    }
    if (code.components.back().empty()) {
        if (code.components.size() == 1) throw ParseError("empty input", 0);
        throw ParseError("empty component", text.size());
    }

    std::map<int, std::vector<GaussPass>> seen;
    for (const auto& comp : code.components)
        for (const auto& p : comp) seen[p.label].push_back(p);
    for (const auto& [label, passes] : seen) {
        int overs = 0, unders = 0;
        for (const auto& p : passes) (p.over ? overs : unders)++;
        if (overs != 1 || unders != 1)
            throw ParseError("unmatched O/U: crossing " + std::to_string(label) + " has " +
                                 std::to_string(overs) + " over and " + std::to_string(unders) +
                                 " under passes",
                             0);
        if (passes[0].sign != passes[1].sign)
            throw ParseError("sign mismatch at crossing " + std::to_string(label), 0);
    }
    return code;
}

namespace {

// One chord of the realization: the crossing vertex sits at the first pass,
// the second pass detours to it. Detour wires of interleaved chords cross in
// virtual crossings; all main-line wires are crossing-free.
struct Chord {
    int label = 0;
    int node = -1;    // classical crossing id
    int first = 0;    // walk position of the first pass
    int second = 0;   // walk position of the second pass
    bool first_over = false;
};

}  // namespace

Diagram realize_gauss(const SignedGaussCode& code) {
    // Flatten the walk.
    std::vector<GaussPass> walk;
    std::vector<std::pair<int, int>> comp_range;  // [first, last] positions
    for (const auto& comp : code.components) {
        int first = static_cast<int>(walk.size());
        for (const auto& p : comp) walk.push_back(p);
        comp_range.push_back({first, static_cast<int>(walk.size()) - 1});
    }

    Diagram d;
    std::map<int, Chord> chords;  // by label
    std::vector<int> chord_order;
    for (size_t pos = 0; pos < walk.size(); ++pos) {
        const GaussPass& p = walk[pos];
        auto it = chords.find(p.label);
        if (it == chords.end()) {
            Chord ch;
            ch.label = p.label;
            ch.first = static_cast<int>(pos);
            ch.second = -1;
            ch.first_over = p.over;
            ch.node = d.add_classical(p.sign);
            chords.emplace(p.label, ch);
            chord_order.push_back(p.label);
        } else {
            it->second.second = static_cast<int>(pos);
        }
    }
    for (const auto& [label, ch] : chords)
        if (ch.second < 0)
            throw std::invalid_argument("crossing " + std::to_string(label) +
                                        " has only one pass in the code");

    auto interval = [](const Chord& c) {
        return std::pair<int, int>{std::min(c.first, c.second), std::max(c.first, c.second)};
    };
    auto interleaved = [&](const Chord& a, const Chord& b) {
        auto [alo, ahi] = interval(a);
        auto [blo, bhi] = interval(b);
        bool lo_in = alo < blo && blo < ahi;
        bool hi_in = alo < bhi && bhi < ahi;
        return lo_in != hi_in;
    };
    auto inside_endpoint = [&](const Chord& of, const Chord& partner) {
        auto [lo, hi] = interval(of);
        return (lo < partner.first && partner.first < hi) ? partner.first : partner.second;
    };

    // Four virtual crossings per interleaved pair, one per wire-wire meeting.
    // Keyed by (label of the chord appearing first in the walk, label of the
    // other chord, first chord's wire 0=out/1=in, other chord's wire).
    std::map<std::tuple<int, int, int, int>, int> station;
    for (size_t i = 0; i < chord_order.size(); ++i) {
        for (size_t j = i + 1; j < chord_order.size(); ++j) {
            const Chord& a = chords.at(chord_order[i]);
            const Chord& b = chords.at(chord_order[j]);
            if (!interleaved(a, b)) continue;
            for (int wa : {0, 1})
                for (int wb : {0, 1})
                    station[{a.label, b.label, wa, wb}] = d.add_virtual();
        }
    }

    // Station sequence along one detour wire of `ch` (0 = out toward the
    // crossing, 1 = back). Partners are met in order of their inside
    // endpoint's distance from the detour start; the two parallel wires of a
    // partner are met out-then-in going out and in-then-out coming back.
    auto wire_stations = [&](const Chord& ch, int wire) {
        struct Met {
            int dist;
            int label;
        };
        std::vector<Met> mets;
        for (int other_label : chord_order) {
            if (other_label == ch.label) continue;
            const Chord& other = chords.at(other_label);
            if (!interleaved(ch, other)) continue;
            int inside = inside_endpoint(ch, other);
            mets.push_back({std::abs(inside - ch.second), other_label});
        }
        std::sort(mets.begin(), mets.end(), [](const Met& x, const Met& y) {
            if (x.dist != y.dist) return x.dist < y.dist;
            return x.label < y.label;
        });
        if (wire == 1) std::reverse(mets.begin(), mets.end());

        std::vector<std::pair<int, int>> out;  // (virtual node, my strand: 0=A,1=B)
        for (const Met& met : mets) {
            const Chord& other = chords.at(met.label);
            bool mine_first = ch.first < other.first;
            int first_other = wire == 0 ? 0 : 1;   // meet partner's out wire first going out
            int second_other = 1 - first_other;
            auto key = [&](int other_wire) {
                return mine_first ? std::tuple{ch.label, met.label, wire, other_wire}
                                  : std::tuple{met.label, ch.label, other_wire, wire};
            };
            int strand = mine_first ? 0 : 1;
            out.push_back({station.at(key(first_other)), strand});
            out.push_back({station.at(key(second_other)), strand});
        }
        return out;
    };

    // Walk the strand, recording (in_port, out_port) node visits; edges join
    // consecutive visits within a component.
    std::vector<std::pair<Port, Port>> visits;
    std::vector<std::pair<int, int>> comp_visit_range;
    for (size_t ci = 0; ci < code.components.size(); ++ci) {
        int first_visit = static_cast<int>(visits.size());
        for (int pos = comp_range[ci].first; pos <= comp_range[ci].second; ++pos) {
            const GaussPass& p = walk[pos];
            const Chord& ch = chords.at(p.label);
            auto through = [&](bool over) -> std::pair<Port, Port> {
                if (over)
                    return {{ch.node, PortRole::OverIn}, {ch.node, PortRole::OverOut}};
                return {{ch.node, PortRole::UnderIn}, {ch.node, PortRole::UnderOut}};
            };
            if (pos == ch.first) {
                visits.push_back(through(p.over));
            } else {
                for (auto [node, strand] : wire_stations(ch, 0))
                    visits.push_back(strand == 0
                                         ? std::pair<Port, Port>{{node, PortRole::PassAIn},
                                                                 {node, PortRole::PassAOut}}
                                         : std::pair<Port, Port>{{node, PortRole::PassBIn},
                                                                 {node, PortRole::PassBOut}});
                visits.push_back(through(p.over));
                for (auto [node, strand] : wire_stations(ch, 1))
                    visits.push_back(strand == 0
                                         ? std::pair<Port, Port>{{node, PortRole::PassAIn},
                                                                 {node, PortRole::PassAOut}}
                                         : std::pair<Port, Port>{{node, PortRole::PassBIn},
                                                                 {node, PortRole::PassBOut}});
            }
        }
        comp_visit_range.push_back({first_visit, static_cast<int>(visits.size()) - 1});
    }

    for (auto [lo, hi] : comp_visit_range) {
        for (int i = lo; i < hi; ++i) d.add_edge(visits[i].second, visits[i + 1].first);
        d.add_edge(visits[hi].second, visits[lo].first);
    }
    return d;
}

Diagram parse_braid(const std::string& text) {
    Cursor cur{text};
    cur.expect('s');
    cur.expect('=');
    int strands = cur.integer();
    cur.expect(':');
    if (strands < 0) throw ParseError("negative strand count", 0);

    Diagram d;
    // Per lane: the out-port feeding the next consumer, and the first
    // consumed in-port (for the closure edge).
    std::vector<Port> tail(strands);
    std::vector<Port> first_in(strands);
    std::vector<bool> touched(strands, false);

    auto consume = [&](int lane, Port in_port, Port out_port) {
        if (!touched[lane]) {
            touched[lane] = true;
            first_in[lane] = in_port;
        } else {
            d.add_edge(tail[lane], in_port);
        }
        tail[lane] = out_port;
    };

    bool any_token = false;
    while (!cur.done()) {
        any_token = true;
        char kind = cur.take();
        if (kind != 's' && kind != 'S' && kind != 'v')
            throw ParseError(std::string("unknown braid token '") + kind + "'", cur.pos - 1);
        size_t at = cur.pos;
        int i = cur.integer();
        if (i < 1 || i >= strands)
            throw ParseError("generator index " + std::to_string(i) + " out of range for " +
                                 std::to_string(strands) + " strands",
                             at);
        int lo = i - 1, hi = i;
        if (kind == 'v') {
            int node = d.add_virtual();
            consume(lo, {node, PortRole::PassAIn}, {node, PortRole::PassBOut});
            consume(hi, {node, PortRole::PassBIn}, {node, PortRole::PassAOut});
        } else if (kind == 's') {
            // positive: the strand entering on lane i passes over
            int node = d.add_classical(+1);
            consume(lo, {node, PortRole::OverIn}, {node, PortRole::UnderOut});
            consume(hi, {node, PortRole::UnderIn}, {node, PortRole::OverOut});
        } else {
            // S: negative crossing, lane-i strand passes under
            int node = d.add_classical(-1);
            consume(lo, {node, PortRole::UnderIn}, {node, PortRole::OverOut});
            consume(hi, {node, PortRole::OverIn}, {node, PortRole::UnderOut});
        }
    }
    if (strands == 0) throw ParseError(any_token ? "braid on 0 strands" : "empty word on 0 strands", 0);

    for (int lane = 0; lane < strands; ++lane) {
        if (touched[lane])
            d.add_edge(tail[lane], first_in[lane]);
        else
            d.add_free_loop();
    }
    return d;
}

namespace {

// Figure-eight braid closure and the crossing whose skein triple reproduces
// the published X values. Pinned by the acceptance search in the test suite.
Diagram figure8_base() { return parse_braid("s=3: s1 S2 s1 S2"); }
constexpr int kFigure8TripleCrossing = 0;

}  // namespace

int figure8_triple_crossing() { return kFigure8TripleCrossing; }

Diagram catalog(const std::string& name) {
    if (name == "unknot") {
        Diagram d;
        d.add_free_loop();
        return d;
    }
    if (name == "curl+") return parse_pd("X[2,1,1,2] +");
    if (name == "curl-") return parse_pd("X[2,1,1,2] -");
    if (name == "hopf+") return parse_braid("s=2: s1 s1");
    if (name == "trefoil") return parse_braid("s=2: s1 s1 s1");
    if (name == "trefoil_mirror") return parse_braid("s=2: S1 S1 S1");
    if (name == "figure8") return figure8_base();
    if (name == "vtrefoil") return parse_braid("s=2: s1 s1 v1");
    if (name == "paper_triple_plus")
        return skein_triples(figure8_base(), kFigure8TripleCrossing).plus;
    if (name == "paper_triple_minus")
        return skein_triples(figure8_base(), kFigure8TripleCrossing).minus;
    if (name == "paper_triple_virtual")
        return skein_triples(figure8_base(), kFigure8TripleCrossing).virt;
    throw std::invalid_argument("unknown catalog name: " + name);
}

std::vector<std::string> catalog_names() {
    return {"unknot",  "curl+",   "curl-",   "hopf+",
            "trefoil", "trefoil_mirror", "figure8", "vtrefoil",
            "paper_triple_plus", "paper_triple_minus", "paper_triple_virtual"};
}

json poly_to_json(const MultiPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json d_part = json::object();
        for (const auto& [idx, pw] : m.d_part) d_part[std::to_string(idx)] = pw;
        terms.push_back({{"A", m.a_exp}, {"d", d_part}, {"c", c}});
    }
    return json{{"poly", terms}};
}

json cut_system_to_json(const CutSystem& c) {
    auto cuts = c.cuts;
    std::sort(cuts.begin(), cuts.end(), [](const CutPoint& a, const CutPoint& b) {
        return std::tie(a.arc, a.edge, a.rank) < std::tie(b.arc, b.edge, b.rank);
    });
    json arr = json::array();
    for (const auto& q : cuts)
        arr.push_back({{"arc", q.arc}, {"edge", q.edge}, {"rank", q.rank}, {"sign", q.sign}});
    return json{{"cuts", arr}};
}

json numbering_to_json(const NumberingResult& r) {
    if (r.solvable()) {
        json arcs = json::array();
        for (const auto& vals : r.numbering->values) arcs.push_back(vals);
        return json{{"modulus", r.numbering->modulus}, {"arcs", arcs}};
    }
    json cyc = json::array();
    for (const auto& s : r.witness->cycle) cyc.push_back({{"arc", s.arc}, {"seg", s.seg}});
    return json{{"unsolvable", {{"offset", r.witness->offset}, {"cycle", cyc}}}};
}

json state_to_json(const StateReport& s) {
    json loops = json::array();
    for (const auto& lp : s.loops)
        loops.push_back({{"edges", lp.edges},
                         {"cut_sum", lp.cut_sum},
                         {"iota", lp.iota},
                         {"mark_sum", lp.mark_sum},
                         {"iota_mark", lp.iota_mark}});
    return json{{"index", s.index},
                {"splices", s.splices},
                {"natural", s.a_minus_b},
                {"loop_count", s.loop_count},
                {"loops", loops},
                {"monomial", poly_to_json(s.monomial)}};
}

json skein_check_to_json(const SkeinCheck& c) {
    json j{{"identity", c.identity}, {"applicable", c.applicable}};
    if (!c.applicable) {
        j["gate_reason"] = c.gate_reason;
    } else {
        j["lhs"] = poly_to_json(c.lhs);
        j["rhs"] = poly_to_json(c.rhs);
        j["residual"] = poly_to_json(c.residual);
        j["holds"] = c.holds();
    }
    return j;
}

json skein_report_to_json(const SkeinReport& r) {
    json diagrams = json::array();
    for (const auto& s : r.diagrams)
        diagrams.push_back({{"name", s.name},
                            {"writhe", s.writhe},
                            {"components", s.components},
                            {"almost_classical", s.almost_classical},
                            {"checkerboard_colorable", s.checkerboard},
                            {"x", poly_to_json(s.x)},
                            {"f", poly_to_json(s.f)}});
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(skein_check_to_json(c));
    return json{{"crossing", r.crossing},
                {"relabeled", r.relabeled},
                {"diagrams", diagrams},
                {"checks", checks},
                {"all_hold", r.all_hold()}};
}

std::string emit_json(const json& j) { return j.dump(); }

}  // namespace vlink
