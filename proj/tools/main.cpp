// Command-line surface for the virtual-link invariant engine.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vlink/codec.hpp"
#include "vlink/diagram.hpp"
#include "vlink/invariant.hpp"
#include "vlink/numbering.hpp"
#include "vlink/poly.hpp"
#include "vlink/random_gen.hpp"

using nlohmann::json;
using namespace vlink;

namespace {

constexpr int kExitResidual = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

struct InputSource {
    std::string pd_file, gauss_file, braid, catalog_name;

    void attach(CLI::App* cmd) {
        auto* pd = cmd->add_option("--pd", pd_file, "PD code file");
        auto* gs = cmd->add_option("--gauss", gauss_file, "signed Gauss code file");
        auto* br = cmd->add_option("--braid", braid, "braid word, e.g. \"s=2: s1 s1 s1\"");
        auto* ct = cmd->add_option("--catalog", catalog_name, "catalog fixture name");
        pd->excludes(gs)->excludes(br)->excludes(ct);
        gs->excludes(br)->excludes(ct);
        br->excludes(ct);
    }

    Diagram load() const {
        int given = !pd_file.empty() + !gauss_file.empty() + !braid.empty() + !catalog_name.empty();
        if (given != 1)
            throw std::invalid_argument("exactly one of --pd/--gauss/--braid/--catalog is required");
        if (!pd_file.empty()) return parse_pd(slurp(pd_file));
        if (!gauss_file.empty()) return realize_gauss(parse_gauss(slurp(gauss_file)));
        if (!braid.empty()) return parse_braid(braid);
        return catalog(catalog_name);
    }

    static std::string slurp(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open file: " + path);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
};

CutSystem pick_cuts(const Diagram& d, const std::string& which, int virtual_id) {
    if (which == "empty") return {};
    if (which == "canonical") return canonical_cut_system(d);
    if (which == "around-virtual") {
        if (virtual_id < 0) {
            if (d.virtual_crossings().size() != 1)
                throw std::invalid_argument(
                    "--cuts around-virtual needs --virtual-id when the diagram does not have "
                    "exactly one virtual crossing");
            virtual_id = d.virtual_crossings().front().id;
        }
        return around_virtual_cut_system(d, virtual_id);
    }
    throw std::invalid_argument("unknown cut system choice: " + which);
}

int run_invariant(const InputSource& src, bool as_json, const BracketOptions& opts) {
    Diagram d = src.load();
    MultiPoly x = x_polynomial(d, opts);
    MultiPoly f = x.substitute_d_one();
    bool ac = is_almost_classical_diagram(d);
    bool cc = is_checkerboard_colorable(d);
    if (as_json) {
        json j{{"x", poly_to_json(x)},
               {"f", poly_to_json(f)},
               {"writhe", writhe(d)},
               {"components", components(d)},
               {"classical_crossings", d.classical().size()},
               {"virtual_crossings", d.virtual_crossings().size()},
               {"almost_classical", ac},
               {"checkerboard_colorable", cc}};
        std::cout << emit_json(j) << "\n";
    } else {
        std::cout << "X = " << x.pretty() << "\n"
                  << "f = " << f.pretty() << "\n"
                  << "writhe = " << writhe(d) << "\n"
                  << "components = " << components(d) << "\n"
                  << "almost_classical = " << (ac ? "true" : "false") << "\n"
                  << "checkerboard_colorable = " << (cc ? "true" : "false") << "\n";
    }
    return 0;
}

int run_skein(const InputSource& src, int crossing, bool as_json, const BracketOptions& opts) {
    Diagram d = src.load();
    SkeinReport rep = skein_report(d, crossing, opts);
    if (as_json) {
        std::cout << emit_json(skein_report_to_json(rep)) << "\n";
    } else {
        std::cout << "crossing " << rep.crossing << (rep.relabeled ? " (negative; roles relabeled)" : "")
                  << "\n";
        for (const auto& s : rep.diagrams) {
            std::cout << s.name << ": X = " << s.x.pretty() << "\n"
                      << std::string(s.name.size(), ' ') << "  f = " << s.f.pretty()
                      << "  writhe=" << s.writhe << " components=" << s.components
                      << (s.almost_classical ? " almost-classical" : "")
                      << (s.checkerboard ? " colorable" : "") << "\n";
        }
        for (const auto& c : rep.checks) {
            std::cout << c.identity << "\n";
            if (!c.applicable) {
                std::cout << "  gated: precondition unmet (" << c.gate_reason << ")\n";
            } else {
                std::cout << "  lhs = " << c.lhs.pretty() << "\n"
                          << "  rhs = " << c.rhs.pretty() << "\n"
                          << "  residual = " << c.residual.pretty()
                          << (c.holds() ? "  [ok]" : "  [FAIL]") << "\n";
            }
        }
    }
    return rep.all_hold() ? 0 : kExitResidual;
}

int run_numbering(const InputSource& src, int modulus, const std::string& cuts_kind,
                  int virtual_id, bool as_json) {
    Diagram d = src.load();
    CutSystem cuts = pick_cuts(d, cuts_kind, virtual_id);
    NumberingResult res = solve_numbering(d, cuts, modulus);
    if (as_json) {
        json j{{"cut_system", cut_system_to_json(cuts)}, {"numbering", numbering_to_json(res)}};
        std::cout << emit_json(j) << "\n";
        return 0;
    }
    auto arcs = semi_arcs(d);
    std::cout << "semi-arcs: " << arcs.size() << ", cut points: " << cuts.cuts.size() << "\n";
    for (const auto& q : cuts.cuts)
        std::cout << "  cut on arc " << q.arc << " edge " << q.edge << " sign "
                  << (q.sign > 0 ? "+1" : "-1") << "\n";
    if (res.solvable()) {
        std::cout << "numbering (mod " << modulus << "):\n";
        for (size_t a = 0; a < res.numbering->values.size(); ++a) {
            std::cout << "  arc " << a << ":";
            for (int v : res.numbering->values[a]) std::cout << " " << v;
            std::cout << "\n";
        }
    } else {
        std::cout << "unsolvable; cycle with offset " << res.witness->offset << ":";
        for (const auto& s : res.witness->cycle) std::cout << " (" << s.arc << "," << s.seg << ")";
        std::cout << "\n";
    }
    return 0;
}

int run_state_table(const InputSource& src, const std::string& cuts_kind, int virtual_id,
                    bool as_json, const BracketOptions& opts) {
    Diagram d = src.load();
    CutSystem cuts = pick_cuts(d, cuts_kind, virtual_id);
    enumerate_states(
        d, cuts,
        [&](const StateReport& s) {
            if (as_json) {
                std::cout << emit_json(state_to_json(s)) << "\n";
                return;
            }
            std::cout << "#" << s.index << " splices=" << (s.splices.empty() ? "-" : s.splices)
                      << " natural=" << s.a_minus_b << " loops=" << s.loop_count << " iota=[";
            for (size_t i = 0; i < s.loops.size(); ++i)
                std::cout << (i ? "," : "") << s.loops[i].iota;
            std::cout << "] mono=" << s.monomial.pretty() << "\n";
        },
        opts);
    return 0;
}

int run_random(std::uint64_t seed, int count, const RandomOptions& ropts, bool as_json) {
    auto insts = random_instances(seed, count, ropts);
    for (const auto& in : insts) {
        if (as_json) {
            json j{{"braid", in.braid}, {"crossing", in.crossing}};
            if (in.virtualized >= 0) j["virtualized"] = in.virtualized;
            std::cout << emit_json(j) << "\n";
        } else {
            std::cout << in.braid << "  crossing=" << in.crossing;
            if (in.virtualized >= 0) std::cout << " virtualized=" << in.virtualized;
            std::cout << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multivariable polynomial invariants of virtual link diagrams"};
    app.require_subcommand(1);
    app.fallthrough();

    BracketOptions opts;
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON output");
    app.add_option("--max-crossings", opts.max_crossings, "state-sum crossing cap")
        ->capture_default_str();
    app.add_option("--threads", opts.threads, "worker threads (0 = auto)");

    InputSource src;
    int crossing = -1;
    int modulus = 0;
    std::string cuts_kind = "canonical";
    int virtual_id = -1;
    std::uint64_t seed = 0;
    int count = 10;
    RandomOptions ropts;

    auto* inv = app.add_subcommand("invariant", "compute X, f, writhe and flags");
    src.attach(inv);

    auto* sk = app.add_subcommand("skein", "verify the three skein identities at a crossing");
    src.attach(sk);
    sk->add_option("--crossing", crossing, "classical crossing id")->required();

    bool around_virtual = false;
    auto* num = app.add_subcommand("numbering", "cut system and Alexander numbering");
    src.attach(num);
    num->add_option("--mod", modulus, "modulus (0 = integers)");
    num->add_option("--cuts", cuts_kind, "canonical | empty | around-virtual")
        ->capture_default_str();
    num->add_flag("--around-virtual", around_virtual, "shorthand for --cuts around-virtual");
    num->add_option("--virtual-id", virtual_id, "virtual crossing for around-virtual cuts");

    auto* st = app.add_subcommand("state-table", "stream the cut point states");
    src.attach(st);
    st->add_option("--cuts", cuts_kind, "canonical | empty | around-virtual")
        ->capture_default_str();
    st->add_flag("--around-virtual", around_virtual, "shorthand for --cuts around-virtual");
    st->add_option("--virtual-id", virtual_id, "virtual crossing for around-virtual cuts");

    auto* rnd = app.add_subcommand("random", "emit seeded reproducible braid instances");
    rnd->add_option("--seed", seed, "PRNG seed")->required();
    rnd->add_option("--count", count, "number of instances")->capture_default_str();
    rnd->add_option("--max-crossings", ropts.max_crossings, "max braid letters");
    rnd->add_flag("--virtual-tokens", ropts.allow_virtual_tokens, "mix v<i> generators in");
    rnd->add_flag("--virtualize-one", ropts.virtualize_one, "virtualize one classical crossing");

    CLI11_PARSE(app, argc, argv);
    if (around_virtual) cuts_kind = "around-virtual";

    try {
        if (inv->parsed()) return run_invariant(src, as_json, opts);
        if (sk->parsed()) return run_skein(src, crossing, as_json, opts);
        if (num->parsed()) return run_numbering(src, modulus, cuts_kind, virtual_id, as_json);
        if (st->parsed()) return run_state_table(src, cuts_kind, virtual_id, as_json, opts);
        if (rnd->parsed()) return run_random(seed, count, ropts, as_json);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResidual;
    }
    return 0;
}
