#ifndef VLINK_CODEC_HPP
#define VLINK_CODEC_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vlink/diagram.hpp"
#include "vlink/invariant.hpp"
#include "vlink/numbering.hpp"
#include "vlink/poly.hpp"

namespace vlink {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position(position) {}
    size_t position = 0;
};

/// PD grammar: ';'-separated records.
///   X[a,b,c,d] +   classical crossing, ports (o_in, o_out, u_in, u_out)
///   X[a,b,c,d] -
///   V[a,b,c,d]     virtual crossing, ports (a_in, a_out, b_in, b_out)
///   L              crossingless free loop
/// Each integer edge label appears exactly once in an out slot and once in
/// an in slot.
Diagram parse_pd(const std::string& text);
std::string emit_pd(const Diagram& d);

struct GaussPass {
    bool over = false;
    int label = 0;
    int sign = +1;
};

struct SignedGaussCode {
    std::vector<std::vector<GaussPass>> components;
};

/// Gauss grammar: whitespace-separated tokens O<k><sign> / U<k><sign>,
/// components separated by '/'.
SignedGaussCode parse_gauss(const std::string& text);

/// Deterministic realization: crossings sit at the first pass of their
/// label along the walk; the second pass detours to the crossing site and
/// every detour-detour conflict becomes a virtual crossing. The classical
/// crossing set matches the code exactly.
Diagram realize_gauss(const SignedGaussCode& code);

/// Braid grammar: "s=<n>:" prefix, then tokens s<i> (positive crossing),
/// S<i> (negative crossing) and v<i> (virtual crossing), 1 <= i < n.
/// Returns the closure of the braid; unused strands close into free loops.
Diagram parse_braid(const std::string& text);

/// Fixed fixture diagrams: unknot, curl+, curl-, hopf+, trefoil,
/// trefoil_mirror, figure8, vtrefoil, paper_triple_plus, paper_triple_minus,
/// paper_triple_virtual.
Diagram catalog(const std::string& name);
std::vector<std::string> catalog_names();

/// The figure-eight crossing whose skein triple reproduces the published
/// X values (paper_triple_* are built there).
int figure8_triple_crossing();

// Canonical JSON forms (object keys sorted, arrays in canonical order).
nlohmann::json poly_to_json(const MultiPoly& p);
nlohmann::json cut_system_to_json(const CutSystem& c);
nlohmann::json numbering_to_json(const NumberingResult& r);
nlohmann::json state_to_json(const StateReport& s);
nlohmann::json skein_check_to_json(const SkeinCheck& c);
nlohmann::json skein_report_to_json(const SkeinReport& r);

/// Whitespace-stable canonical rendering shared by every command.
std::string emit_json(const nlohmann::json& j);

}  // namespace vlink

#endif
