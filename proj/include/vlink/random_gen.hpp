#ifndef VLINK_RANDOM_GEN_HPP
#define VLINK_RANDOM_GEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vlink/diagram.hpp"

namespace vlink {

/// One reproducible test instance: a braid word, the diagram it closes to,
/// and a chosen classical crossing. With `virtualized` >= 0 the diagram has
/// additionally been virtualized at that crossing (picked before `crossing`).
struct RandomInstance {
    std::string braid;
    int crossing = -1;     // classical crossing id to operate at
    int virtualized = -1;  // crossing id replaced by a virtual one, or -1
    Diagram diagram;
};

struct RandomOptions {
    int max_crossings = 12;
    bool allow_virtual_tokens = false;  // mix v<i> generators into the word
    bool virtualize_one = false;        // virtualize one classical crossing
};

/// Deterministic instance list for a seed (mt19937_64; identical on every
/// platform). Every instance has at least one classical crossing.
std::vector<RandomInstance> random_instances(std::uint64_t seed, int count,
                                             const RandomOptions& opts = {});

}  // namespace vlink

#endif
