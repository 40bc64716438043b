#include "vlink/random_gen.hpp"

#include <random>
#include <sstream>

#include "vlink/codec.hpp"

namespace vlink {

std::vector<RandomInstance> random_instances(std::uint64_t seed, int count,
                                             const RandomOptions& opts) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) {  // inclusive
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };

    std::vector<RandomInstance> out;
    while (static_cast<int>(out.size()) < count) {
        int strands = pick(2, 4);
        int length = pick(3, opts.max_crossings);
        std::ostringstream word;
        word << "s=" << strands << ":";
        int classical = 0;
        for (int t = 0; t < length; ++t) {
            int i = pick(1, strands - 1);
            int kind = pick(0, opts.allow_virtual_tokens ? 2 : 1);
            if (kind == 2) {
                word << " v" << i;
            } else {
                word << (kind == 0 ? " s" : " S") << i;
                ++classical;
            }
        }
        if (classical == 0) continue;

        RandomInstance inst;
        inst.braid = word.str();
        inst.diagram = parse_braid(inst.braid);

        auto classical_ids = [&] {
            std::vector<int> ids;
            for (const auto& c : inst.diagram.classical()) ids.push_back(c.id);
            return ids;
        };

        if (opts.virtualize_one) {
            auto ids = classical_ids();
            inst.virtualized = ids[pick(0, static_cast<int>(ids.size()) - 1)];
            inst.diagram = virtualize(inst.diagram, inst.virtualized);
        }
        auto ids = classical_ids();
        if (ids.empty()) continue;  // virtualized away the only crossing
        inst.crossing = ids[pick(0, static_cast<int>(ids.size()) - 1)];
        out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace vlink
