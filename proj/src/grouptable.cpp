#include "covollab/grouptable.hpp"

#include <algorithm>
#include <cstdlib>

namespace covollab::localgrp {

std::vector<uint16_t> GroupTable::word(uint32_t i) const {
    std::vector<uint16_t> w;
    while (i != 0) {
        w.push_back(parent_gen[i]);
        i = parent[i];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

GroupTable bfs_closure(const std::vector<TruncMat>& generators, uint64_t max_elements) {
    if (generators.empty()) throw precondition_error("empty generating set");
    GroupTable t;
    t.ring = generators[0].R;
    t.n = generators[0].n;
    for (const TruncMat& g : generators)
        if (!(g.R == t.ring) || g.n != t.n)
            throw precondition_error("generators live over different rings");
    t.generators = generators;
    if (!tm_packable(t.ring, t.n))
        throw precondition_error("matrix shape too large for 64-bit enumeration keys");

    TruncMat id = tm_identity(t.ring, t.n);
    t.keys.push_back(tm_pack(id));
    t.index.emplace(t.keys[0], 0);
    t.parent.push_back(0);
    t.parent_gen.push_back(0);

    t.complete = true;
    for (uint32_t head = 0; head < t.keys.size(); ++head) {
        TruncMat g = t.element(head);
        for (uint16_t s = 0; s < generators.size(); ++s) {
            uint64_t key = tm_pack(tm_mul(g, generators[s]));
            if (t.index.emplace(key, uint32_t(t.keys.size())).second) {
                if (t.keys.size() >= max_elements) {
                    t.complete = false;
                    return t;
                }
                t.keys.push_back(key);
                t.parent.push_back(head);
                t.parent_gen.push_back(s);
            }
        }
    }
    return t;
}

uint64_t enumeration_bound_from_env() {
    if (const char* s = std::getenv("COVOLLAB_MAX_ELEMENTS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10000000;
}

}  // namespace covollab::localgrp
