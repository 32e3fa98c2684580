// Breadth-first closure of a matrix generating set, with a spanning
// tree back to the identity.  Element keys are 64-bit packings, so the
// traversal order (and therefore every index in the table) is a pure
// function of the generator list.

#pragma once

#include "covollab/truncring.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace covollab::localgrp {

struct GroupTable {
    TruncRing ring;
    unsigned n = 0;
    std::vector<TruncMat> generators;
    std::vector<uint64_t> keys;                     // BFS order, keys[0] = identity
    std::unordered_map<uint64_t, uint32_t> index;   // key -> position
    std::vector<uint32_t> parent;                   // BFS tree, parent[0] = 0
    std::vector<uint16_t> parent_gen;               // generator applied: parent * gen = element
    bool complete = false;                          // false when the bound was hit

    size_t size() const { return keys.size(); }
    TruncMat element(uint32_t i) const { return tm_unpack(ring, n, keys[i]); }
    // word of generator indices multiplying to element i (identity: empty)
    std::vector<uint16_t> word(uint32_t i) const;
};

// Closes the generators under multiplication, up to max_elements.  When
// the bound trips, `complete` is false and the table holds the elements
// found so far.
GroupTable bfs_closure(const std::vector<TruncMat>& generators, uint64_t max_elements);

// COVOLLAB_MAX_ELEMENTS, default 10000000.
uint64_t enumeration_bound_from_env();

}  // namespace covollab::localgrp
