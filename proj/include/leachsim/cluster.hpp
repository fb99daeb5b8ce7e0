#pragma once

#include "leachsim/node.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace leachsim {

/// One round's cluster structure: elected heads, member-to-head map and the
/// per-head next hop toward the base station (kBaseStation for a direct
/// link). Route chains are acyclic and terminate at the base station.
struct ClusterAssignment {
    std::vector<int> ch_ids; // sorted ascending
    std::map<int, int> membership;
    std::map<int, int> routes;

    bool is_ch(int id) const {
        return std::binary_search(ch_ids.begin(), ch_ids.end(), id);
    }

    int ch_of(int member_id) const {
        auto it = membership.find(member_id);
        return it == membership.end() ? kUnclustered : it->second;
    }

    void clear() {
        ch_ids.clear();
        membership.clear();
        routes.clear();
    }
};

} // namespace leachsim
