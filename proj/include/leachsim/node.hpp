#pragma once

#include "leachsim/geometry.hpp"

namespace leachsim {

/// Route / membership sentinel standing in for the base station.
inline constexpr int kBaseStation = -1;
/// Membership sentinel for a node that found no cluster head this round.
inline constexpr int kUnclustered = -1;

enum class Role {
    Unassigned,
    Member,
    ClusterHead,
};

struct Node {
    int id = 0;
    Position pos;
    double residual_energy = 0.0;
    double initial_energy = 0.0;
    bool is_solar = false;
    bool alive = true;
    Role role = Role::Unassigned;
    /// Still in the rotation set G for the current epoch.
    bool eligible = true;
    /// Cluster-head id; a head refers to itself.
    int cluster_of = kUnclustered;

    // Mobility state: current speed (redrawn each epoch) and random waypoint.
    double speed = 0.0;
    Position waypoint;
    bool has_waypoint = false;
};

/// Round/epoch bookkeeping. Eligibility resets and the meta-round counter
/// both roll over every epoch_len rounds.
struct EpochState {
    long round = 0;
    long epoch_len = 10;
    /// Cluster-head elections since the start of the current meta-round.
    long chs_this_metaround = 0;
    long metaround_start = 0;
};

} // namespace leachsim
