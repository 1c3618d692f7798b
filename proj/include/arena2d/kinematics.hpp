#pragma once

#include "arena2d/geometry.hpp"

namespace arena2d {

struct VelocityCommand {
    double linear{0.0};   // m/s
    double angular{0.0};  // rad/s
};

/// The 7 discrete agent actions. Indices are fixed (table row order) so that
/// logs, checkpoints and replays agree on the encoding.
enum class Action : int {
    Forward = 0,
    Backwards = 1,
    Stop = 2,
    Left = 3,
    Right = 4,
    StrongLeft = 5,
    StrongRight = 6,
};

constexpr int kNumActions = 7;

/// Velocity pair for a discrete action:
///   Forward (0.15, 0), Backwards (-0.15, 0), Stop (0, 0),
///   Left (0.15, +0.75), Right (0.15, -0.75),
///   StrongLeft (0.15, +1.5), StrongRight (0.15, -1.5).
VelocityCommand command_for_action(Action a);
VelocityCommand command_for_action(int action_index);

const char* to_string(Action a);

/// Exact unicycle integration over dt: straight-line move when the angular
/// rate is (numerically) zero, otherwise a circular arc of radius
/// linear/angular. dt-invariant: two steps of dt/2 equal one step of dt.
/// Throws std::invalid_argument on non-finite inputs or dt <= 0.
Pose integrate_motion(const Pose& pose, const VelocityCommand& cmd, double dt);

}  // namespace arena2d
