#include "arena2d/kinematics.hpp"

#include <stdexcept>

namespace arena2d {

VelocityCommand command_for_action(Action a) {
    switch (a) {
        case Action::Forward: return {0.15, 0.0};
        case Action::Backwards: return {-0.15, 0.0};
        case Action::Stop: return {0.0, 0.0};
        case Action::Left: return {0.15, 0.75};
        case Action::Right: return {0.15, -0.75};
        case Action::StrongLeft: return {0.15, 1.5};
        case Action::StrongRight: return {0.15, -1.5};
    }
    throw std::invalid_argument("command_for_action: invalid action");
}

VelocityCommand command_for_action(int action_index) {
    if (action_index < 0 || action_index >= kNumActions) {
        throw std::invalid_argument("command_for_action: action index out of range");
    }
    return command_for_action(static_cast<Action>(action_index));
}

const char* to_string(Action a) {
    switch (a) {
        case Action::Forward: return "forward";
        case Action::Backwards: return "backwards";
        case Action::Stop: return "stop";
        case Action::Left: return "left";
        case Action::Right: return "right";
        case Action::StrongLeft: return "strong_left";
        case Action::StrongRight: return "strong_right";
    }
    return "unknown";
}

Pose integrate_motion(const Pose& pose, const VelocityCommand& cmd, double dt) {
    if (!std::isfinite(pose.x) || !std::isfinite(pose.y) || !std::isfinite(pose.theta) ||
        !std::isfinite(cmd.linear) || !std::isfinite(cmd.angular) || !std::isfinite(dt)) {
        throw std::invalid_argument("integrate_motion: non-finite input");
    }
    if (dt <= 0.0) {
        throw std::invalid_argument("integrate_motion: dt must be > 0");
    }

    Pose out = pose;
    if (std::abs(cmd.angular) < 1e-9) {
        out.x += cmd.linear * dt * std::cos(pose.theta);
        out.y += cmd.linear * dt * std::sin(pose.theta);
        out.theta = normalize_angle(pose.theta);
    } else {
        const double radius = cmd.linear / cmd.angular;
        const double theta1 = pose.theta + cmd.angular * dt;
        out.x += radius * (std::sin(theta1) - std::sin(pose.theta));
        out.y += -radius * (std::cos(theta1) - std::cos(pose.theta));
        out.theta = normalize_angle(theta1);
    }
    return out;
}

}  // namespace arena2d
