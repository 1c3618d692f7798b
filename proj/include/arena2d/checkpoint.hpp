#pragma once

#include <cstdint>
#include <string>

#include "arena2d/network.hpp"

namespace arena2d {

/// Binary checkpoint layout (all integers and floats little-endian):
///   magic "A2DQ" | version u16 | net tensor count u32 | tensor records |
///   adam tensor count u32 | tensor records | step_count u64 |
///   lr, beta1, beta2, eps f64 | dropout_rate f64 | config digest u64
/// Tensor record: name length u32 | name bytes | rank u32 | dims u32[rank] |
/// values f32[prod(dims)].
constexpr std::uint16_t kCheckpointVersion = 1;

struct Checkpoint {
    QNetwork net;
    AdamState adam;
    std::uint64_t config_digest{0};
};

/// FNV-1a digest of the resolved configuration text stored in checkpoints.
std::uint64_t config_digest(const std::string& text);

/// Write the checkpoint; round trips bit-exactly. Throws std::runtime_error
/// when the path is not writable.
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);

/// Read a checkpoint. Throws std::runtime_error on a corrupt or truncated
/// file or a version/magic mismatch.
Checkpoint load_checkpoint(const std::string& path);

/// Validate that a checkpoint drives an environment with the given
/// observation width; throws std::runtime_error on mismatch.
void require_input_width(const QNetwork& net, int expected);

}  // namespace arena2d
