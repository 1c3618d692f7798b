#pragma once

#include <cstddef>
#include <vector>

#include "arena2d/rng.hpp"

namespace arena2d {

struct Transition {
    std::vector<float> s;
    std::vector<float> s_next;
    int a{0};
    float r{0.0f};
    bool done{false};
};

/// Fixed-capacity FIFO ring of transitions with uniform sampling (with
/// replacement). Insertion beyond capacity evicts the oldest record.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void insert(Transition t);

    std::size_t size() const { return size_; }
    std::size_t capacity() const { return capacity_; }

    /// k-th oldest surviving transition, k in [0, size).
    const Transition& oldest(std::size_t k) const;

    /// Most recently inserted transition.
    const Transition& newest() const;

    /// Uniform batch of indices into the internal storage.
    std::vector<std::size_t> sample_indices(std::size_t batch, RngStream& rng) const;

    const Transition& at(std::size_t storage_index) const { return storage_[storage_index]; }

private:
    std::size_t capacity_;
    std::vector<Transition> storage_;
    std::size_t next_{0};  // slot for the next insert once full
    std::size_t size_{0};
};

}  // namespace arena2d
