#include "arena2d/replay_buffer.hpp"

#include <stdexcept>

namespace arena2d {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) {
        throw std::invalid_argument("ReplayBuffer: capacity must be > 0");
    }
}

void ReplayBuffer::insert(Transition t) {
    if (size_ < capacity_) {
        storage_.push_back(std::move(t));
        ++size_;
    } else {
        storage_[next_] = std::move(t);
        next_ = (next_ + 1) % capacity_;
    }
}

const Transition& ReplayBuffer::oldest(std::size_t k) const {
    if (k >= size_) {
        throw std::out_of_range("ReplayBuffer::oldest: index out of range");
    }
    if (size_ < capacity_) {
        return storage_[k];
    }
    return storage_[(next_ + k) % capacity_];
}

const Transition& ReplayBuffer::newest() const { return oldest(size_ - 1); }

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t batch, RngStream& rng) const {
    if (size_ == 0) {
        throw std::logic_error("ReplayBuffer: cannot sample from an empty buffer");
    }
    std::vector<std::size_t> indices(batch);
    for (std::size_t& idx : indices) {
        idx = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(size_)));
    }
    return indices;
}

}  // namespace arena2d
