#pragma once

#include <deque>
#include <utility>

#include "relaysec/channel.hpp"
#include "relaysec/errors.hpp"

namespace relaysec {

// One stored received block together with the S->R channel snapshot that
// produced it, so transmit-phase rate bookkeeping can reference the true
// source-hop channel of the forwarded data.
struct BufferEntry {
  CVec y;                       // received block, n_m x 1 (noisy)
  CVec symbols;                 // the known transmitted symbols of the block
  LinkRealization h_sr_snapshot;
  long slot_index = 0;
};

// Finite FIFO relay buffer. Occupancy is counted in symbols; each stored
// entry contributes its block length.
class BufferState {
 public:
  BufferState() = default;
  explicit BufferState(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw ValidationError("buffer capacity must be >= 1");
  }

  int capacity() const { return capacity_; }
  int occupancy() const { return occupancy_; }
  bool empty() const { return entries_.empty(); }
  const std::deque<BufferEntry>& entries() const { return entries_; }
  const BufferEntry& front() const {
    if (entries_.empty()) throw BufferUnderflowError("buffer is empty");
    return entries_.front();
  }

  void push(BufferEntry entry) {
    const int n = static_cast<int>(entry.y.size());
    if (occupancy_ + n > capacity_)
      throw BufferOverflowError("push would exceed buffer capacity");
    occupancy_ += n;
    entries_.push_back(std::move(entry));
  }

  BufferEntry pop() {
    if (entries_.empty())
      throw BufferUnderflowError("pop from an empty buffer");
    BufferEntry entry = std::move(entries_.front());
    entries_.pop_front();
    occupancy_ -= static_cast<int>(entry.y.size());
    return entry;
  }

 private:
  int capacity_ = 1;
  int occupancy_ = 0;
  std::deque<BufferEntry> entries_;
};

// Reception is feasible iff a whole n_m-symbol block still fits. This
// coincides with the "buffer not full" rule when n_m = 1 and generalizes it
// safely otherwise.
inline bool can_receive(const BufferState& buf, int n_m) {
  return buf.occupancy() + n_m <= buf.capacity();
}

// Transmission is feasible iff a whole block is available.
inline bool can_transmit(const BufferState& buf, int n_m) {
  return buf.occupancy() >= n_m;
}

}  // namespace relaysec
