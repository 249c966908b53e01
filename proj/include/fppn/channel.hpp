#pragma once

#include <deque>
#include <optional>
#include <string>

#include "fppn/model.hpp"

namespace fppn {

/// Runtime contents of one channel. Mailboxes hold a bounded queue,
/// blackboards the last written value.
struct ChannelState {
  std::string channel_id;
  std::deque<Value> queue;
  std::optional<Value> last;

  static ChannelState initial(const ChannelSpec& spec) {
    return ChannelState{spec.id, {}, {}};
  }

  bool operator==(const ChannelState&) const = default;
};

enum class WriteStatus { accepted, dropped };

struct WriteResult {
  ChannelState state;
  WriteStatus status;
};

struct ReadResult {
  std::optional<Value> value;
  ChannelState state;
};

namespace detail {

inline void require_match(const ChannelState& state, const ChannelSpec& spec) {
  if (state.channel_id != spec.id) {
    throw error("channel state " + state.channel_id +
                " does not match spec " + spec.id);
  }
}

}  // namespace detail

/// Non-blocking write. Blackboards always accept and overwrite; a full
/// mailbox drops the value and keeps its committed contents.
inline WriteResult channel_write(const ChannelState& state,
                                 const ChannelSpec& spec, Value v) {
  detail::require_match(state, spec);
  ChannelState next = state;
  if (spec.kind == ChannelKind::blackboard) {
    next.last = v;
    return {next, WriteStatus::accepted};
  }
  if (static_cast<int>(next.queue.size()) >= spec.length.value_or(1)) {
    return {next, WriteStatus::dropped};
  }
  next.queue.push_back(v);
  return {next, WriteStatus::accepted};
}

/// Non-blocking read. Blackboards keep their value and can be read many
/// times; mailboxes pop the head. Returns absent when nothing is readable.
inline ReadResult channel_read(const ChannelState& state,
                               const ChannelSpec& spec) {
  detail::require_match(state, spec);
  ChannelState next = state;
  if (spec.kind == ChannelKind::blackboard) {
    return {state.last, next};
  }
  if (next.queue.empty()) {
    return {std::nullopt, next};
  }
  Value head = next.queue.front();
  next.queue.pop_front();
  return {head, next};
}

}  // namespace fppn
