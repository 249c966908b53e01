#include <catch2/catch_amalgamated.hpp>

#include "fppn/channel.hpp"

using namespace fppn;

namespace {

ChannelSpec blackboard() {
  return {"bb", ChannelKind::blackboard, "w", "r", 8, {}, true};
}

ChannelSpec mailbox(int length) {
  return {"mb", ChannelKind::mailbox, "w", "r", 8, length, true};
}

}  // namespace

TEST_CASE("a fresh channel is empty") {
  const auto bb = ChannelState::initial(blackboard());
  CHECK_FALSE(channel_read(bb, blackboard()).value.has_value());

  const auto mb = ChannelState::initial(mailbox(2));
  CHECK_FALSE(channel_read(mb, mailbox(2)).value.has_value());
}

TEST_CASE("a blackboard can be read many times without losing its value") {
  const auto spec = blackboard();
  auto st = ChannelState::initial(spec);
  st = channel_write(st, spec, 42).state;
  for (int i = 0; i < 3; ++i) {
    const auto r = channel_read(st, spec);
    CHECK(r.value == 42);
    st = r.state;
  }
  CHECK(channel_read(st, spec).value == 42);
}

TEST_CASE("a blackboard write overwrites the previous value") {
  const auto spec = blackboard();
  auto st = ChannelState::initial(spec);
  CHECK(channel_write(st, spec, 1).status == WriteStatus::accepted);
  st = channel_write(st, spec, 1).state;
  const auto w = channel_write(st, spec, 2);
  CHECK(w.status == WriteStatus::accepted);
  CHECK(channel_read(w.state, spec).value == 2);
}

TEST_CASE("a mailbox delivers values first in first out") {
  const auto spec = mailbox(3);
  auto st = ChannelState::initial(spec);
  for (Value v : {10, 20, 30}) {
    const auto w = channel_write(st, spec, v);
    CHECK(w.status == WriteStatus::accepted);
    st = w.state;
  }
  for (Value v : {10, 20, 30}) {
    const auto r = channel_read(st, spec);
    CHECK(r.value == v);
    st = r.state;
  }
  CHECK_FALSE(channel_read(st, spec).value.has_value());
}

TEST_CASE("a full mailbox drops the write and keeps its contents") {
  const auto spec = mailbox(1);
  auto st = ChannelState::initial(spec);
  st = channel_write(st, spec, 7).state;
  const auto w = channel_write(st, spec, 8);
  CHECK(w.status == WriteStatus::dropped);
  CHECK(w.state == st);
  CHECK(channel_read(w.state, spec).value == 7);
}

TEST_CASE("mailbox capacity bounds the queue exactly") {
  const auto spec = mailbox(2);
  auto st = ChannelState::initial(spec);
  CHECK(channel_write(st, spec, 1).status == WriteStatus::accepted);
  st = channel_write(st, spec, 1).state;
  st = channel_write(st, spec, 2).state;
  CHECK(st.queue.size() == 2);
  CHECK(channel_write(st, spec, 3).status == WriteStatus::dropped);
  // popping one frees one slot
  st = channel_read(st, spec).state;
  CHECK(channel_write(st, spec, 3).status == WriteStatus::accepted);
}

TEST_CASE("an empty mailbox read is non-blocking and returns nothing") {
  const auto spec = mailbox(2);
  auto st = ChannelState::initial(spec);
  const auto r = channel_read(st, spec);
  CHECK_FALSE(r.value.has_value());
  CHECK(r.state == st);
}

TEST_CASE("reads and writes never mutate their input state") {
  const auto spec = mailbox(2);
  const auto st = ChannelState::initial(spec);
  (void)channel_write(st, spec, 5);
  CHECK(st.queue.empty());

  const auto filled = channel_write(st, spec, 5).state;
  (void)channel_read(filled, spec);
  CHECK(filled.queue.size() == 1);
}

TEST_CASE("state and spec ids must agree") {
  const auto st = ChannelState::initial(mailbox(1));
  CHECK_THROWS_AS(channel_write(st, blackboard(), 1), error);
  CHECK_THROWS_AS(channel_read(st, blackboard()), error);
}
