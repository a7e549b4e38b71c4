#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "hybridlog/errors.hpp"
#include "hybridlog/feedback.hpp"

using namespace hybridlog;

namespace {

MergeQuery query(std::uint64_t id) {
  MergeQuery q;
  q.query_id = id;
  q.group_id = 4;
  q.current_template = "sudo user=root <*int>";
  q.incoming_identifier = "sudo ls <*int>";
  q.template_tokens = {"sudo", "user=root", "<*int>"};
  q.identifier_tokens = {"sudo", "ls", "<*int>"};
  q.changed_positions = {{1, "user=root", "<*>"}};
  q.similarity = 2.0 / 3.0;
  q.message_id = 9;
  q.group_first_member = 2;
  return q;
}

}  // namespace

TEST_SUITE("feedback") {

TEST_CASE("decisions parse from their upper-case names") {
  CHECK(parse_decision("ACCEPT") == Decision::Accept);
  CHECK(parse_decision("REJECT") == Decision::Reject);
  CHECK_FALSE(parse_decision("reject"));
  CHECK_FALSE(parse_decision("maybe"));
  CHECK(to_string(Decision::Accept) == "ACCEPT");
}

TEST_CASE("scripted channel answers by query id") {
  auto ch = ScriptedChannel::parse("# answers\n1 ACCEPT\n\n2 REJECT\n");
  CHECK(ch.ask(query(1)) == Decision::Accept);
  CHECK(ch.ask(query(2)) == Decision::Reject);
  CHECK_THROWS_AS(ch.ask(query(3)), ChannelError);
}

TEST_CASE("scripted channel rejects bad content and missing files") {
  CHECK_THROWS_AS(ScriptedChannel::parse("1 YES\n"), ConfigError);
  CHECK_THROWS_AS(ScriptedChannel::parse("x ACCEPT\n"), ConfigError);
  CHECK_THROWS_AS(ScriptedChannel::parse("1\n"), ConfigError);
  CHECK_THROWS_AS(ScriptedChannel::load(std::filesystem::temp_directory_path() / "no_such_script.txt"), IoError);
}

TEST_CASE("tty channel reads a/r and fails at end of input") {
  std::istringstream in("x\na\nreject\n");
  std::ostringstream out;
  TtyChannel ch(in, out);
  CHECK(ch.ask(query(1)) == Decision::Accept);
  CHECK(ch.ask(query(2)) == Decision::Reject);
  CHECK_THROWS_AS(ch.ask(query(3)), ChannelError);
  CHECK(out.str().find("user=root") != std::string::npos);
}

TEST_CASE("oracle accepts iff both sides share a ground-truth group") {
  OracleChannel ch({{2, "E1"}, {9, "E1"}, {10, "E2"}});
  CHECK(ch.ask(query(1)) == Decision::Accept);
  auto q = query(2);
  q.message_id = 10;
  CHECK(ch.ask(q) == Decision::Reject);
  q.message_id = 99;
  CHECK_THROWS_AS(ch.ask(q), ChannelError);
}

TEST_CASE("recording channel replays as a script") {
  OracleChannel oracle({{2, "E1"}, {9, "E1"}, {10, "E2"}});
  RecordingChannel rec(oracle);
  rec.ask(query(1));
  auto q = query(2);
  q.message_id = 10;
  rec.ask(q);
  CHECK(rec.log().size() == 2);
  auto replay = ScriptedChannel::parse(rec.script());
  CHECK(replay.ask(query(1)) == Decision::Accept);
  CHECK(replay.ask(query(2)) == Decision::Reject);
}

TEST_CASE("query diff shows aligned rows and the changed cell") {
  const auto text = format_query(query(1));
  CHECK(text.find("sudo") != std::string::npos);
  CHECK(text.find("user=root") != std::string::npos);
  CHECK(text.find("ls") != std::string::npos);
}

}  // TEST_SUITE
