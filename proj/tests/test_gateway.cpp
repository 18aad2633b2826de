#include <doctest.h>

#include <string>
#include <thread>

#include <json.hpp>

#include "simpy/gateway.hpp"
#include "simpy/python.hpp"
#include "simpy/simpy.hpp"

using namespace simpy;
using nlohmann::json;

namespace {

const std::string kPrompt =
    "Please fix this:\n\n```python\ndef f(a):\n    return a >= 1\n```\n\nand keep ```inline``` text.\n"
    "```\nuntagged\n```\n";

// Content with every python/simpy fence body removed.
std::string outside_code(const std::string& content) {
    std::string out;
    std::size_t pos = 0;
    for (const auto& s : extract_code_spans(content)) {
        out += content.substr(pos, s.tag_begin - pos);
        out += content.substr(s.tag_end, s.body_begin - s.tag_end);
        pos = s.body_end;
    }
    return out + content.substr(pos);
}

} // namespace

TEST_CASE("fenced spans are found by tag") {
    auto spans = extract_code_spans(kPrompt);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].language == "python");
    CHECK(spans[0].body == "def f(a):\n    return a >= 1\n");
    CHECK(kPrompt.substr(spans[0].tag_begin, spans[0].tag_end - spans[0].tag_begin) == "python");

    CHECK(extract_code_spans("```py\nx\n```").at(0).language == "python");
    CHECK(extract_code_spans("```simpy\nx=1\n```\n").at(0).language == "simpy");
    CHECK(extract_code_spans("```python\nunclosed\n").empty());
    CHECK(extract_code_spans("no code here").empty());
    CHECK(extract_code_spans("````python\n```\nstill inside\n````\n").at(0).body == "```\nstill inside\n");
}

TEST_CASE("gating converts only code and is reversible") {
    auto in = gate_text(kPrompt, GateDirection::Inbound);
    CHECK(in.spans_converted == 1);
    CHECK(in.warnings.empty());
    CHECK(in.content.find("```simpy\n<def_stmt>f a<block_start><return_stmt>a<ge>1<block_end>\n```") !=
          std::string::npos);
    CHECK(outside_code(in.content) == outside_code(kPrompt));

    auto again = gate_text(in.content, GateDirection::Inbound);
    CHECK(again.content == in.content);
    CHECK(again.spans_converted == 0);

    auto out = gate_text(in.content, GateDirection::Outbound);
    CHECK(out.content == kPrompt);
    CHECK(outside_code(out.content) == outside_code(kPrompt));
}

TEST_CASE("unconvertible spans stay as they are with a warning") {
    std::string text = "```python\ndef (:\n```\nok\n```python\nx = 1\n```\n";
    auto r = gate_text(text, GateDirection::Inbound);
    CHECK(r.spans_converted == 1);
    CHECK(r.warnings.size() == 1);
    CHECK(r.content.rfind("```python\ndef (:\n```\n", 0) == 0);
}

TEST_CASE("chat payload gating") {
    GatewayRequest req;
    req.model = "m";
    req.messages = {{"system", "be brief"}, {"user", kPrompt}};
    auto gated = gate_inbound(req);
    CHECK(gated.messages[0].content == "be brief");
    CHECK(gated.messages[1].content.find("```simpy") != std::string::npos);
    auto back = gate_outbound(gated);
    CHECK(back.messages[1].content == kPrompt);
}

TEST_CASE("gateway with an echo stub returns the original code") {
    Gateway gw(echo_upstream());
    json body = {{"model", "stub"}, {"temperature", 0}, {"messages", {{{"role", "user"}, {"content", kPrompt}}}}};
    auto reply = gw.handle_chat(body.dump());
    REQUIRE(reply.status == 200);
    auto j = json::parse(reply.body);
    std::string content = j["choices"][0]["message"]["content"];
    CHECK(content == kPrompt);
    CHECK(j.contains("simpy_gateway"));
    CHECK(gw.metrics().requests == 1);
    CHECK(json::parse(gw.metrics_json())["requests"] == 1);
}

TEST_CASE("gateway with a fixed stub converts the model's simpy") {
    Gateway gw(fixed_upstream("Here:\n```simpy\n<if_stmt>x<ge>1<block_start><pass_stmt><block_end>\n```\n"));
    json body = {{"model", "stub"}, {"messages", {{{"role", "user"}, {"content", "hi"}}}}};
    auto j = json::parse(gw.handle_chat(body.dump()).body);
    std::string content = j["choices"][0]["message"]["content"];
    CHECK(content == "Here:\n```python\nif x >= 1:\n    pass\n```\n");
    auto spans = extract_code_spans(content);
    REQUIRE(spans.size() == 1);
    CHECK(ast_equal(parse_python(spans[0].body), parse_simpy("<if_stmt>x<ge>1<block_start><pass_stmt><block_end>")));
}

TEST_CASE("gateway error handling") {
    Gateway gw(echo_upstream());
    CHECK(gw.handle_chat("not json").status == 400);
    CHECK(gw.handle_chat(R"({"model": "m"})").status == 400);
    Gateway failing([](const std::string&) { return HttpReply{503, "busy", {}}; });
    auto r = failing.handle_chat(R"({"model": "m", "messages": []})");
    CHECK(r.status == 503);
    CHECK(r.body == "busy");
}

TEST_CASE("gateway server answers over http") {
    ServeConfig cfg;
    cfg.port = 0;
    cfg.upstream = echo_upstream();
    GatewayServer server(cfg);
    int port = server.bind();
    CHECK(port > 0);
    std::thread t([&] { server.run(); });
    auto upstream = http_upstream("http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions", 5);
    json body = {{"model", "stub"}, {"messages", {{{"role", "user"}, {"content", kPrompt}}}}};
    auto reply = upstream(body.dump());
    server.stop();
    t.join();
    REQUIRE(reply.status == 200);
    CHECK(json::parse(reply.body)["choices"][0]["message"]["content"] == kPrompt);
    CHECK(http_upstream("http://127.0.0.1:1/v1/chat/completions", 1)("{}").status == 502);
}
