#pragma once

// Converts fenced code blocks in chat traffic: Python -> SimPy towards the
// model, SimPy -> Python back to the client.

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simpy/grammar_table.hpp"

namespace simpy {

struct CodeSpan {
    /// Byte range of the whole fence, backticks included.
    std::size_t begin = 0;
    std::size_t end = 0;
    /// Byte range of the language tag in the opening line.
    std::size_t tag_begin = 0;
    std::size_t tag_end = 0;
    /// Byte range of the body (between the fence lines).
    std::size_t body_begin = 0;
    std::size_t body_end = 0;
    /// Lower-cased tag; "py" is reported as "python".
    std::string language;
    std::string body;
};

/// Closed triple-backtick fences tagged `python` or `simpy`, in order.
/// Untagged or otherwise tagged fences and unclosed fences are skipped.
std::vector<CodeSpan> extract_code_spans(std::string_view content);

enum class GateDirection : std::uint8_t { Inbound, Outbound };

struct GateResult {
    std::string content;
    std::size_t spans_converted = 0;
    /// One entry per span left unconverted.
    std::vector<std::string> warnings;
    double micros = 0;
};

/// Inbound converts `python` fences to `simpy`; outbound the reverse. Only
/// the tag and body bytes of converted fences change. A span that fails to
/// convert is kept as is and reported in `warnings`.
GateResult gate_text(std::string_view content, GateDirection direction, const GrammarTable& table = default_table());

struct ChatMessage {
    std::string role;
    std::string content;
};

/// Chat-completion shaped payload. Request: `messages` are the prompt.
/// Response: `messages` are the choices' messages. Every other JSON field is
/// carried opaquely in `extra_json`.
struct ChatPayload {
    std::string model;
    std::vector<ChatMessage> messages;
    std::string extra_json = "{}";
    std::vector<std::string> warnings;
    double gate_micros = 0;
};
using GatewayRequest = ChatPayload;
using GatewayResponse = ChatPayload;

GatewayRequest gate_inbound(const GatewayRequest& request, const GrammarTable& table = default_table());
GatewayResponse gate_outbound(const GatewayResponse& response, const GrammarTable& table = default_table());

struct HttpReply {
    int status = 200;
    std::string body;
    std::vector<std::pair<std::string, std::string>> headers;
};

/// The model behind the gateway: receives the gated request body (JSON) and
/// returns its reply.
using Upstream = std::function<HttpReply(const std::string& request_body)>;

/// Replies with the last message of the request, unchanged.
Upstream echo_upstream();
/// Always replies with `content` as the assistant message.
Upstream fixed_upstream(std::string content);
/// Forwards to a chat-completion endpoint, e.g. http://host:port/v1/chat/completions.
/// Connection failures yield 502.
Upstream http_upstream(const std::string& url, int timeout_seconds = 60);

struct GatewayMetrics {
    std::uint64_t requests = 0;
    double gate_in_us_p50 = 0;
    double gate_in_us_p99 = 0;
    double gate_out_us_p50 = 0;
    double gate_out_us_p99 = 0;
};

/// Request handling without sockets; thread-safe.
class Gateway {
public:
    explicit Gateway(Upstream upstream, const GrammarTable& table = default_table());

    /// POST body of /v1/chat/completions -> reply. Malformed requests get
    /// 400; upstream errors pass through with their status; gating problems
    /// become warnings (header X-SimPy-Warning and `simpy_gateway.warnings`).
    HttpReply handle_chat(const std::string& body);
    GatewayMetrics metrics() const;
    std::string metrics_json() const;

private:
    void record(double in_us, double out_us);

    Upstream upstream_;
    const GrammarTable& table_;
    std::atomic<std::uint64_t> requests_{0};
    mutable std::mutex mutex_;
    // Most recent latencies, bounded.
    std::vector<double> in_us_;
    std::vector<double> out_us_;
    std::size_t next_slot_ = 0;
};

struct ServeConfig {
    std::string host = "127.0.0.1";
    /// 0 picks a free port.
    int port = 8080;
    /// Used when `upstream` is empty.
    std::string upstream_url;
    Upstream upstream;
};

/// HTTP front end: POST /v1/chat/completions, GET /metrics, GET /health.
class GatewayServer {
public:
    explicit GatewayServer(ServeConfig config, const GrammarTable& table = default_table());
    ~GatewayServer();
    GatewayServer(const GatewayServer&) = delete;
    GatewayServer& operator=(const GatewayServer&) = delete;

    /// Binds and returns the port; throws Error when binding fails.
    int bind();
    /// Blocks until stop().
    void run();
    void stop();
    Gateway& gateway() { return *gateway_; }

private:
    struct Impl;
    ServeConfig config_;
    std::unique_ptr<Gateway> gateway_;
    std::unique_ptr<Impl> impl_;
};

} // namespace simpy
