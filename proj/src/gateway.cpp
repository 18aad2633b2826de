#include "simpy/gateway.hpp"

#include <algorithm>
#include <chrono>

#include <httplib.h>
#include <json.hpp>

#include "simpy/converter.hpp"

namespace simpy {

namespace {

using json = nlohmann::json;

std::size_t line_end(std::string_view s, std::size_t pos) {
    auto nl = s.find('\n', pos);
    return nl == std::string_view::npos ? s.size() : nl;
}

// Backtick count of a fence line (up to three spaces of indent), else 0.
std::size_t fence_ticks(std::string_view line, std::size_t& after) {
    std::size_t k = 0;
    while (k < line.size() && k < 3 && line[k] == ' ') ++k;
    std::size_t t = k;
    while (t < line.size() && line[t] == '`') ++t;
    after = t;
    return t - k >= 3 ? t - k : 0;
}

bool is_blank(std::string_view s) {
    return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string strip_trailing_newlines(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

double elapsed_us(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - since).count();
}

double percentile(std::vector<double> v, double q) {
    if (v.empty()) return 0;
    auto k = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1) + 0.5);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

std::string one_line(std::string s) {
    std::replace_if(s.begin(), s.end(), [](char c) { return c == '\n' || c == '\r'; }, ' ');
    return s;
}

HttpReply json_reply(int status, const json& body) {
    return {status, body.dump(-1, ' ', false, json::error_handler_t::replace), {{"Content-Type", "application/json"}}};
}

HttpReply error_reply(int status, const std::string& message) {
    return json_reply(status, {{"error", {{"message", message}, {"type", "simpy_gateway"}}}});
}

HttpReply assistant_reply(const std::string& model, const std::string& content) {
    return json_reply(200, {{"id", "stub"},
                            {"object", "chat.completion"},
                            {"model", model},
                            {"choices",
                             json::array({{{"index", 0},
                                           {"message", {{"role", "assistant"}, {"content", content}}},
                                           {"finish_reason", "stop"}}})}});
}

// Applies `fn` to every text carried by a message: a string content or the
// text parts of a content array.
template <class Fn>
void for_each_text(json& message, Fn fn) {
    if (!message.is_object() || !message.contains("content")) return;
    auto& content = message["content"];
    if (content.is_string()) {
        content = fn(content.get<std::string>());
    } else if (content.is_array()) {
        for (auto& part : content) {
            if (part.is_object() && part.value("type", "") == "text" && part.contains("text") && part["text"].is_string()) {
                part["text"] = fn(part["text"].get<std::string>());
            }
        }
    }
}

} // namespace

std::vector<CodeSpan> extract_code_spans(std::string_view content) {
    std::vector<CodeSpan> spans;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t eol = line_end(content, pos);
        std::string_view line = content.substr(pos, eol - pos);
        std::size_t after = 0;
        std::size_t ticks = fence_ticks(line, after);
        if (ticks == 0) {
            pos = eol + 1;
            continue;
        }
        // find the closing fence
        std::size_t close = eol + 1;
        std::size_t close_eol = 0;
        bool closed = false;
        while (close <= content.size() && close < content.size()) {
            close_eol = line_end(content, close);
            std::string_view cl = content.substr(close, close_eol - close);
            std::size_t cafter = 0;
            if (fence_ticks(cl, cafter) >= ticks && is_blank(cl.substr(cafter))) {
                closed = true;
                break;
            }
            close = close_eol + 1;
        }
        if (!closed) {
            pos = eol + 1;
            continue;
        }
        std::size_t tb = after;
        while (tb < line.size() && (line[tb] == ' ' || line[tb] == '\t')) ++tb;
        std::size_t te = tb;
        while (te < line.size() && !std::isspace(static_cast<unsigned char>(line[te])) && line[te] != '`') ++te;
        std::string lang = lower(line.substr(tb, te - tb));
        if (lang == "py") lang = "python";
        if (lang == "python" || lang == "simpy") {
            CodeSpan span;
            span.begin = pos;
            span.end = close_eol;
            span.tag_begin = pos + tb;
            span.tag_end = pos + te;
            span.body_begin = std::min(eol + 1, content.size());
            span.body_end = close;
            span.language = lang;
            span.body = std::string(content.substr(span.body_begin, span.body_end - span.body_begin));
            spans.push_back(std::move(span));
        }
        pos = close_eol + 1;
    }
    return spans;
}

GateResult gate_text(std::string_view content, GateDirection direction, const GrammarTable& table) {
    auto start = std::chrono::steady_clock::now();
    GateResult result;
    const std::string_view from = direction == GateDirection::Inbound ? "python" : "simpy";
    const std::string_view to = direction == GateDirection::Inbound ? "simpy" : "python";
    std::size_t copied = 0;
    std::size_t index = 0;
    for (const auto& span : extract_code_spans(content)) {
        ++index;
        if (span.language != from) continue;
        std::string converted;
        try {
            converted = direction == GateDirection::Inbound ? py_to_simpy(span.body, table) : simpy_to_py(span.body, table);
        } catch (const std::exception& e) {
            result.warnings.push_back(std::string(from) + " block " + std::to_string(index) +
                                      " left unconverted: " + one_line(e.what()));
            continue;
        }
        converted = strip_trailing_newlines(std::move(converted));
        if (!converted.empty()) converted += '\n';
        result.content.append(content.substr(copied, span.tag_begin - copied));
        result.content.append(to);
        result.content.append(content.substr(span.tag_end, span.body_begin - span.tag_end));
        result.content.append(converted);
        copied = span.body_end;
        ++result.spans_converted;
    }
    result.content.append(content.substr(copied));
    result.micros = elapsed_us(start);
    return result;
}

namespace {

ChatPayload gate_payload(const ChatPayload& in, GateDirection direction, const GrammarTable& table) {
    ChatPayload out = in;
    out.gate_micros = 0;
    for (std::size_t i = 0; i < out.messages.size(); ++i) {
        GateResult r = gate_text(in.messages[i].content, direction, table);
        out.messages[i].content = std::move(r.content);
        out.gate_micros += r.micros;
        for (auto& w : r.warnings) out.warnings.push_back("message " + std::to_string(i + 1) + ": " + w);
    }
    return out;
}

} // namespace

GatewayRequest gate_inbound(const GatewayRequest& request, const GrammarTable& table) {
    return gate_payload(request, GateDirection::Inbound, table);
}

GatewayResponse gate_outbound(const GatewayResponse& response, const GrammarTable& table) {
    return gate_payload(response, GateDirection::Outbound, table);
}

Upstream echo_upstream() {
    return [](const std::string& body) {
        json req = json::parse(body, nullptr, false);
        std::string content;
        std::string model = "stub";
        if (req.is_object()) {
            model = req.value("model", model);
            if (req.contains("messages") && req["messages"].is_array() && !req["messages"].empty()) {
                const auto& last = req["messages"].back();
                if (last.is_object() && last.contains("content") && last["content"].is_string()) {
                    content = last["content"].get<std::string>();
                }
            }
        }
        return assistant_reply(model, content);
    };
}

Upstream fixed_upstream(std::string content) {
    return [content = std::move(content)](const std::string& body) {
        json req = json::parse(body, nullptr, false);
        std::string model = req.is_object() ? req.value("model", "stub") : "stub";
        return assistant_reply(model, content);
    };
}

Upstream http_upstream(const std::string& url, int timeout_seconds) {
    auto scheme_end = url.find("://");
    if (url.rfind("http://", 0) != 0) throw Error("upstream must be an http:// URL: " + url);
    auto path_begin = url.find('/', scheme_end + 3);
    std::string origin = path_begin == std::string::npos ? url : url.substr(0, path_begin);
    std::string path = path_begin == std::string::npos ? "/v1/chat/completions" : url.substr(path_begin);
    return [origin, path, timeout_seconds](const std::string& body) {
        httplib::Client client(origin);
        client.set_connection_timeout(timeout_seconds);
        client.set_read_timeout(timeout_seconds);
        auto res = client.Post(path, body, "application/json");
        if (!res) return error_reply(502, "upstream unreachable: " + httplib::to_string(res.error()));
        HttpReply reply{res->status, res->body, {}};
        auto ct = res->get_header_value("Content-Type");
        if (!ct.empty()) reply.headers.emplace_back("Content-Type", ct);
        return reply;
    };
}

Gateway::Gateway(Upstream upstream, const GrammarTable& table) : upstream_(std::move(upstream)), table_(table) {}

void Gateway::record(double in_us, double out_us) {
    constexpr std::size_t kWindow = 10000;
    std::lock_guard lock(mutex_);
    if (in_us_.size() < kWindow) {
        in_us_.push_back(in_us);
        out_us_.push_back(out_us);
    } else {
        in_us_[next_slot_] = in_us;
        out_us_[next_slot_] = out_us;
        next_slot_ = (next_slot_ + 1) % kWindow;
    }
}

HttpReply Gateway::handle_chat(const std::string& body) {
    ++requests_;
    json req = json::parse(body, nullptr, false);
    if (!req.is_object() || !req.contains("messages") || !req["messages"].is_array()) {
        return error_reply(400, "expected a JSON object with a \"messages\" array");
    }
    std::vector<std::string> warnings;
    double in_us = 0;
    std::size_t index = 0;
    for (auto& message : req["messages"]) {
        ++index;
        for_each_text(message, [&](const std::string& text) {
            GateResult r = gate_text(text, GateDirection::Inbound, table_);
            in_us += r.micros;
            for (auto& w : r.warnings) warnings.push_back("request message " + std::to_string(index) + ": " + w);
            return r.content;
        });
    }

    HttpReply upstream;
    try {
        upstream = upstream_(req.dump(-1, ' ', false, json::error_handler_t::replace));
    } catch (const std::exception& e) {
        upstream = error_reply(502, std::string("upstream failed: ") + e.what());
    }
    double out_us = 0;
    HttpReply reply = upstream;
    if (upstream.status >= 200 && upstream.status < 300) {
        json res = json::parse(upstream.body, nullptr, false);
        if (res.is_object()) {
            if (res.contains("choices") && res["choices"].is_array()) {
                std::size_t choice = 0;
                for (auto& c : res["choices"]) {
                    ++choice;
                    if (!c.is_object() || !c.contains("message")) continue;
                    for_each_text(c["message"], [&](const std::string& text) {
                        GateResult r = gate_text(text, GateDirection::Outbound, table_);
                        out_us += r.micros;
                        for (auto& w : r.warnings) warnings.push_back("choice " + std::to_string(choice) + ": " + w);
                        return r.content;
                    });
                }
            }
            res["simpy_gateway"] = {{"gate_in_us", in_us}, {"gate_out_us", out_us}, {"warnings", warnings}};
            reply = json_reply(upstream.status, res);
        } else {
            warnings.push_back("upstream reply is not a JSON object; passed through unconverted");
        }
    }
    record(in_us, out_us);
    if (!warnings.empty()) {
        reply.headers.emplace_back("X-SimPy-Warning", one_line(warnings.front()) +
                                                          (warnings.size() > 1 ? " (+" + std::to_string(warnings.size() - 1) + " more)" : ""));
    }
    return reply;
}

GatewayMetrics Gateway::metrics() const {
    GatewayMetrics m;
    m.requests = requests_.load();
    std::lock_guard lock(mutex_);
    m.gate_in_us_p50 = percentile(in_us_, 0.50);
    m.gate_in_us_p99 = percentile(in_us_, 0.99);
    m.gate_out_us_p50 = percentile(out_us_, 0.50);
    m.gate_out_us_p99 = percentile(out_us_, 0.99);
    return m;
}

std::string Gateway::metrics_json() const {
    GatewayMetrics m = metrics();
    json j = {{"requests", m.requests},
              {"gate_in_us_p50", m.gate_in_us_p50},
              {"gate_in_us_p99", m.gate_in_us_p99},
              {"gate_out_us_p50", m.gate_out_us_p50},
              {"gate_out_us_p99", m.gate_out_us_p99}};
    return j.dump();
}

struct GatewayServer::Impl {
    httplib::Server server;
};

GatewayServer::GatewayServer(ServeConfig config, const GrammarTable& table)
    : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
    Upstream upstream = config_.upstream;
    if (!upstream) {
        if (config_.upstream_url.empty()) throw Error("no upstream configured");
        upstream = http_upstream(config_.upstream_url);
    }
    gateway_ = std::make_unique<Gateway>(std::move(upstream), table);
    auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        std::string type = "application/json";
        for (const auto& [k, v] : reply.headers) {
            if (k == "Content-Type") {
                type = v;
            } else {
                res.set_header(k, v);
            }
        }
        res.set_content(reply.body, type);
    };
    impl_->server.Post("/v1/chat/completions", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, gateway_->handle_chat(req.body));
    });
    impl_->server.Get("/metrics", [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(gateway_->metrics_json(), "application/json");
    });
    impl_->server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("{\"status\":\"ok\"}", "application/json");
    });
}

GatewayServer::~GatewayServer() {
    stop();
}

int GatewayServer::bind() {
    int port = config_.port == 0 ? impl_->server.bind_to_any_port(config_.host)
                                 : (impl_->server.bind_to_port(config_.host, config_.port) ? config_.port : -1);
    if (port < 0) throw Error("cannot listen on " + config_.host + ":" + std::to_string(config_.port));
    return port;
}

void GatewayServer::run() {
    impl_->server.listen_after_bind();
}

void GatewayServer::stop() {
    if (impl_) impl_->server.stop();
}

} // namespace simpy
