#include "aspplan/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "aspplan/text.hpp"

namespace aspplan {

using nlohmann::json;

std::string api_key(const ServiceConfig& cfg) {
    const char* v = std::getenv(cfg.api_key_env.c_str());
    if (!v || !*v) throw Error("environment variable " + cfg.api_key_env + " is not set");
    return v;
}

std::string http_post_json(const ServiceConfig& cfg, const std::string& key, const std::string& body,
                           int attempts) {
    const auto scheme = cfg.endpoint.find("://");
    if (scheme == std::string::npos) throw Error("endpoint is not a URL: " + cfg.endpoint);
    const auto slash = cfg.endpoint.find('/', scheme + 3);
    const std::string origin = cfg.endpoint.substr(0, slash);
    const std::string path = slash == std::string::npos ? "/" : cfg.endpoint.substr(slash);

    httplib::Client cli(origin);
    if (!cli.is_valid()) throw Error("unsupported endpoint " + cfg.endpoint);
    const auto timeout = std::chrono::milliseconds(static_cast<long long>(cfg.timeout_seconds * 1000));
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    const httplib::Headers headers{{"Authorization", "Bearer " + key}};

    std::string last;
    auto delay = std::chrono::milliseconds(500);
    for (int i = 0; i < attempts; ++i) {
        if (i > 0) {
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
        auto res = cli.Post(path, headers, body, "application/json");
        if (!res) {
            last = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 200) return res->body;
        last = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 300);
        if (res->status != 429 && res->status < 500) break;
    }
    throw Error("request to " + cfg.endpoint + " failed: " + last);
}

HttpChatClient::HttpChatClient(ChatConfig cfg) : cfg_(std::move(cfg)), key_(api_key(cfg_)) {}

std::string HttpChatClient::request_body(const std::string& prompt) const {
    json j{{"model", cfg_.model},
           {"temperature", cfg_.temperature},
           {"frequency_penalty", cfg_.frequency_penalty},
           {"presence_penalty", cfg_.presence_penalty},
           {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})}};
    return j.dump();
}

std::string HttpChatClient::generate(const std::string& prompt) {
    const std::string raw = http_post_json(cfg_, key_, request_body(prompt));
    try {
        return json::parse(raw).at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw Error(std::string("unexpected chat response: ") + e.what());
    }
}

std::string ScriptedClient::generate(const std::string& prompt) {
    if (next_ >= responses_.size())
        throw Error("scripted client exhausted after " + std::to_string(responses_.size()) + " responses");
    prompts_.push_back(prompt);
    return responses_[next_++];
}

std::unique_ptr<ScriptedClient> load_scripted_client(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error(path + ": " + e.what());
    }
    if (!j.is_array()) throw Error(path + ": expected a JSON array of response strings");
    std::vector<std::string> responses;
    for (const auto& r : j) {
        if (!r.is_string()) throw Error(path + ": every response must be a string");
        responses.push_back(r.get<std::string>());
    }
    return std::make_unique<ScriptedClient>(std::move(responses));
}

}  // namespace aspplan
