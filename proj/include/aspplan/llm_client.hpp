#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace aspplan {

/// Endpoint settings shared by the chat and embedding clients.
struct ServiceConfig {
    std::string endpoint;  // full URL, e.g. https://api.openai.com/v1/chat/completions
    std::string model;
    std::string api_key_env = "OPENAI_API_KEY";
    double timeout_seconds = 60.0;
};

/// Reads the API key named by cfg.api_key_env; throws Error when unset.
std::string api_key(const ServiceConfig& cfg);

/// POSTs a JSON body with bearer auth and returns the response body. Retries
/// up to `attempts` times with exponential backoff on transport errors and
/// 429/5xx responses.
std::string http_post_json(const ServiceConfig& cfg, const std::string& key, const std::string& body,
                           int attempts = 3);

class GenerationClient {
public:
    virtual ~GenerationClient() = default;
    virtual std::string generate(const std::string& prompt) = 0;
};

struct ChatConfig : ServiceConfig {
    double temperature = 0.9;
    double frequency_penalty = 0.9;
    double presence_penalty = 0.8;
    ChatConfig() {
        endpoint = "https://api.openai.com/v1/chat/completions";
        model = "gpt-4";
    }
};

/// OpenAI-compatible chat completions client.
class HttpChatClient : public GenerationClient {
public:
    explicit HttpChatClient(ChatConfig cfg);
    std::string generate(const std::string& prompt) override;

    /// Request body for one prompt (exposed for tests).
    std::string request_body(const std::string& prompt) const;

private:
    ChatConfig cfg_;
    std::string key_;
};

/// Replays canned responses in order; throws once they run out.
class ScriptedClient : public GenerationClient {
public:
    explicit ScriptedClient(std::vector<std::string> responses) : responses_(std::move(responses)) {}
    std::string generate(const std::string& prompt) override;

    std::size_t calls() const { return next_; }
    const std::vector<std::string>& prompts() const { return prompts_; }

private:
    std::vector<std::string> responses_;
    std::vector<std::string> prompts_;
    std::size_t next_ = 0;
};

/// Fixture file: a JSON array of response strings.
std::unique_ptr<ScriptedClient> load_scripted_client(const std::string& path);

}  // namespace aspplan
