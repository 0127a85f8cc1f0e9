#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aspplan/llm_client.hpp"

namespace aspplan {

using EmbeddingVector = std::vector<double>;

/// Σ aᵢbᵢ / (‖a‖‖b‖). Throws Error on a dimension mismatch or a zero vector.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

class Embedder {
public:
    virtual ~Embedder() = default;
    /// Tag stored in indexes so that vectors from different embedders are not mixed.
    virtual std::string identity() const = 0;
    virtual EmbeddingVector embed(std::string_view text) const = 0;
};

/// Bag of hashed character trigrams over the lowercased text with '_' read as
/// a space and one pad space on each side, L2-normalized.
class TrigramEmbedder : public Embedder {
public:
    explicit TrigramEmbedder(std::size_t dimension = 256) : dim_(dimension) {}
    std::string identity() const override { return "trigram-" + std::to_string(dim_); }
    EmbeddingVector embed(std::string_view text) const override;

private:
    std::size_t dim_;
};

struct EmbeddingConfig : ServiceConfig {
    EmbeddingConfig() {
        endpoint = "https://api.openai.com/v1/embeddings";
        model = "text-embedding-ada-002";
    }
};

/// OpenAI-compatible embeddings endpoint.
class RemoteEmbedder : public Embedder {
public:
    explicit RemoteEmbedder(EmbeddingConfig cfg);
    std::string identity() const override { return "remote:" + cfg_.model; }
    EmbeddingVector embed(std::string_view text) const override;

private:
    EmbeddingConfig cfg_;
    std::string key_;
};

}  // namespace aspplan
