#include "aspplan/embedding.hpp"

#include <cctype>
#include <cmath>

#include <nlohmann/json.hpp>

#include "aspplan/text.hpp"

namespace aspplan {

using nlohmann::json;

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size())
        throw Error("embedding dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) throw Error("cosine of a zero vector");
    const double c = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::max(-1.0, std::min(1.0, c));
}

EmbeddingVector TrigramEmbedder::embed(std::string_view text) const {
    std::string s = " ";
    for (char c : text) s += c == '_' ? ' ' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    s += ' ';
    EmbeddingVector v(dim_, 0.0);
    for (std::size_t i = 0; i + 3 <= s.size(); ++i) v[fnv1a(std::string_view(s).substr(i, 3)) % dim_] += 1.0;
    double norm = 0;
    for (double x : v) norm += x * x;
    if (norm == 0) throw Error("cannot embed an empty string");
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

RemoteEmbedder::RemoteEmbedder(EmbeddingConfig cfg) : cfg_(std::move(cfg)), key_(api_key(cfg_)) {}

EmbeddingVector RemoteEmbedder::embed(std::string_view text) const {
    const json req{{"model", cfg_.model}, {"input", std::string(text)}};
    const std::string raw = http_post_json(cfg_, key_, req.dump());
    try {
        EmbeddingVector v = json::parse(raw).at("data").at(0).at("embedding").get<EmbeddingVector>();
        for (double x : v)
            if (!std::isfinite(x)) throw Error("non-finite embedding component");
        return v;
    } catch (const json::exception& e) {
        throw Error(std::string("unexpected embeddings response: ") + e.what());
    }
}

}  // namespace aspplan
