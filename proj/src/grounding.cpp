#include "aspplan/grounding.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "aspplan/text.hpp"

namespace aspplan {

using nlohmann::json;

bool GroundingIndex::contains(std::string_view category) const {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.first == category; });
}

GroundingIndex build_index(const std::set<std::string>& categories, const Embedder& emb) {
    if (categories.empty()) throw Error("cannot build a grounding index over no categories");
    GroundingIndex idx;
    idx.embedder = emb.identity();
    for (const auto& c : categories) {
        try {
            idx.entries.emplace_back(c, emb.embed(c));
        } catch (const Error& e) {
            throw Error("embedding category '" + c + "': " + e.what());
        }
        if (idx.entries.back().second.size() != idx.entries.front().second.size())
            throw Error("embedding of '" + c + "' has a different dimension");
    }
    return idx;
}

Match nearest(std::string_view query, const GroundingIndex& idx, const Embedder& emb) {
    if (idx.entries.empty()) throw Error("grounding index is empty");
    if (idx.embedder != emb.identity())
        throw Error("index was built with " + idx.embedder + ", not " + emb.identity());
    const EmbeddingVector q = emb.embed(query);
    Match best;
    bool first = true;
    for (const auto& [cat, vec] : idx.entries) {
        const double s = cosine(q, vec);
        const bool better = first || s > best.similarity + 1e-12 ||
                            (std::abs(s - best.similarity) <= 1e-12 && cat < best.category);
        if (better) best = {cat, s};
        first = false;
    }
    return best;
}

namespace {

void ground_rec(SkeletonPlan& p, const std::set<std::string>& scene, const GroundingIndex& idx, const Embedder& emb,
                std::map<std::string, Match>& cache, std::vector<Replacement>* out) {
    if (p.kind == SkeletonPlan::Kind::sequence) {
        for (auto& s : p.steps) ground_rec(s, scene, idx, emb, cache, out);
        return;
    }
    if (p.kind != SkeletonPlan::Kind::action) return;
    for (auto& a : p.args) {
        if (a.kind != Term::Kind::symbol || scene.count(a.name)) continue;
        auto it = cache.find(a.name);
        if (it == cache.end()) {
            it = cache.emplace(a.name, nearest(a.name, idx, emb)).first;
            if (out) out->push_back({a.name, it->second.category, it->second.similarity});
        }
        a.name = it->second.category;
    }
}

}  // namespace

SkeletonPlan ground_plan(const SkeletonPlan& p, const std::set<std::string>& scene_categories,
                         const GroundingIndex& idx, const Embedder& emb, std::vector<Replacement>* replacements) {
    for (const auto& [cat, vec] : idx.entries)
        if (!scene_categories.count(cat)) throw Error("index category '" + cat + "' is not in the scene");
    SkeletonPlan out = p;
    std::map<std::string, Match> cache;
    ground_rec(out, scene_categories, idx, emb, cache, replacements);
    return out;
}

std::string save_index(const GroundingIndex& idx) {
    json entries = json::object();
    for (const auto& [cat, vec] : idx.entries) entries[cat] = vec;
    return json{{"embedder", idx.embedder}, {"entries", entries}}.dump() + "\n";
}

GroundingIndex load_index(std::string_view json_text) {
    GroundingIndex idx;
    try {
        const json j = json::parse(json_text);
        idx.embedder = j.at("embedder").get<std::string>();
        for (const auto& [cat, vec] : j.at("entries").items()) {
            auto v = vec.get<EmbeddingVector>();
            if (!idx.entries.empty() && v.size() != idx.entries.front().second.size())
                throw Error("index entry '" + cat + "' has a different dimension");
            idx.entries.emplace_back(cat, std::move(v));
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed grounding index: ") + e.what());
    }
    return idx;
}

}  // namespace aspplan
