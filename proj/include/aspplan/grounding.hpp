#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aspplan/embedding.hpp"
#include "aspplan/skeleton_plan.hpp"

namespace aspplan {

/// Embedded scene categories in sorted order.
struct GroundingIndex {
    std::string embedder;
    std::vector<std::pair<std::string, EmbeddingVector>> entries;

    bool contains(std::string_view category) const;
    std::size_t size() const { return entries.size(); }
    bool operator==(const GroundingIndex&) const = default;
};

GroundingIndex build_index(const std::set<std::string>& categories, const Embedder& emb);

struct Match {
    std::string category;
    double similarity = 0;
};

/// In-index category with the highest cosine to the query's embedding; ties
/// go to the lexicographically smallest category.
Match nearest(std::string_view query, const GroundingIndex& idx, const Embedder& emb);

/// One referring-grounding replacement.
struct Replacement {
    std::string from;
    std::string to;
    double similarity = 0;
    bool operator==(const Replacement&) const = default;
};

/// Replaces every category argument outside `scene_categories` with its
/// nearest in-scene category. Entity ids and in-scene categories are kept.
/// Each distinct replaced category is reported once.
SkeletonPlan ground_plan(const SkeletonPlan& p, const std::set<std::string>& scene_categories,
                         const GroundingIndex& idx, const Embedder& emb,
                         std::vector<Replacement>* replacements = nullptr);

/// {"embedder": tag, "entries": {category: [components...]}}
std::string save_index(const GroundingIndex& idx);
GroundingIndex load_index(std::string_view json_text);

}  // namespace aspplan
