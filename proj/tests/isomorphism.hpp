#pragma once

#include <map>
#include <optional>
#include <string>

#include "stabledp/reductions.hpp"

namespace stabledp::testing {

// Checks that, for every deletion, the subgraph induced on V \ S_i equals the
// reduction rebuilt from the deleted instance once labels are index-shifted.
// Returns an empty string on success, else a description of the first
// mismatch.
inline std::string deletion_isomorphism_failure(const ProblemInstance& instance,
                                                std::optional<double> rna_bound = std::nullopt) {
  const Reduction red = build_reduction(instance, {}, rna_bound);
  const auto dels = deletions_of(instance);
  if (dels.size() != red.family.size()) return "deletion count differs from family size";
  for (std::size_t i = 0; i < dels.size(); ++i) {
    const Reduction sub = build_reduction(apply_deletion(instance, dels[i]), {}, rna_bound);
    std::map<std::vector<int>, VertexId> where;
    for (std::size_t v = 0; v < sub.labels.size(); ++v)
      where[sub.labels[v]] = static_cast<VertexId>(v);
    std::vector<bool> dropped(red.dag.size(), false);
    for (VertexId v : red.family.set(i)) dropped[v] = true;
    std::vector<VertexId> image(red.dag.size(), -1);
    std::size_t survivors = 0;
    for (std::size_t v = 0; v < red.dag.size(); ++v) {
      if (dropped[v]) continue;
      ++survivors;
      const auto it = where.find(shift_label(red.kind, red.labels[v], dels[i]));
      if (it == where.end()) return "deletion " + std::to_string(i) + ": survivor has no image";
      image[v] = it->second;
      if (red.dag.weight(v) != sub.dag.weight(it->second))
        return "deletion " + std::to_string(i) + ": weight mismatch";
    }
    if (survivors != sub.dag.size()) return "deletion " + std::to_string(i) + ": vertex count";
    for (std::size_t u = 0; u < red.dag.size(); ++u) {
      if (dropped[u]) continue;
      for (std::size_t v = 0; v < red.dag.size(); ++v) {
        if (dropped[v]) continue;
        if (red.dag.has_edge(u, v) != sub.dag.has_edge(image[u], image[v]))
          return "deletion " + std::to_string(i) + ": edge mismatch";
      }
    }
  }
  return {};
}

}  // namespace stabledp::testing
