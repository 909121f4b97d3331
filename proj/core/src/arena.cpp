#include "genreach/arena.hpp"

#include <algorithm>

namespace genreach {

Arena::Arena(std::vector<std::string> names, std::vector<Player> owners,
             std::vector<Edge> edges)
    : names_(std::move(names)), owners_(std::move(owners)) {
  const auto n = owners_.size();
  if (names_.size() != n) {
    names_.resize(n);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (names_[v].empty()) names_[v] = std::to_string(v);
    auto [it, fresh] = index_.emplace(names_[v], v);
    if (!fresh) duplicate_names_.push_back(names_[v]);
  }

  std::erase_if(edges, [&](const Edge& e) {
    if (e.from < n && e.to < n) return false;
    out_of_range_.push_back(e);
    return true;
  });
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) duplicates_.push_back(edges[i]);
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++offsets_[e.from + 1];
    ++in_offsets_[e.to + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    offsets_[v + 1] += offsets_[v];
    in_offsets_[v + 1] += in_offsets_[v];
  }
  targets_.resize(edges.size());
  sources_.resize(edges.size());
  std::vector<EdgeId> fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    targets_[i] = edges[i].to;
    sources_[fill[edges[i].to]++] = edges[i].from;
  }
}

Arena::Arena(std::vector<Player> owners, std::vector<Edge> edges)
    : Arena(std::vector<std::string>(owners.size()), std::move(owners),
            std::move(edges)) {}

std::optional<Vertex> Arena::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EdgeId Arena::edge_id(Vertex from, Vertex to) const {
  if (from >= vertex_count()) return kNoEdge;
  auto succ = successors(from);
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it == succ.end() || *it != to) return kNoEdge;
  return offsets_[from] + static_cast<EdgeId>(it - succ.begin());
}

Edge Arena::edge(EdgeId e) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), e);
  auto from = static_cast<Vertex>(it - offsets_.begin() - 1);
  return {from, targets_[e]};
}

std::vector<Edge> Arena::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < vertex_count(); ++v) {
    for (Vertex w : successors(v)) out.push_back({v, w});
  }
  return out;
}

bool Arena::all_owned_by(Player p) const {
  return std::all_of(owners_.begin(), owners_.end(),
                     [p](Player q) { return q == p; });
}

ValidationReport validate_arena(const Arena& arena) {
  ValidationReport report;
  for (const auto& name : arena.duplicate_names_) {
    report.violations.push_back("duplicate vertex name '" + name + "'");
  }
  for (const auto& name : arena.names_) {
    if (name.find_first_of(" \t\r\n#") != std::string::npos) {
      report.violations.push_back("vertex name '" + name +
                                  "' contains whitespace or '#'");
    }
  }
  for (const auto& e : arena.out_of_range_) {
    report.violations.push_back("edge (" + std::to_string(e.from) + ", " +
                                std::to_string(e.to) +
                                ") has an endpoint out of range");
  }
  for (const auto& e : arena.duplicates_) {
    report.violations.push_back("duplicate edge (" + std::to_string(e.from) +
                                ", " + std::to_string(e.to) + ")");
  }
  for (Vertex v = 0; v < arena.vertex_count(); ++v) {
    if (arena.out_degree(v) == 0) {
      report.violations.push_back("dead end at vertex " + std::to_string(v));
    }
  }
  return report;
}

}  // namespace genreach
