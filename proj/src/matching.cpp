#include "ordfrag/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "ordfrag/errors.hpp"

namespace ordfrag {

namespace {
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
}

BipartiteMatcher::BipartiteMatcher(std::size_t left, std::size_t right)
    : adj_(left), match_left_(left, kFree), match_right_(right, kFree), dist_(left, kInf) {}

void BipartiteMatcher::add_edge(std::size_t u, std::size_t v) {
    if (u >= adj_.size() || v >= match_right_.size()) throw DomainError("matching edge out of range");
    adj_[u].push_back(v);
}

bool BipartiteMatcher::bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kFree) {
            dist_[u] = 0;
            q.push(u);
        } else {
            dist_[u] = kInf;
        }
    }
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (auto v : adj_[u]) {
            auto w = match_right_[v];
            if (w == kFree) {
                found = true;
            } else if (dist_[w] == kInf) {
                dist_[w] = dist_[u] + 1;
                q.push(w);
            }
        }
    }
    return found;
}

bool BipartiteMatcher::dfs(std::size_t u) {
    for (auto v : adj_[u]) {
        auto w = match_right_[v];
        if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
            match_left_[u] = v;
            match_right_[v] = u;
            return true;
        }
    }
    dist_[u] = kInf;
    return false;
}

std::size_t BipartiteMatcher::solve() {
    std::fill(match_left_.begin(), match_left_.end(), kFree);
    std::fill(match_right_.begin(), match_right_.end(), kFree);
    std::size_t size = 0;
    while (bfs()) {
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            if (match_left_[u] == kFree && dfs(u)) ++size;
        }
    }
    return size;
}

BipartiteMatcher::Deficiency BipartiteMatcher::deficiency() const {
    std::vector<bool> left_seen(adj_.size(), false), right_seen(match_right_.size(), false);
    std::queue<std::size_t> q;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kFree) {
            left_seen[u] = true;
            q.push(u);
        }
    }
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (auto v : adj_[u]) {
            if (right_seen[v]) continue;
            right_seen[v] = true;
            auto w = match_right_[v];
            if (w != kFree && !left_seen[w]) {
                left_seen[w] = true;
                q.push(w);
            }
        }
    }
    Deficiency d;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (left_seen[u]) d.left.push_back(u);
    }
    for (std::size_t v = 0; v < match_right_.size(); ++v) {
        if (right_seen[v]) d.neighbourhood.push_back(v);
    }
    return d;
}

}  // namespace ordfrag
