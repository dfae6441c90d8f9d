#pragma once

#include <queue>
#include <vector>

namespace dcomp {

// Maximum bipartite matching, Hopcroft-Karp (augmenting paths with layered
// BFS phases).
class BipartiteMatcher {
 public:
  BipartiteMatcher(int left, int right) : nl_(left), nr_(right), adj_(left) {}

  void add_edge(int l, int r) { adj_[static_cast<std::size_t>(l)].push_back(r); }

  int max_matching() {
    match_l_.assign(static_cast<std::size_t>(nl_), -1);
    match_r_.assign(static_cast<std::size_t>(nr_), -1);
    int matching = 0;
    while (bfs()) {
      for (int l = 0; l < nl_; ++l)
        if (match_l_[static_cast<std::size_t>(l)] < 0 && dfs(l)) ++matching;
    }
    return matching;
  }

 private:
  static constexpr int kInf = 1 << 30;

  bool bfs() {
    std::queue<int> q;
    dist_.assign(static_cast<std::size_t>(nl_), kInf);
    for (int l = 0; l < nl_; ++l) {
      if (match_l_[static_cast<std::size_t>(l)] < 0) {
        dist_[static_cast<std::size_t>(l)] = 0;
        q.push(l);
      }
    }
    bool found = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj_[static_cast<std::size_t>(l)]) {
        int l2 = match_r_[static_cast<std::size_t>(r)];
        if (l2 < 0) {
          found = true;
        } else if (dist_[static_cast<std::size_t>(l2)] == kInf) {
          dist_[static_cast<std::size_t>(l2)] = dist_[static_cast<std::size_t>(l)] + 1;
          q.push(l2);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (int r : adj_[static_cast<std::size_t>(l)]) {
      int l2 = match_r_[static_cast<std::size_t>(r)];
      if (l2 < 0 || (dist_[static_cast<std::size_t>(l2)] ==
                         dist_[static_cast<std::size_t>(l)] + 1 &&
                     dfs(l2))) {
        match_l_[static_cast<std::size_t>(l)] = r;
        match_r_[static_cast<std::size_t>(r)] = l;
        return true;
      }
    }
    dist_[static_cast<std::size_t>(l)] = kInf;
    return false;
  }

  int nl_, nr_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_l_, match_r_, dist_;
};

}  // namespace dcomp
