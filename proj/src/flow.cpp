#include "tcw/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace tcw {

FlowNetwork::FlowNetwork(int num_nodes) : arcs_(num_nodes) {}

void FlowNetwork::add_arc(int from, int to, std::int64_t cap) {
  Arc a{to, cap, static_cast<int>(arcs_[to].size())};
  Arc b{from, 0, static_cast<int>(arcs_[from].size())};
  arcs_[from].push_back(a);
  arcs_[to].push_back(b);
}

bool FlowNetwork::bfs(int s, int t) {
  level_.assign(arcs_.size(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Arc& a : arcs_[v]) {
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t FlowNetwork::dfs(int v, int t, std::int64_t pushed) {
  if (v == t) return pushed;
  for (int& i = iter_[v]; i < static_cast<int>(arcs_[v].size()); ++i) {
    Arc& a = arcs_[v][i];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    std::int64_t got = dfs(a.to, t, std::min(pushed, a.cap));
    if (got > 0) {
      a.cap -= got;
      arcs_[a.to][a.rev].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t FlowNetwork::max_flow(int source, int sink) {
  std::int64_t flow = 0;
  while (bfs(source, sink)) {
    iter_.assign(arcs_.size(), 0);
    while (std::int64_t f =
               dfs(source, sink, std::numeric_limits<std::int64_t>::max()))
      flow += f;
  }
  return flow;
}

}  // namespace tcw
