#ifndef TCW_FLOW_HPP
#define TCW_FLOW_HPP

#include <cstdint>
#include <vector>

namespace tcw {

// Small max-flow network (Dinic). Node 0-based; caller picks source/sink.
class FlowNetwork {
 public:
  explicit FlowNetwork(int num_nodes);

  void add_arc(int from, int to, std::int64_t cap);
  std::int64_t max_flow(int source, int sink);

 private:
  struct Arc {
    int to;
    std::int64_t cap;
    int rev;
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t pushed);

  std::vector<std::vector<Arc>> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace tcw

#endif
