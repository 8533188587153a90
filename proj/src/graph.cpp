#include "catmouse/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "catmouse/rng.hpp"

namespace catmouse {

Tree::Tree(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("tree: order must be at least 1");
  if (static_cast<int>(edges.size()) != n - 1)
    throw std::invalid_argument("tree: expected " + std::to_string(n - 1) + " edges, got " +
                                std::to_string(edges.size()));
  adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("tree: vertex id out of range");
    if (u == v) throw std::invalid_argument("tree: self loop");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(adj_[v].begin(), adj_[v].end());
    if (std::adjacent_find(adj_[v].begin(), adj_[v].end()) != adj_[v].end())
      throw std::invalid_argument("tree: duplicate edge");
  }
  // connectivity (with n-1 edges this also rules out cycles)
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u : adj_[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        q.push(u);
      }
  }
  if (reached != n) throw std::invalid_argument("tree: not connected");
  xadj_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) xadj_[v + 1] = xadj_[v] + static_cast<int>(adj_[v].size());
  adjncy_.reserve(xadj_[n]);
  for (int v = 0; v < n; ++v) adjncy_.insert(adjncy_.end(), adj_[v].begin(), adj_[v].end());
}

bool Tree::has_edge(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<int, int>> Tree::edges() const {
  std::vector<std::pair<int, int>> es;
  es.reserve(n_ > 0 ? n_ - 1 : 0);
  for (int v = 0; v < n_; ++v)
    for (int u : adj_[v])
      if (v < u) es.push_back({v, u});
  return es;
}

namespace {

// sz[v] and max component order of t - v for all v, via one rooted pass.
void component_bounds(const Tree& t, std::vector<int>& max_comp) {
  const int n = t.n();
  std::vector<int> order, parent(n, -1), sz(n, 1);
  order.reserve(n);
  order.push_back(0);
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int u : t.neighbors(v))
      if (u != parent[v]) {
        parent[u] = v;
        order.push_back(u);
      }
  }
  for (int i = n - 1; i > 0; --i) sz[parent[order[i]]] += sz[order[i]];
  max_comp.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    int worst = n - sz[v];
    for (int u : t.neighbors(v))
      if (u != parent[v]) worst = std::max(worst, sz[u]);
    max_comp[v] = worst;
  }
}

}  // namespace

std::vector<int> centre_vertices(const Tree& t) {
  const int n = t.n();
  std::vector<int> max_comp;
  component_bounds(t, max_comp);
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (max_comp[v] <= n / 2) out.push_back(v);  // n/2 == ceil((n-1)/2)
  return out;
}

int find_centre(const Tree& t) { return centre_vertices(t).front(); }

Forest remove_vertices(const Tree& t, const std::vector<int>& vs) {
  const int n = t.n();
  std::vector<char> removed(n, 0);
  for (int v : vs) removed[v] = 1;
  std::vector<char> seen(n, 0);
  Forest f;
  for (int s = 0; s < n; ++s) {
    if (removed[s] || seen[s]) continue;
    std::vector<int> verts;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      verts.push_back(v);
      for (int u : t.neighbors(v))
        if (!removed[u] && !seen[u]) {
          seen[u] = 1;
          q.push(u);
        }
    }
    std::sort(verts.begin(), verts.end());
    std::vector<int> local(n, -1);
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (int v : verts)
      for (int u : t.neighbors(v))
        if (!removed[u] && v < u) es.push_back({local[v], local[u]});
    f.components.push_back({Tree(static_cast<int>(verts.size()), es), verts});
  }
  return f;
}

Forest remove_vertex(const Tree& t, int v) { return remove_vertices(t, {v}); }

Bipartition bipartition(const Tree& t) {
  const int n = t.n();
  Bipartition b;
  b.side.assign(n, 0);
  std::queue<int> q;
  q.push(0);
  b.side[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u : t.neighbors(v))
      if (b.side[u] == 0) {
        b.side[u] = 3 - b.side[v];
        q.push(u);
      }
  }
  return b;
}

bool contains_H(const Tree& t) {
  const int n = t.n();
  if (n < 10) return false;
  std::vector<int> dist(n), branch(n);
  std::vector<int> order;
  order.reserve(n);
  for (int v = 0; v < n; ++v) {
    if (t.degree(v) < 3) continue;
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    dist[v] = 0;
    branch[v] = -1;
    order.push_back(v);
    for (size_t i = 0; i < order.size(); ++i) {
      int x = order[i];
      for (int u : t.neighbors(x))
        if (dist[u] < 0) {
          dist[u] = dist[x] + 1;
          branch[u] = (x == v) ? u : branch[x];
          order.push_back(u);
        }
    }
    std::set<int> deep;
    for (int x : order)
      if (dist[x] >= 3) deep.insert(branch[x]);
    if (static_cast<int>(deep.size()) >= 3) return true;
  }
  return false;
}

SubdividedTree make_tk(int k) {
  if (k < 1) throw std::invalid_argument("make_tk: k must be at least 1");
  if (k > 22) throw CapacityError("make_tk: k > 22 exceeds the size guard");
  const int m = (1 << (k + 1)) - 1;  // heap vertices of B_k
  const int n = 2 * m - 1;           // |T_k| = 2^{k+2} - 3
  std::vector<std::pair<int, int>> es;
  es.reserve(n - 1);
  SubdividedTree st;
  st.k = k;
  st.important.assign(n, 0);
  st.b_map.assign(n, -1);
  st.b_inv.assign(m, 0);
  st.edge_subdivider.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    st.important[i] = 1;
    st.b_map[i] = i;
    st.b_inv[i] = i;
  }
  for (int c = 1; c < m; ++c) {
    int s = m - 1 + c;  // subdivider of the heap edge (parent(c), c)
    st.edge_subdivider[c] = s;
    es.push_back({(c - 1) / 2, s});
    es.push_back({s, c});
  }
  st.tree = Tree(n, es);
  return st;
}

namespace {

std::string ahu_code(const Tree& t, int root) {
  std::function<std::string(int, int)> rec = [&](int v, int parent) -> std::string {
    std::vector<std::string> kids;
    for (int u : t.neighbors(v))
      if (u != parent) kids.push_back(rec(u, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& s : kids) out += s;
    out += ")";
    return out;
  };
  return rec(root, -1);
}

}  // namespace

std::string canonical_form(const Tree& t) {
  std::string best;
  for (int c : centre_vertices(t)) {
    std::string code = ahu_code(t, c);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

Tree tree_from_canonical(const std::string& code) {
  std::vector<std::pair<int, int>> es;
  std::vector<int> stack;
  int next_id = 0;
  for (char ch : code) {
    if (ch == '(') {
      int id = next_id++;
      if (!stack.empty()) es.push_back({stack.back(), id});
      stack.push_back(id);
    } else if (ch == ')') {
      stack.pop_back();
    } else {
      throw std::invalid_argument("tree_from_canonical: bad character");
    }
  }
  return Tree(next_id, es);
}

std::vector<Tree> enumerate_trees(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("enumerate_trees: order must be in [1, 12]");
  std::set<std::string> reps = {canonical_form(Tree(1, {}))};
  for (int s = 2; s <= n; ++s) {
    std::set<std::string> next;
    for (const std::string& code : reps) {
      Tree t = tree_from_canonical(code);
      std::vector<std::pair<int, int>> base = t.edges();
      for (int v = 0; v < t.n(); ++v) {
        std::vector<std::pair<int, int>> es = base;
        es.push_back({v, t.n()});
        next.insert(canonical_form(Tree(s, es)));
      }
    }
    reps = std::move(next);
  }
  std::vector<Tree> out;
  out.reserve(reps.size());
  for (const std::string& code : reps) out.push_back(tree_from_canonical(code));
  return out;
}

Tree random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_tree: order must be at least 1");
  if (n == 1) return Tree(1, {});
  if (n == 2) return Tree(2, {{0, 1}});
  Rng rng(seed);
  std::vector<int> prufer(n - 2);
  for (int& x : prufer) x = rng.below_int(n);
  std::vector<int> deg(n, 1);
  for (int x : prufer) ++deg[x];
  std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.push(v);
  std::vector<std::pair<int, int>> es;
  es.reserve(n - 1);
  for (int x : prufer) {
    int leaf = leaves.top();
    leaves.pop();
    es.push_back({leaf, x});
    if (--deg[x] == 1) leaves.push(x);
  }
  int a = leaves.top();
  leaves.pop();
  int b = leaves.top();
  es.push_back({a, b});
  return Tree(n, es);
}

Tree make_path(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Tree(n, es);
}

Tree make_star(int leaves) {
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= leaves; ++i) es.push_back({0, i});
  return Tree(leaves + 1, es);
}

Tree make_spider(const std::vector<int>& legs) {
  std::vector<std::pair<int, int>> es;
  int next = 1;
  for (int len : legs) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      es.push_back({prev, next});
      prev = next++;
    }
  }
  return Tree(next, es);
}

}  // namespace catmouse
