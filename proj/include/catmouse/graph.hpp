#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catmouse {

// Input exceeds a compiled-in size guard (CLI exit code 2).
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Immutable tree on dense vertex ids [0, n). Adjacency lists are sorted and a
// CSR copy is kept for tight loops. The constructor validates tree-ness.
class Tree {
public:
  Tree() = default;
  Tree(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;
  std::vector<std::pair<int, int>> edges() const;

  // CSR view: neighbors of v are adjncy()[xadj()[v] .. xadj()[v+1]).
  const std::vector<int>& xadj() const { return xadj_; }
  const std::vector<int>& adjncy() const { return adjncy_; }

private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<int> xadj_;
  std::vector<int> adjncy_;
};

// One component of a vertex-deleted subforest, with the map back to the
// host tree's ids. Local ids are assigned in ascending host-id order, so
// local 0 is the smallest host id in the component.
struct ForestComponent {
  Tree tree;
  std::vector<int> to_parent;
};

struct Forest {
  std::vector<ForestComponent> components;
};

// Proper 2-coloring with side[0] == 1 (classes named 1 and 2).
struct Bipartition {
  std::vector<int> side;
};

// T_k: the 1-subdivision of the complete binary tree B_k. B_k vertices use
// heap ids (root 0, children of i are 2i+1 and 2i+2). In T_k the important
// vertex for heap id i is tree vertex i; the subdivider of the B_k edge
// (parent(c), c) is tree vertex 2^{k+1}-2+c.
struct SubdividedTree {
  Tree tree;
  int k = 0;
  std::vector<char> important;       // per tree vertex
  std::vector<int> b_map;            // tree vertex -> heap id, or -1
  std::vector<int> b_inv;            // heap id -> tree vertex
  std::vector<int> edge_subdivider;  // child heap id -> subdividing tree vertex (-1 at root)
  int bk_n() const { return static_cast<int>(b_inv.size()); }
};

// Smallest vertex whose removal leaves components of order <= ceil((n-1)/2).
int find_centre(const Tree& t);

// All vertices satisfying the centre condition (1 or 2 of them; this is the
// classical centroid condition), ascending.
std::vector<int> centre_vertices(const Tree& t);

Forest remove_vertex(const Tree& t, int v);
Forest remove_vertices(const Tree& t, const std::vector<int>& vs);

Bipartition bipartition(const Tree& t);

// True iff t contains the 10-vertex spider with three legs of length 3
// (equivalently: some vertex has 3 branches each reaching distance 3).
bool contains_H(const Tree& t);

SubdividedTree make_tk(int k);

// One representative per isomorphism class of free trees of order n (n <= 12),
// ordered by canonical form.
std::vector<Tree> enumerate_trees(int n);

// Uniform random labeled tree via a seeded Prufer sequence.
Tree random_tree(int n, std::uint64_t seed);

// Isomorphism-invariant string (AHU encoding rooted at the centroid set).
std::string canonical_form(const Tree& t);
Tree tree_from_canonical(const std::string& code);

Tree make_path(int n);
Tree make_star(int leaves);
Tree make_spider(const std::vector<int>& legs);

}  // namespace catmouse
