#ifndef ISING_UNION_FIND_HPP
#define ISING_UNION_FIND_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace ising {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n), size_(n, 1), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    count_--;
    return true;
  }

  bool connected(int a, int b) { return find(a) == find(b); }
  size_t component_count() const { return count_; }
  size_t component_size(int a) { return size_[find(a)]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  size_t count_;
};

}  // namespace ising

#endif
