#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace galoisforge::detail {

class DisjointSets
{
public:
  explicit DisjointSets(std::size_t n) : _parent(n)
  { std::iota(_parent.begin(), _parent.end(), 0); }

  int find(int x)
  {
    while (_parent[x] != x) {
      _parent[x] = _parent[_parent[x]];
      x = _parent[x];
    }
    return x;
  }

  // Keeps the smaller root so that roots are class minima.
  void merge(int x, int y)
  {
    x = find(x);
    y = find(y);
    if (x == y)
      return;
    if (y < x)
      std::swap(x, y);
    _parent[y] = x;
  }

  // Class labels numbered by minimal element.
  std::vector<int> labels()
  {
    std::vector<int> out(_parent.size());
    std::vector<int> number(_parent.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < _parent.size(); ++i) {
      int r = find(static_cast<int>(i));
      if (number[r] < 0)
        number[r] = next++;
      out[i] = number[r];
    }
    return out;
  }

private:
  std::vector<int> _parent;
};

} // namespace galoisforge::detail
