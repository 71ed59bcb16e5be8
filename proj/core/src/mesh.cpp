#include "archdpg/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace archdpg {

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("mesh needs at least one element");
  if (nodes_.front() != 0.0 || nodes_.back() != 1.0)
    throw std::invalid_argument("mesh nodes must start at 0 and end at 1");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1]))
      throw std::invalid_argument("mesh nodes must be strictly increasing");
}

Mesh Mesh::uniform(int num_elements) {
  if (num_elements < 1) throw std::invalid_argument("uniform mesh needs N >= 1");
  std::vector<double> nodes(num_elements + 1);
  for (int i = 0; i <= num_elements; ++i)
    nodes[i] = static_cast<double>(i) / static_cast<double>(num_elements);
  return Mesh(std::move(nodes));
}

double Mesh::h_max() const {
  double m = 0.0;
  for (int j = 0; j < num_elements(); ++j) m = std::max(m, h(j));
  return m;
}

int Mesh::locate(double x) const {
  auto it = std::lower_bound(nodes_.begin() + 1, nodes_.end(), x);
  if (it == nodes_.end()) return num_elements() - 1;
  return static_cast<int>(it - nodes_.begin()) - 1;
}

}  // namespace archdpg
