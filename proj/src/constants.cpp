#include "lrb/constants.hpp"

#include <stdexcept>

namespace lrb {

ConstantRegistry::ConstantRegistry()
    : entries_{{"c", 1.0}, {"c1", 1.0}, {"c2", 1.0}, {"c3", 1.0},
               {"lattice", 1.0}} {}

double ConstantRegistry::get(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end())
    throw std::invalid_argument("unknown constant: " + name);
  return it->second;
}

void ConstantRegistry::set(const std::string& name, double value) {
  if (!(value > 0.0))
    throw std::invalid_argument("constant '" + name +
                                "' must be strictly positive");
  if (entries_.find(name) == entries_.end())
    throw std::invalid_argument("unknown constant: " + name);
  entries_[name] = value;
}

}  // namespace lrb
