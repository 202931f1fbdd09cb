#pragma once

#include <map>
#include <string>

namespace lrb {

// Registry for the constants the bound family leaves unspecified ("C", C1,
// C2, C3 and the lattice sum-to-integral constant). Everything defaults to 1
// so derived bounds are evaluable out of the box; dominance fits rescale via
// the overall multiplier instead of touching these.
class ConstantRegistry {
 public:
  ConstantRegistry();

  double get(const std::string& name) const;
  void set(const std::string& name, double value);  // must be > 0
  const std::map<std::string, double>& entries() const { return entries_; }

 private:
  std::map<std::string, double> entries_;
};

}  // namespace lrb
