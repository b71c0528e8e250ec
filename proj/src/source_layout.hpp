#pragma once

#include <vector>

#include "fieldmarket/info_space.hpp"
#include "fieldmarket/kernels.hpp"

namespace fieldmarket::detail {

// Flattens InformationCharge records into the kernels' row-major layout.
class SourceLayout {
 public:
  SourceLayout(std::span<const InformationCharge> sources, std::size_t dim) : dim_(dim) {
    coords_.reserve(sources.size() * dim);
    charges_.reserve(sources.size());
    for (const auto& s : sources) {
      require_same_dimension(dim, s.position.dimension(), "source position");
      coords_.insert(coords_.end(), s.position.values().begin(), s.position.values().end());
      charges_.push_back(s.magnitude);
    }
  }

  kernels::SourceBlock block() const { return {coords_, charges_, dim_}; }

 private:
  std::vector<double> coords_;
  std::vector<double> charges_;
  std::size_t dim_;
};

}  // namespace fieldmarket::detail
