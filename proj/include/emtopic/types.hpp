#pragma once

#include <cstdint>

namespace emtopic {

// Dense index of a publication inside a CitationGraph (sorted-id order).
using NodeIndex = std::uint32_t;

// Dense cluster label, 0-based.
using ClusterId = std::uint32_t;

}  // namespace emtopic
