#pragma once

#include <cstddef>

namespace galoisforge {

// Enumeration limits. Every exhaustive search in the library checks the
// relevant field before (or while) enumerating and throws CapExceeded.
struct Caps
{
  std::size_t set_size = 12;           // |M| for lattice and quotient searches
  std::size_t group_order = 24;        // abstract groups built from products
  std::size_t fiber_size = 8;          // fibers in splitting enumeration
  std::size_t perm_group_order = 5040; // permutation groups (closures, Aut_B(M))
  std::size_t groupoid_arrows = 256;   // subgroupoid enumeration
  std::size_t field_size = 64;         // p^n for finite fields
  std::size_t enumeration_results = 200000;
};

} // namespace galoisforge
