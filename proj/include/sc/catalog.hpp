#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sc/identity.hpp"

namespace sc {

// Every registered identity, instantiated on [t, T]. Parameterized sum
// families are expanded for k = 2..5 and all 1 <= m <= k.
std::vector<Identity> catalog_all(double t, double T);

// Single entry by exact id.
std::optional<Identity> catalog_lookup(const std::string& id, double t, double T);

// Shell-style glob over ids ('*' and '?').
bool glob_match(const std::string& pattern, const std::string& text);
std::vector<Identity> catalog_filter(const std::string& pattern, double t, double T);

// The sum-family identity: all C(k, m) multi-indices with exactly m ones on
// the left, the single m-fold integral scaled by (T-t)^(k-m)/(k-m)! on the
// right. 1 <= m <= k <= 6.
Identity expand_sum_family(std::size_t k, std::size_t m, double t, double T);

// Anchor -> description for every citation used by the catalog.
const std::vector<std::pair<std::string, std::string>>& catalog_bibliography();

}  // namespace sc
