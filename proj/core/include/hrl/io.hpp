#pragma once

#include <iosfwd>
#include <string>

#include "hrl/hierarchy.hpp"
#include "hrl/mdp.hpp"

namespace hrl {

/// Shortest decimal form that reads back to the same double (at most 17 digits).
std::string format_double(double x);

/// Header "S A H s0", then one line per (s,a) in state-major order holding the
/// reward followed by S probabilities. Optional trailer "terminal i j ...".
void write_mdp(std::ostream& os, const TabularMdp& mdp);
TabularMdp read_mdp(std::istream& is);

void write_hierarchy(std::ostream& os, const LatentHierarchy& h);
LatentHierarchy read_hierarchy(std::istream& is);

void save_mdp(const std::string& path, const TabularMdp& mdp);
TabularMdp load_mdp(const std::string& path);

}  // namespace hrl
