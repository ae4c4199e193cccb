#pragma once

#include <cstddef>

#include "memclust/rng.hpp"

namespace memclust::testing {

/// Lossless rumor-spreading simulation with real populations and an
/// in-process network. Island 0 starts with a strictly best individual and
/// nobody improves locally. Each communication step first drains and merges
/// every mailbox, then lets every island run one gossip step. Returns the
/// number of steps until every island's best is the rumor, or max_steps + 1.
std::size_t gossip_steps_until_everyone_knows(std::size_t islands, Rng& rng, std::size_t max_steps);

}  // namespace memclust::testing
