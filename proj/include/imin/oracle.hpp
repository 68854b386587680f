#ifndef IMIN_ORACLE_HPP
#define IMIN_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "imin/minimizer.hpp"
#include "imin/model.hpp"

namespace imin {

struct OracleResult {
    double opt = 0.0;       // minimum achievable I(V) over connected subsets
    EdgeSet best_edges;
    std::uint64_t explored = 0;
};

/// Exact optimum by enumerating every subset of the feasibility edges.
/// nullopt when the feasibility graph itself is disconnected. Throws
/// TooLargeError when |E| > limit.
std::optional<OracleResult> brute_force_opt(const Instance& inst, int limit = 16);

/// Comparison baseline: link every node to its cheapest feasible neighbor,
/// then merge the remaining components along cheapest cross edges.
Solution nearest_neighbor_baseline(const Instance& inst);

/// 1-D chain with consecutive gaps 2^0, 2^1, ...: positions 2^i - 1.
/// PathLoss alpha = 2, beta_acc = 1, xi_max large enough for a complete
/// feasibility graph. n > 40 is refused (powers overflow doubles).
Instance gen_exponential_chain(int n);

/// n points uniform in [0, side]^2, PathLoss model; coincident draws are
/// redrawn. Byte-identical output for identical (n, seed, params).
Instance gen_random_geometric(int n, std::uint64_t seed, double side,
                              double alpha, double beta_acc, double xi_max);

}  // namespace imin

#endif
