#ifndef IMIN_IO_HPP
#define IMIN_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "imin/minimizer.hpp"
#include "imin/model.hpp"

namespace imin {

/// Instance file schema:
///   {"beta": real,
///    "model": {"kind": "pathloss"|"gain"|"unitdisk", "alpha": real?, "gain": matrix?},
///    "nodes": [{"id": int, "pos": [reals]?, "xi_max": real}, ...]}
/// Unknown keys are rejected.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst);

nlohmann::json solution_to_json(const Solution& solution);
Solution solution_from_json(const nlohmann::json& j);

void write_solution_file(const std::string& path, const Solution& solution);
Solution read_solution_file(const std::string& path);

/// One row per iteration: l,comps_before,comps_after,h_size,z_prime,raw_max_weight
void write_iteration_csv(std::ostream& out, const std::vector<IterationLog>& logs);

/// 17-significant-digit decimal rendering, locale independent.
std::string format_double(double value);

}  // namespace imin

#endif
