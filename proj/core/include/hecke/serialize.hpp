#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hecke/continued_fraction.hpp"
#include "hecke/orbits.hpp"
#include "hecke/partition.hpp"
#include "hecke/transfer.hpp"
#include "hecke/zeta.hpp"

namespace hecke {

using Json = nlohmann::json;

// Sorted keys, doubles with 16 significant digits, two-space indentation, trailing newline.
std::string dump_json(const Json& j);

Json to_json(cplx z);  // {"im": ..., "re": ...}
Json to_json(const CFExpansion& e);
Json to_json(const MarkovPartition& p);
Json to_json(const DiscSystem& d);
Json to_json(const DiscReport& r);
Json to_json(const ZetaEval& z);
Json to_json(const EigenFunction& ef);
// {"cols", "entries": [[re, im], ...] row-major, "kind", "N", "rows", "s"}
Json to_json(const BlockMatrix& m);

// Header plus one line per record; header only when empty.
std::string orbits_csv(const std::vector<OrbitRecord>& orbits);
std::string scan_csv(const std::vector<ZeroCandidate>& zeros);

// %.16g
std::string format_double(double x);

} // namespace hecke
