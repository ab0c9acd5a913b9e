#ifndef ROSENBLATT_IO_HPP
#define ROSENBLATT_IO_HPP

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rosenblatt/distribution.hpp"
#include "rosenblatt/domain.hpp"

namespace rosenblatt {

/// Compact one-line domain syntax used by the CLI and config files:
///   interval:a,b
///   box:l1[,l2[,l3]]
///   ball:R[@cx,cy[,cz]]          (center defaults to the origin)
///   union:R1@c1x,c1y;R2@c2x,c2y
///   annulus:Rin,Rout[@cx,cy]
Domain parse_domain(const std::string& text);
std::string format_domain(const Domain& D);

nlohmann::json domain_to_json(const Domain& D);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const RosenblattSpec& spec);

/// Doubles are written with max_digits10 so emitted files are bit-faithful.
std::string format_double(double v);

/// FNV-1a 64-bit over a file's bytes, hex-encoded; used by run manifests.
std::string fnv1a64_file(const std::string& path);

}  // namespace rosenblatt

#endif
