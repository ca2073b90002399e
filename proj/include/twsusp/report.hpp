#pragma once

// JSON reports for the command line and the Python module.

#include <string>

#include "json.hpp"
#include "twsusp/orbitgon.hpp"
#include "twsusp/plumbing.hpp"
#include "twsusp/riccicert.hpp"
#include "twsusp/topology.hpp"

namespace twsusp {

using Json = nlohmann::json;

/// Keys sorted, floats as %.17g, two-space indent, trailing newline.
std::string dump_json(const Json& j);

Json manifold_json(const Manifold& m);
Json gon_json(const GonLabelling& g);
Json plumbing_json(const PlumbingGraph& g);
Json certification_json(const CertificationResult& r);

}  // namespace twsusp
