#pragma once

#include <string>

namespace symvoro {

struct ServiceResponse {
    int status = 200;
    std::string body;  // JSON
};

/// GET /api/groups
ServiceResponse handle_groups();

/// POST /api/tessellate. 400 for scene errors (with field diagnostics),
/// 422 for pipeline errors (with the failing stage).
ServiceResponse handle_tessellate(const std::string& request_body);

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
};

/// Blocks serving the API until the process is stopped. Returns false if the
/// port could not be bound.
bool serve(const ServiceConfig& config);

}  // namespace symvoro
