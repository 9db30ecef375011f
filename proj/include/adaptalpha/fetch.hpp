#pragma once

#include <string>

namespace adaptalpha {

// Plain-http GET, returning the response body. Escape hatch for pulling a
// dataset straight from a URL; nothing in the test suite touches the network.
std::string http_get(const std::string& url);

}  // namespace adaptalpha
