#include "adaptalpha/fetch.hpp"

#include <httplib.h>

#include "adaptalpha/errors.hpp"

namespace adaptalpha {

std::string http_get(const std::string& url) {
    const std::string prefix = "http://";
    if (url.rfind("https://", 0) == 0)
        throw error("io", "https is not supported; fetch over http or download manually");
    if (url.rfind(prefix, 0) != 0)
        throw error("io", "--fetch-url expects an http:// URL");
    const std::string rest = url.substr(prefix.size());
    const auto slash = rest.find('/');
    const std::string host = rest.substr(0, slash);
    const std::string path = slash == std::string::npos ? "/" : rest.substr(slash);
    httplib::Client client(host);
    client.set_follow_location(true);
    auto result = client.Get(path);
    if (!result)
        throw error("io", "fetch failed: " + httplib::to_string(result.error()));
    if (result->status != 200)
        throw error("io", "fetch failed: HTTP " + std::to_string(result->status));
    return result->body;
}

}  // namespace adaptalpha
