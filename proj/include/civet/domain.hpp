#pragma once

#include <string>
#include <string_view>

namespace civet {

/// Registered domain (eTLD+1) of an absolute http/https URL, lowercase,
/// with a single leading "www." label stripped before suffix resolution.
/// Throws Error with code malformed_url, ip_host, or no_registered_domain.
std::string extract_domain(std::string_view url);

/// Same resolution applied to a bare host (no scheme/path).
std::string registered_domain_of_host(std::string_view host);

} // namespace civet
