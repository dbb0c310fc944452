#include "civet/domain.hpp"

#include "civet/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <unordered_set>
#include <vector>

namespace civet {

namespace psl {
extern const char* const kRules[];
extern const size_t kRuleCount;
} // namespace psl

namespace {

struct RuleSets {
    std::unordered_set<std::string_view> exact;
    std::unordered_set<std::string_view> wildcard;  // tail after "*."
    std::unordered_set<std::string_view> exception; // rule without "!"
};

const RuleSets& rule_sets() {
    static const RuleSets sets = [] {
        RuleSets s;
        for (size_t i = 0; i < psl::kRuleCount; ++i) {
            std::string_view rule = psl::kRules[i];
            if (rule.starts_with("!")) {
                s.exception.insert(rule.substr(1));
            } else if (rule.starts_with("*.")) {
                s.wildcard.insert(rule.substr(2));
            } else {
                s.exact.insert(rule);
            }
        }
        return s;
    }();
    return sets;
}

std::string ascii_lower(std::string_view in) {
    std::string out(in);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_dotted_quad(const std::vector<std::string_view>& labels) {
    if (labels.size() != 4) return false;
    for (auto l : labels) {
        if (l.empty() || l.size() > 3) return false;
        int v = 0;
        for (char c : l) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
            v = v * 10 + (c - '0');
        }
        if (v > 255) return false;
    }
    return true;
}

std::vector<std::string_view> split_labels(std::string_view host) {
    std::vector<std::string_view> labels;
    size_t start = 0;
    while (start <= host.size()) {
        size_t dot = host.find('.', start);
        if (dot == std::string_view::npos) {
            labels.push_back(host.substr(start));
            break;
        }
        labels.push_back(host.substr(start, dot - start));
        start = dot + 1;
    }
    return labels;
}

std::string_view join_from(std::string_view host, const std::vector<std::string_view>& labels,
                           size_t first) {
    const char* begin = labels[first].data();
    const char* end = host.data() + host.size();
    return std::string_view(begin, static_cast<size_t>(end - begin));
}

// Longest matching rule wins; exception rules win outright and name a suffix
// one label shorter than themselves. No match falls back to the default "*"
// rule (suffix = last label, registered domain = last two labels).
size_t public_suffix_label_count(std::string_view host, const std::vector<std::string_view>& labels) {
    const RuleSets& rules = rule_sets();
    const size_t n = labels.size();
    size_t best = 1;
    for (size_t i = 0; i < n; ++i) {
        std::string_view suffix = join_from(host, labels, i);
        if (rules.exception.contains(suffix)) return (n - i) - 1;
        if (rules.exact.contains(suffix)) best = std::max(best, n - i);
        if (i + 1 < n && rules.wildcard.contains(join_from(host, labels, i + 1))) {
            best = std::max(best, n - i);
        }
    }
    return best;
}

} // namespace

std::string registered_domain_of_host(std::string_view raw_host) {
    std::string host = ascii_lower(raw_host);
    while (!host.empty() && host.back() == '.') host.pop_back();
    if (host.empty()) throw Error(errc::malformed_url, "empty host");
    if (host.front() == '[' || host.find(':') != std::string::npos) {
        throw Error(errc::ip_host, "IPv6 literal host: " + host);
    }

    for (unsigned char c : host) {
        bool ok = std::isalnum(c) || c == '.' || c == '-' || c == '_' || c >= 0x80;
        if (!ok) throw Error(errc::malformed_url, "bad character in host: " + host);
    }

    auto labels = split_labels(host);
    for (auto l : labels) {
        if (l.empty()) throw Error(errc::malformed_url, "empty label in host: " + host);
    }
    if (is_dotted_quad(labels)) {
        throw Error(errc::ip_host, "IPv4 literal host: " + host);
    }

    // Strip one leading "www." label, but never down to a bare suffix pair.
    if (labels.size() >= 3 && labels.front() == "www") {
        host.erase(0, 4);
        labels.erase(labels.begin());
        labels = split_labels(host); // re-anchor views onto the shortened string
    }

    size_t suffix_len = public_suffix_label_count(host, labels);
    if (suffix_len >= labels.size()) {
        throw Error(errc::no_registered_domain,
                    "host is itself a public suffix: " + host);
    }
    size_t first = labels.size() - suffix_len - 1;
    return std::string(join_from(host, labels, first));
}

std::string extract_domain(std::string_view url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) {
        throw Error(errc::malformed_url, "not an absolute URL: " + std::string(url));
    }
    std::string scheme = ascii_lower(url.substr(0, scheme_end));
    if (scheme != "http" && scheme != "https") {
        throw Error(errc::malformed_url, "unsupported scheme: " + scheme);
    }

    std::string_view rest = url.substr(scheme_end + 3);
    size_t authority_end = rest.find_first_of("/?#");
    std::string_view authority =
        authority_end == std::string_view::npos ? rest : rest.substr(0, authority_end);

    // Drop userinfo, then a trailing :port.
    if (size_t at = authority.rfind('@'); at != std::string_view::npos) {
        authority = authority.substr(at + 1);
    }
    if (!authority.empty() && authority.front() == '[') {
        throw Error(errc::ip_host, "IPv6 literal host: " + std::string(authority));
    }
    if (size_t colon = authority.rfind(':'); colon != std::string_view::npos) {
        std::string_view port = authority.substr(colon + 1);
        bool digits = !port.empty() &&
                      std::all_of(port.begin(), port.end(),
                                  [](unsigned char c) { return std::isdigit(c); });
        if (!digits) {
            throw Error(errc::malformed_url,
                        "bad authority component: " + std::string(authority));
        }
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) {
        throw Error(errc::malformed_url, "missing host: " + std::string(url));
    }
    return registered_domain_of_host(authority);
}

} // namespace civet
