#include <cctype>
#include <filesystem>
#include <fstream>

#include "httplib.h"
#include "tablesense/errors.hpp"
#include "tablesense/html.hpp"
#include "unicode.hpp"

namespace tablesense {

namespace {

namespace fs = std::filesystem;

std::string charset_from_content_type(const std::string& content_type) {
    const std::string lowered = [&] {
        std::string s = content_type;
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    }();
    const size_t pos = lowered.find("charset=");
    if (pos == std::string::npos) return {};
    size_t start = pos + 8;
    size_t end = start;
    while (end < lowered.size() && lowered[end] != ';' && lowered[end] != ' ') ++end;
    return unicode::normalize_charset_name(lowered.substr(start, end - start));
}

SourceDocument fetch_file(const std::string& uri, const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec) || fs::is_directory(path, ec)) {
        throw NotFound("no such file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFound("cannot open: " + path.string());

    SourceDocument doc;
    doc.uri = uri;
    doc.body.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    doc.charset = detect_meta_charset(doc.body);
    if (doc.charset.empty()) doc.charset = "utf-8";
    return doc;
}

SourceDocument fetch_http(const std::string& uri, std::chrono::milliseconds timeout) {
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (uri.rfind("https://", 0) == 0) {
        throw UnsupportedScheme("built without TLS support, cannot fetch: " + uri);
    }
#endif
    // split scheme://host[:port] from /path?query
    const size_t scheme_end = uri.find("://") + 3;
    const size_t path_start = uri.find('/', scheme_end);
    const std::string origin = uri.substr(0, path_start == std::string::npos ? uri.size() : path_start);
    const std::string path = path_start == std::string::npos ? "/" : uri.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    const auto rest = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
    client.set_connection_timeout(static_cast<time_t>(secs.count()), rest.count());
    client.set_read_timeout(static_cast<time_t>(secs.count()), rest.count());

    const httplib::Result res = client.Get(path);
    if (!res) {
        throw NetworkError("fetch failed for " + uri + ": " + httplib::to_string(res.error()));
    }
    if (res->status == 404) throw NotFound("HTTP 404 for " + uri);
    if (res->status < 200 || res->status >= 300) {
        throw NetworkError("HTTP status " + std::to_string(res->status) + " for " + uri);
    }

    SourceDocument doc;
    doc.uri = uri;
    doc.body = res->body;
    doc.charset = charset_from_content_type(res->get_header_value("Content-Type"));
    if (doc.charset.empty()) doc.charset = detect_meta_charset(doc.body);
    if (doc.charset.empty()) doc.charset = "utf-8";
    return doc;
}

} // namespace

SourceDocument fetch_source(const std::string& uri, std::chrono::milliseconds timeout) {
    if (uri.rfind("http://", 0) == 0 || uri.rfind("https://", 0) == 0) {
        return fetch_http(uri, timeout);
    }
    if (uri.rfind("file://", 0) == 0) {
        return fetch_file(uri, fs::path(uri.substr(7)));
    }
    if (uri.find("://") != std::string::npos) {
        throw UnsupportedScheme("unsupported scheme in: " + uri);
    }
    return fetch_file(uri, fs::path(uri));
}

} // namespace tablesense
