#pragma once

// Minimal blocking HTTP helpers over cpp-httplib. Plain http:// only.

#include <chrono>
#include <string>

#include <httplib.h>

#include "camtune/error.hpp"

namespace camtune::net {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string target;  // path plus query, at least "/"
};

inline Url split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("url without scheme: " + url);
  if (url.compare(0, scheme_end, "http") != 0) {
    throw ConfigError("only http:// urls are supported: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

struct Response {
  int status = 0;
  std::string content_type;
  std::string body;
};

namespace detail {

inline httplib::Client make_client(const Url& u, int timeout_ms) {
  httplib::Client client(u.origin);
  const auto timeout = std::chrono::milliseconds(timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  return client;
}

inline Response finish(const httplib::Result& res, const std::string& url) {
  if (!res) {
    throw TransportError("request to " + url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportError("request to " + url + " returned status " + std::to_string(res->status));
  }
  return {res->status, res->get_header_value("Content-Type"), res->body};
}

}  // namespace detail

/// GET expecting status 200; anything else is a TransportError.
inline Response get(const std::string& url, int timeout_ms) {
  const Url u = split_url(url);
  auto client = detail::make_client(u, timeout_ms);
  return detail::finish(client.Get(u.target), url);
}

inline Response post(const std::string& url, const std::string& body,
                     const std::string& content_type, int timeout_ms) {
  const Url u = split_url(url);
  auto client = detail::make_client(u, timeout_ms);
  return detail::finish(client.Post(u.target, body, content_type), url);
}

}  // namespace camtune::net
