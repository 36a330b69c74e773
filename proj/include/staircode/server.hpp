#pragma once

#include <memory>
#include <optional>
#include <string>

#include "staircode/service.hpp"

namespace staircode {

/// HTTP front end for a QueryService. GET /api/... is answered by the service;
/// with a static directory, other paths serve files from it.
class HttpServer {
 public:
  explicit HttpServer(const QueryService& service, std::optional<std::string> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called. Requires a successful bind().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace staircode
