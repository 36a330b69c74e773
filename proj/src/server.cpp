#include "staircode/server.hpp"

#include <httplib.h>

#include "staircode/io.hpp"

namespace staircode {

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const QueryService& service, std::optional<std::string> static_dir)
    : impl_(std::make_unique<Impl>()) {
  auto& server = impl_->server;
  if (static_dir && !server.set_mount_point("/", *static_dir)) {
    throw InvalidInput("static directory '" + *static_dir + "' does not exist");
  }
  server.Get(R"(/api/.*)", [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    const ServiceResponse r = service.handle(req.path, params);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  });
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    res.set_content(io::Json{{"error", "unknown route '" + req.path + "'"}}.dump(), "application/json");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace staircode
