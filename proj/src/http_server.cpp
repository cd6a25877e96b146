#include "cgraph/http_server.hpp"

#include <httplib.h>

namespace cgraph {

struct StudyHttpServer::Impl {
  StudyService& service;
  httplib::Server server;
  bool bound = false;

  explicit Impl(StudyService& s) : service(s) {}
};

StudyHttpServer::StudyHttpServer(StudyService& service) : impl_(std::make_unique<Impl>(service)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    HttpReply r = impl_->service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto& srv = impl_->server;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  // httplib's default also sets SO_REUSEPORT, which lets a second server
  // silently share a busy port.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  srv.Get(R"(/.*)", forward);
  srv.Post(R"(/.*)", forward);
  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

StudyHttpServer::~StudyHttpServer() { stop(); }

int StudyHttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw BindError("cannot bind " + host + ":" + std::to_string(port));
  impl_->bound = true;
  return bound;
}

void StudyHttpServer::listen() {
  if (!impl_->bound) throw Error("listen before bind");
  impl_->server.listen_after_bind();
}

void StudyHttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void StudyHttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace cgraph
