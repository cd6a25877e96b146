#pragma once

#include <memory>
#include <string>

#include "cgraph/error.hpp"
#include "cgraph/study.hpp"

namespace cgraph {

/// The port could not be bound (typically already in use).
class BindError : public Error {
 public:
  using Error::Error;
};

/// Serves StudyService::handle over HTTP/1.1.
class StudyHttpServer {
 public:
  explicit StudyHttpServer(StudyService& service);
  ~StudyHttpServer();
  StudyHttpServer(const StudyHttpServer&) = delete;
  StudyHttpServer& operator=(const StudyHttpServer&) = delete;

  /// Returns the bound port; port 0 picks a free one.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cgraph
