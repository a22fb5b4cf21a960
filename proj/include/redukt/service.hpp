#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "redukt/json_io.hpp"

namespace redukt::service {

struct Config {
  // Largest brute-force budget a request may ask for (REDUKT_MAX_N).
  int max_n = 6;
  // Session log file; empty disables logging (REDUKT_LOG_PATH).
  std::string log_path;
  // host:port (REDUKT_BIND).
  std::string bind = "127.0.0.1:8080";
  // Origins allowed by CORS (REDUKT_CORS_ORIGINS, comma-separated).
  std::vector<std::string> cors_origins = {"http://localhost:5173", "http://127.0.0.1:5173",
                                           "http://localhost:3000", "http://127.0.0.1:3000"};
  // Static UI bundle mounted at / when set.
  std::string ui_dir;

  static Config from_env();
};

struct Result {
  int status = 200;
  json body;

  // Canonical rendering shared by the HTTP layer and the CLI.
  std::string text() const;
};

int http_status(ErrorCode code);

// {candidate | reduction | interpretation, source_problem, target_problem,
// budget?}; problems are ProblemDef documents or names such as "2-vc".
Result handle_validate(const std::string& body, const Config& config);
// {reduction, structure}
Result handle_apply(const std::string& body);
// {reduction, stage?: "copying" | "plain"}
Result handle_translate(const std::string& body);
Result handle_problems();

std::string sha256_hex(const std::string& data);

// Append-only JSON lines: time, endpoint, request and response digests.
class SessionLog {
 public:
  explicit SessionLog(std::string path) : path_(std::move(path)) {}
  void append(const std::string& endpoint, const std::string& request, const Result& response);

 private:
  std::string path_;
  std::mutex mu_;
};

class Server {
 public:
  explicit Server(Config config);
  ~Server();

  // Blocks until stop(); false if the address cannot be bound.
  bool listen();
  // Binds an ephemeral port on host; returns it, or -1.
  int bind_any(const std::string& host = "127.0.0.1");
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace redukt::service
