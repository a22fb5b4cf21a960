#include "redukt/service.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "redukt/validators.hpp"

namespace redukt::service {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::Malformed, what); }

Result error_result(ErrorCode code, const std::string& message) {
  return {http_status(code), json{{"error", to_string(code)}, {"message", message}}};
}

// Runs a handler body, mapping library errors onto status codes.
template <class F>
Result guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return error_result(e.code(), e.what());
  } catch (const json::exception& e) {
    return error_result(ErrorCode::Malformed, e.what());
  }
}

json object_body(const std::string& body) {
  json doc = parse_document(body);
  if (!doc.is_object()) malformed("request body must be a JSON object");
  return doc;
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) malformed(std::string("missing field '") + key + "'");
  return doc[key];
}

ProblemDef problem_doc(const json& doc) {
  if (doc.is_string()) return parse_problem_name(doc.get<std::string>());
  return problem_from_json(doc);
}

Candidate candidate_doc(const json& req) {
  int present = 0;
  for (const char* key : {"candidate", "reduction", "interpretation"})
    present += req.contains(key) ? 1 : 0;
  if (present != 1)
    malformed("exactly one of candidate, reduction, interpretation is required");
  if (req.contains("reduction")) return reduction_from_json(req["reduction"]);
  if (req.contains("interpretation")) return interpretation_from_json(req["interpretation"]);
  const json& doc = req["candidate"];
  if (!doc.is_object()) malformed("candidate must be an object");
  if (is_gadget_spec_document(doc)) return from_gadget(gadget_spec_from_json(doc));
  const bool cookbook = doc.contains("instructions");
  const bool interp = doc.contains("universe") || doc.contains("dimension");
  if (cookbook && interp) malformed("candidate mixes cookbook and interpretation fields");
  if (cookbook) return reduction_from_json(doc);
  if (interp) return interpretation_from_json(doc);
  malformed("candidate is neither a reduction, a gadget nor an interpretation");
}

const Schema& candidate_source(const Candidate& c) {
  if (const auto* rho = std::get_if<CookbookReduction>(&c)) return rho->source_schema();
  return std::get<QfInterpretation>(c).source;
}

Structure structure_doc(json doc, const Schema& fallback) {
  if (doc.is_object() && !doc.contains("schema")) doc["schema"] = to_json(fallback);
  return structure_from_json(doc);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

Config Config::from_env() {
  Config c;
  if (const char* v = std::getenv("REDUKT_MAX_N")) {
    try {
      c.max_n = std::stoi(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParameters, "REDUKT_MAX_N must be an integer");
    }
  }
  if (const char* v = std::getenv("REDUKT_LOG_PATH")) c.log_path = v;
  if (const char* v = std::getenv("REDUKT_BIND")) c.bind = v;
  if (const char* v = std::getenv("REDUKT_CORS_ORIGINS")) c.cors_origins = split_list(v);
  return c;
}

std::string Result::text() const { return body.dump(2) + "\n"; }

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Malformed:
    case ErrorCode::ParseError:
    case ErrorCode::UnknownElement:
    case ErrorCode::InvalidStructure:
    case ErrorCode::UnboundVariable:
    case ErrorCode::BadParameters:
    case ErrorCode::BadGadget:
      return 400;
    case ErrorCode::SchemaMismatch:
    case ErrorCode::NotInFragment:
    case ErrorCode::NotWellFormed:
    case ErrorCode::LiftFailure:
    case ErrorCode::NotACongruence:
    case ErrorCode::NotSetRespecting:
    case ErrorCode::MissingOrder:
    case ErrorCode::ArityLimitExceeded:
    case ErrorCode::ExplosionGuard:
    case ErrorCode::NodeGraphTooLarge:
      return 422;
    case ErrorCode::SemanticsViolation:
      return 500;
  }
  return 500;
}

Result handle_validate(const std::string& body, const Config& config) {
  return guarded([&]() -> Result {
    const json req = object_body(body);
    const Candidate cand = candidate_doc(req);
    const ProblemDef p = problem_doc(field(req, "source_problem"));
    const ProblemDef p_star = problem_doc(field(req, "target_problem"));
    int budget = std::min(default_budget(candidate_source(cand)), config.max_n);
    if (req.contains("budget")) {
      if (!req["budget"].is_number_integer() || req["budget"].get<int>() < 0)
        malformed("budget must be a non-negative integer");
      budget = req["budget"].get<int>();
      if (budget > config.max_n)
        return {413, json{{"error", "BudgetTooLarge"},
                          {"message", "budget " + std::to_string(budget) +
                                          " exceeds the server ceiling " +
                                          std::to_string(config.max_n)}}};
    }
    return {200, to_json(validate(cand, p, p_star, budget))};
  });
}

Result handle_apply(const std::string& body) {
  return guarded([&]() -> Result {
    const json req = object_body(body);
    const CookbookReduction rho = reduction_from_json(field(req, "reduction"));
    const Structure s = structure_doc(field(req, "structure"), rho.source_schema());
    const WellformedReport report = validate_wellformed(rho);
    if (!report.ok()) {
      Result r = error_result(ErrorCode::NotWellFormed, "reduction is not well-formed");
      r.body["report"] = to_json(report, rho);
      return r;
    }
    return {200, to_json(apply(rho, s))};
  });
}

Result handle_translate(const std::string& body) {
  return guarded([&]() -> Result {
    const json req = object_body(body);
    const CookbookReduction rho = reduction_from_json(field(req, "reduction"));
    QfStage stage = QfStage::Plain;
    if (req.contains("stage")) {
      const json& s = req["stage"];
      if (s == "copying") stage = QfStage::Copying;
      else if (s != "plain") malformed("stage must be copying or plain");
    }
    return {200, to_json(cookbook_to_qf(rho, stage))};
  });
}

Result handle_problems() {
  json pairs = json::array({
      {{"source", "clique"}, {"target", "clique"}, {"gadget", "global"},
       {"requires", "k < l"}, {"decider", "clique-global"}},
      {{"source", "vertex-cover"}, {"target", "feedback-vertex-set"}, {"gadget", "edge"},
       {"requires", "same k >= 1"}, {"decider", "vc-fvs-edge"}},
      {{"source", "hamcycle-d"}, {"target", "hamcycle-u"}, {"gadget", "node"},
       {"requires", "node graph with at most 3 nodes"}, {"decider", "hc-node"}},
  });
  return {200, json{{"problems", problem_registry()},
                    {"characterizations", pairs},
                    {"exists_star", "both problems given as existential sentences"}}};
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::SemanticsViolation, "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

void SessionLog::append(const std::string& endpoint, const std::string& request,
                        const Result& response) {
  if (path_.empty()) return;
  json line{{"time", utc_now()},
            {"endpoint", endpoint},
            {"status", response.status},
            {"request", sha256_hex(request)},
            {"response", sha256_hex(response.text())}};
  std::lock_guard<std::mutex> lock(mu_);
  std::ofstream out(path_, std::ios::app);
  out << line.dump() << "\n";
}

// ---------------------------------------------------------------- http

struct Server::Impl {
  Config config;
  SessionLog log;
  httplib::Server http;

  explicit Impl(Config c) : config(std::move(c)), log(config.log_path) {}

  void reply(httplib::Response& res, const Result& r) {
    res.status = r.status;
    res.set_content(r.text(), "application/json");
  }

  void post(const std::string& path, std::function<Result(const std::string&)> handler) {
    http.Post(path, [this, path, handler](const httplib::Request& req, httplib::Response& res) {
      Result r = handler(req.body);
      log.append(path, req.body, r);
      reply(res, r);
    });
  }

  void routes() {
    post("/api/validate", [this](const std::string& b) { return handle_validate(b, config); });
    post("/api/apply", handle_apply);
    post("/api/translate", handle_translate);
    http.Get("/api/problems", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, handle_problems());
    });
    http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    http.set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      const std::string origin = req.get_header_value("Origin");
      const auto& allowed = config.cors_origins;
      if (!origin.empty() && std::find(allowed.begin(), allowed.end(), origin) != allowed.end()) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Vary", "Origin");
      }
    });
    if (!config.ui_dir.empty()) http.set_mount_point("/", config.ui_dir);
  }
};

Server::Server(Config config) : impl_(std::make_unique<Impl>(std::move(config))) {
  impl_->routes();
}

Server::~Server() = default;

bool Server::listen() {
  const std::string& bind = impl_->config.bind;
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::BadParameters, "bind must be host:port");
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParameters, "bind must be host:port");
  }
  return impl_->http.listen(bind.substr(0, colon), port);
}

int Server::bind_any(const std::string& host) { return impl_->http.bind_to_any_port(host); }
bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }
void Server::stop() { impl_->http.stop(); }
void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace redukt::service
