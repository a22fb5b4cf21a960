#include <gtest/gtest.h>

#include <httplib.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <thread>

#include "redukt/graphs.hpp"
#include "redukt/service.hpp"
#include "redukt/validators.hpp"

using namespace redukt;
using service::Config;
using service::Result;

namespace {

const Schema U = Schema::undirected_graph();

json vc_to_fvs_doc() {
  return json::parse(R"({"gadget": "edge",
    "graph": {"universe": ["c", "d", "w"],
              "relations": {"E": [["c", "d"], ["c", "w"], ["d", "w"]]}},
    "c": "c", "d": "d"})");
}

json bare_edge_doc() {
  return json::parse(R"({"gadget": "edge",
    "graph": {"universe": ["c", "d"], "relations": {"E": [["c", "d"]]}},
    "c": "c", "d": "d"})");
}

json k2_doc() {
  return json::parse(R"({"universe": ["a", "b"], "relations": {"E": [["a", "b"]]}})");
}

json validate_req(const json& cand, const std::string& p, const std::string& q) {
  return json{{"candidate", cand}, {"source_problem", p}, {"target_problem", q}};
}

Result validate(const json& req, const Config& c = {}) {
  return service::handle_validate(req.dump(), c);
}

std::string error_of(const Result& r) { return r.body.value("error", ""); }

}  // namespace

// ---------------------------------------------------------------- handlers

TEST(Handlers, ProblemsListsRegistryAndPairs) {
  Result r = service::handle_problems();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["problems"].size(), 7u);
  EXPECT_EQ(r.body["characterizations"].size(), 3u);
  EXPECT_TRUE(r.body.contains("exists_star"));
}

TEST(Handlers, ValidateVcToFvsIsValid) {
  Result r = validate(validate_req(vc_to_fvs_doc(), "2-vc", "2-fvs"));
  ASSERT_EQ(r.status, 200) << r.text();
  EXPECT_EQ(r.body["status"], "valid");
  EXPECT_EQ(r.body["decider"], "vc-fvs-edge");
}

TEST(Handlers, ValidateBareEdgeGivesPathCounterexample) {
  Result r = validate(validate_req(bare_edge_doc(), "1-vc", "1-fvs"));
  ASSERT_EQ(r.status, 200) << r.text();
  EXPECT_EQ(r.body["status"], "invalid");
  const Structure ce = structure_from_json(r.body["counterexample"]);
  EXPECT_TRUE(isomorphic(ce, graphs::path(4)));
  EXPECT_EQ(r.body["source"]["member"], false);
  EXPECT_EQ(r.body["target"]["member"], true);
}

TEST(Handlers, ValidateAcceptsProblemDocuments) {
  json req = validate_req(vc_to_fvs_doc(), "", "");
  req["source_problem"] = json{{"kind", "vertex-cover"}, {"k", 1}};
  req["target_problem"] = json{{"kind", "feedback-vertex-set"}, {"k", 1}};
  Result r = validate(req);
  ASSERT_EQ(r.status, 200) << r.text();
  EXPECT_EQ(r.body["status"], "valid");
}

TEST(Handlers, ValidateRejectsMixedCandidateFields) {
  json req = validate_req(vc_to_fvs_doc(), "1-vc", "1-fvs");
  req["reduction"] = to_json(fixtures::vc_to_fvs());
  Result r = validate(req);
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(error_of(r), "Malformed");

  json cand = to_json(fixtures::vc_to_fvs());
  cand["dimension"] = 2;
  r = validate(validate_req(cand, "1-vc", "1-fvs"));
  EXPECT_EQ(r.status, 400);
}

TEST(Handlers, BudgetCeilingAndShape) {
  json req = validate_req(bare_edge_doc(), "1-vc", "1-fvs");
  req["budget"] = 7;
  Result r = validate(req);
  EXPECT_EQ(r.status, 413);
  EXPECT_EQ(error_of(r), "BudgetTooLarge");

  Config wide;
  wide.max_n = 7;
  EXPECT_EQ(validate(req, wide).status, 200);

  req["budget"] = -1;
  EXPECT_EQ(validate(req).status, 400);
  req["budget"] = "3";
  EXPECT_EQ(validate(req).status, 400);
}

TEST(Handlers, BadProblemsAreClientErrors) {
  EXPECT_EQ(validate(validate_req(vc_to_fvs_doc(), "vc", "1-fvs")).status, 400);
  json req = validate_req(vc_to_fvs_doc(), "1-vc", "");
  req["target_problem"] = json{{"kind", "clique"}};
  EXPECT_EQ(error_of(validate(req)), "BadParameters");
  req.erase("target_problem");
  EXPECT_EQ(error_of(validate(req)), "Malformed");
}

TEST(Handlers, SchemaMismatchIs422) {
  Result r = validate(validate_req(vc_to_fvs_doc(), "hamcycle-d", "1-fvs"));
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(error_of(r), "SchemaMismatch");
}

TEST(Handlers, MalformedBodies) {
  for (const char* body : {"", "{", "[1, 2]", "\"text\"", "{\"reduction\": 3}"}) {
    Result r = service::handle_apply(body);
    EXPECT_EQ(r.status, 400) << body;
    EXPECT_TRUE(r.body.contains("message"));
  }
  EXPECT_EQ(service::handle_translate("{}").status, 400);
  EXPECT_EQ(service::handle_validate("nope", Config{}).status, 400);
}

TEST(Handlers, ApplyVcToFvsOnEdge) {
  json req{{"reduction", vc_to_fvs_doc()}, {"structure", k2_doc()}};
  Result r = service::handle_apply(req.dump());
  ASSERT_EQ(r.status, 200) << r.text();
  const Structure out = structure_from_json(r.body);
  EXPECT_TRUE(isomorphic(out, graphs::cycle(3)));
}

TEST(Handlers, ApplyUnknownElementIs400) {
  json s = k2_doc();
  s["relations"]["E"].push_back({"a", "z"});
  Result r = service::handle_apply(json{{"reduction", vc_to_fvs_doc()}, {"structure", s}}.dump());
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(error_of(r), "UnknownElement");
}

TEST(Handlers, ApplyNotWellFormedCarriesReport) {
  CookbookReduction broken(U, U, {fixtures::vc_to_fvs().instructions()[1]});
  Result r = service::handle_apply(json{{"reduction", to_json(broken)}, {"structure", k2_doc()}}.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(error_of(r), "NotWellFormed");
  ASSERT_TRUE(r.body.contains("report"));
  EXPECT_NE(r.body["report"].dump().find("P2"), std::string::npos);
}

TEST(Handlers, TranslateStages) {
  const json rho = to_json(fixtures::vc_to_fvs());
  Result plain = service::handle_translate(json{{"reduction", rho}}.dump());
  Result copying = service::handle_translate(json{{"reduction", rho}, {"stage", "copying"}}.dump());
  ASSERT_EQ(plain.status, 200);
  ASSERT_EQ(copying.status, 200);
  EXPECT_EQ(plain.body["dimension"], 6);
  EXPECT_EQ(copying.body["dimension"], 3);
  EXPECT_EQ(copying.body["copies"], 3);
  EXPECT_EQ(service::handle_translate(json{{"reduction", rho}, {"stage", "x"}}.dump()).status, 400);
}

TEST(Handlers, StatusMapping) {
  EXPECT_EQ(service::http_status(ErrorCode::ParseError), 400);
  EXPECT_EQ(service::http_status(ErrorCode::BadGadget), 400);
  EXPECT_EQ(service::http_status(ErrorCode::ExplosionGuard), 422);
  EXPECT_EQ(service::http_status(ErrorCode::NodeGraphTooLarge), 422);
  EXPECT_EQ(service::http_status(ErrorCode::SemanticsViolation), 500);
}

TEST(Handlers, Sha256KnownDigests) {
  EXPECT_EQ(service::sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(service::sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Handlers, StatelessUnderPermutation) {
  std::vector<std::function<Result()>> calls = {
      [] { return validate(validate_req(vc_to_fvs_doc(), "1-vc", "1-fvs")); },
      [] { return validate(validate_req(bare_edge_doc(), "2-vc", "2-fvs")); },
      [] { return service::handle_problems(); },
      [] {
        return service::handle_apply(
            json{{"reduction", bare_edge_doc()}, {"structure", k2_doc()}}.dump());
      },
      [] { return service::handle_translate(json{{"reduction", bare_edge_doc()}}.dump()); },
      [] { return service::handle_apply("{"); },
  };
  std::vector<std::string> first;
  for (auto& c : calls) first.push_back(c().text());
  std::vector<int> order(calls.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(7);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int i : order) EXPECT_EQ(calls[i]().text(), first[i]) << i;
  }
}

// ---------------------------------------------------------------- session log

TEST(SessionLog, WritesOneDigestLinePerCall) {
  const std::string path = ::testing::TempDir() + "redukt_session.log";
  std::remove(path.c_str());
  service::SessionLog log(path);
  Result r = service::handle_problems();
  log.append("/api/problems", "", r);
  log.append("/api/apply", "{", service::handle_apply("{"));
  std::ifstream in(path);
  std::vector<json> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(json::parse(line));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0]["endpoint"], "/api/problems");
  EXPECT_EQ(lines[0]["status"], 200);
  EXPECT_EQ(lines[0]["request"], service::sha256_hex(""));
  EXPECT_EQ(lines[0]["response"], service::sha256_hex(r.text()));
  EXPECT_EQ(lines[1]["status"], 400);
  EXPECT_EQ(lines[0]["time"].get<std::string>().size(), 20u);
}

TEST(SessionLog, EmptyPathDisables) {
  service::SessionLog log("");
  EXPECT_NO_THROW(log.append("/api/problems", "", service::handle_problems()));
}

// ---------------------------------------------------------------- http

namespace {

struct LiveServer {
  Config config;
  std::unique_ptr<service::Server> server;
  std::thread thread;
  int port = -1;

  explicit LiveServer(Config c) : config(std::move(c)) {
    server = std::make_unique<service::Server>(config);
    port = server->bind_any("127.0.0.1");
    thread = std::thread([this] { server->listen_after_bind(); });
    server->wait_until_ready();
  }
  ~LiveServer() {
    server->stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

}  // namespace

TEST(Http, RoundTripMatchesHandlers) {
  const std::string log_path = ::testing::TempDir() + "redukt_http.log";
  std::remove(log_path.c_str());
  Config c;
  c.log_path = log_path;
  LiveServer live(c);
  ASSERT_GT(live.port, 0);
  auto cli = live.client();

  const std::string vreq = validate_req(vc_to_fvs_doc(), "1-vc", "1-fvs").dump();
  auto res = cli.Post("/api/validate", vreq, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, service::handle_validate(vreq, c).text());
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");

  const std::string areq = json{{"reduction", vc_to_fvs_doc()}, {"structure", k2_doc()}}.dump();
  res = cli.Post("/api/apply", areq, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->body, service::handle_apply(areq).text());

  const std::string treq = json{{"reduction", bare_edge_doc()}, {"stage", "copying"}}.dump();
  res = cli.Post("/api/translate", treq, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->body, service::handle_translate(treq).text());

  res = cli.Get("/api/problems");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->body, service::handle_problems().text());

  res = cli.Post("/api/apply", "{", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);

  json big = json::parse(vreq);
  big["budget"] = 50;
  res = cli.Post("/api/validate", big.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 413);

  std::ifstream in(log_path);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 5);  // POSTs only
}

TEST(Http, CorsAllowlist) {
  Config c;
  c.cors_origins = {"http://ui.example"};
  LiveServer live(c);
  auto cli = live.client();

  auto res = cli.Get("/api/problems", httplib::Headers{{"Origin", "http://ui.example"}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "http://ui.example");

  res = cli.Get("/api/problems", httplib::Headers{{"Origin", "http://evil.example"}});
  ASSERT_TRUE(res);
  EXPECT_FALSE(res->has_header("Access-Control-Allow-Origin"));

  res = cli.Options("/api/validate", httplib::Headers{{"Origin", "http://ui.example"}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "http://ui.example");
  EXPECT_NE(res->get_header_value("Access-Control-Allow-Methods").find("POST"),
            std::string::npos);
}

TEST(Http, UnknownRouteIs404) {
  LiveServer live(Config{});
  auto cli = live.client();
  auto res = cli.Get("/api/nothing");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

// Random requests over HTTP agree with direct library calls.
TEST(Http, FuzzAgreesWithLibrary) {
  LiveServer live(Config{});
  auto cli = live.client();
  std::mt19937 rng(20240611);
  const std::vector<CookbookReduction> reductions = {
      fixtures::vc_to_fvs(), fixtures::clique_3_to_4(),
      from_gadget(gadget_spec_from_json(bare_edge_doc()))};
  const auto globals = global_gadget_family(2);

  for (int i = 0; i < 1000; ++i) {
    const int kind = rng() % 4;
    if (kind <= 1) {
      const auto& rho = reductions[rng() % reductions.size()];
      const int n = rng() % 5;
      std::vector<graphs::Edge> edges;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (rng() % 2) edges.push_back({a, b});
      const Structure g = graphs::undirected(n, edges);
      const std::string body = json{{"reduction", to_json(rho)}, {"structure", to_json(g)}}.dump();
      auto res = cli.Post("/api/apply", body, "application/json");
      ASSERT_TRUE(res);
      ASSERT_EQ(res->status, 200) << res->body;
      ASSERT_EQ(json::parse(res->body), to_json(apply(rho, g))) << i;
    } else if (kind == 2) {
      const auto& spec = globals[rng() % globals.size()];
      const int k = 1 + rng() % 3;
      const int l = k + 1 + rng() % 2;
      const std::string body =
          validate_req(to_json(spec), std::to_string(k) + "-clique", std::to_string(l) + "-clique")
              .dump();
      auto res = cli.Post("/api/validate", body, "application/json");
      ASSERT_TRUE(res);
      ASSERT_EQ(res->status, 200) << res->body;
      ASSERT_EQ(json::parse(res->body), to_json(validate_clique_global(spec, k, l))) << i;
    } else {
      // Truncated documents are rejected as client errors.
      std::string body = json{{"reduction", bare_edge_doc()}, {"structure", k2_doc()}}.dump();
      body.resize(rng() % body.size());
      auto res = cli.Post("/api/apply", body, "application/json");
      ASSERT_TRUE(res);
      ASSERT_EQ(res->status, 400) << body;
    }
  }
}
