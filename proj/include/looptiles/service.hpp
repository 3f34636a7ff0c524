#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>

#include <httplib.h>

#include "looptiles/render.hpp"
#include "looptiles/search.hpp"
#include "looptiles/verifier.hpp"
#include "looptiles/wire.hpp"

namespace looptiles {

struct ServiceLimits {
  std::int64_t max_search_evals = 1000000;
  int max_restarts = 64;

  /// SEARCH_MAX_EVALS overrides the evaluation cap when set.
  static ServiceLimits from_env() {
    ServiceLimits l;
    if (const char* v = std::getenv("SEARCH_MAX_EVALS")) {
      try {
        l.max_search_evals = std::stoll(v);
      } catch (const std::exception&) {
      }
    }
    return l;
  }
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

namespace api {

inline ApiResponse error(int status, const std::string& message) {
  json j = {{"schema", kSchemaVersion}, {"error", message}};
  return {status, "application/json", j.dump()};
}

inline ApiResponse ok(const json& j) { return {200, "application/json", j.dump()}; }

inline ApiResponse config_error(const ConfigError& e) {
  return error(e.is_policy_violation() ? 422 : 400, e.what());
}

/// Maps the library's exceptions onto status codes.
template <typename F>
ApiResponse guarded(F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    return config_error(e);
  } catch (const json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, e.what());
  } catch (const std::out_of_range& e) {
    return error(400, e.what());
  }
}

inline json parse_body(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ConfigError(ConfigError::Kind::Malformed, "request body is not JSON");
  return j;
}

// POST /api/analyze: Configuration -> AnalysisReport
inline ApiResponse analyze(const std::string& body) {
  return guarded([&] {
    const Configuration config = parse_config(body);
    return ok(report_to_json(looptiles::analyze(config)));
  });
}

// POST /api/toggle: {config, row, col, side} -> {config, deltaLoops, deltaCrossings}
inline ApiResponse toggle(const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body);
    const Configuration config = config_from_json(j.at("config"));
    const Side side = parse_side(j.at("side").get<std::string>());
    const ToggleResult t = toggle_side(config, j.at("row").get<int>(), j.at("col").get<int>(), side);
    return ok({{"schema", kSchemaVersion},
               {"config", config_to_json(t.config)},
               {"loopsBefore", t.loops_before},
               {"loopsAfter", t.loops_after},
               {"deltaLoops", t.delta_loops},
               {"deltaCrossings", t.delta_crossings}});
  });
}

// POST /api/search: {policy, objective, budget, seed, restarts?} -> SearchResult
inline ApiResponse search(const std::string& body, const ServiceLimits& limits) {
  return guarded([&] {
    const json j = parse_body(body);
    SearchParams p;
    p.policy = parse_policy(j.value("policy", std::string("distinct")));
    p.objective = parse_objective(j.value("objective", std::string("max-loops")));
    p.budget = j.value("budget", std::int64_t{10000});
    p.seed = j.value("seed", std::uint64_t{1});
    p.restarts = j.value("restarts", 4);
    if (p.budget < 0 || p.restarts < 1) return error(400, "budget and restarts must be positive");
    if (p.budget > limits.max_search_evals || p.restarts > limits.max_restarts) {
      return error(413, "budget " + std::to_string(p.budget) + " exceeds cap " +
                            std::to_string(limits.max_search_evals));
    }
    return ok(search_to_json(local_search(p)));
  });
}

inline bool flag(const httplib::Params& q, const char* key, bool fallback) {
  auto it = q.find(key);
  if (it == q.end()) return fallback;
  return it->second == "1" || it->second == "true" || it->second == "on";
}

// GET /api/render?config=<rows separated by '/' or newlines>&mode=&policy=&tile=&loops=&weave=&labels=&grid=
inline ApiResponse render(const httplib::Params& q) {
  return guarded([&]() -> ApiResponse {
    auto it = q.find("config");
    if (it == q.end()) return error(400, "missing 'config' query parameter");
    std::string text = it->second;
    for (auto& ch : text) {
      if (ch == '/' || ch == ',' || ch == ';') ch = '\n';
    }
    ParseDefaults d;
    if (auto m = q.find("mode"); m != q.end()) d.mode = parse_mode(m->second);
    if (auto p = q.find("policy"); p != q.end()) d.policy = parse_policy(p->second);
    const Configuration config = parse_config(text, d);
    RenderOptions opt;
    if (auto t = q.find("tile"); t != q.end()) opt.tile_size = std::stod(t->second);
    if (opt.tile_size <= 0) return error(400, "tile must be positive");
    opt.show_loops_colored = flag(q, "loops", true);
    opt.show_weave = flag(q, "weave", true);
    opt.show_labels = flag(q, "labels", false);
    opt.show_grid = flag(q, "grid", true);
    return ApiResponse{200, "image/svg+xml", render_svg(config, opt)};
  });
}

inline ApiResponse tiles() { return ok(tiles_to_json()); }

}  // namespace api

/// Stateless local JSON service over the engine.
class Service {
 public:
  explicit Service(ServiceLimits limits = ServiceLimits::from_env()) : limits_(limits) {
    auto reply = [](httplib::Response& res, const ApiResponse& r) {
      res.status = r.status;
      res.set_header("X-Schema-Version", std::to_string(kSchemaVersion));
      res.set_content(r.body, r.content_type);
    };
    server_.Post("/api/analyze", [reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, api::analyze(req.body));
    });
    server_.Post("/api/toggle", [reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, api::toggle(req.body));
    });
    server_.Post("/api/search", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, api::search(req.body, limits_));
    });
    server_.Get("/api/render", [reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, api::render(req.params));
    });
    server_.Get("/api/tiles", [reply](const httplib::Request&, httplib::Response& res) {
      reply(res, api::tiles());
    });
    server_.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    server_.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
  }

  /// Binds to an OS-chosen port; returns it, or -1 on failure.
  int bind_any(const std::string& host = "127.0.0.1") { return server_.bind_to_any_port(host); }
  bool bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  bool listen(const std::string& host, int port) { return server_.listen(host, port); }
  void stop() { server_.stop(); }
  bool running() const { return server_.is_running(); }
  void wait_until_ready() { server_.wait_until_ready(); }

 private:
  ServiceLimits limits_;
  httplib::Server server_;
};

}  // namespace looptiles
