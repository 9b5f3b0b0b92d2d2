#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "vaxalloc/allocation.hpp"
#include "vaxalloc/scenario.hpp"

namespace httplib {
class Server;
}

namespace vaxalloc {

struct ServiceOptions {
  // Search time limit for each solve a request triggers; 0 disables it.
  double timeout_seconds = 30.0;
  // Value for Access-Control-Allow-Origin; empty sends no CORS headers.
  std::string allow_origin;
  SpeedModel speeds;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// A solve request as accepted by POST /solve, /sweep and /compare.
struct SolveRequest {
  PlanningParams params;
  std::string district;  // empty: the default district
  std::vector<double> epsilons;
};

// Throws DomainError naming the offending field. Missing fields keep the
// PlanningParams defaults; "model" selects cross-boundary service.
SolveRequest parse_solve_request(const nlohmann::json& body);

// HTTP front end over the planning modules. Districts are loaded before the
// service is marked ready and never change afterwards.
//
//   GET  /district[?name=...]  district summary
//   POST /solve                plan document (422 when INFEASIBLE)
//   POST /sweep                trade-off table
//   POST /compare              Model 1 vs Model 2
class PlannerService {
 public:
  explicit PlannerService(ServiceOptions options = {});
  ~PlannerService();

  // The first district added becomes the default. Computes need and travel
  // times once. Must be called before set_ready().
  void add_district(const std::string& name, District district);
  void set_ready();
  bool ready() const { return ready_.load(std::memory_order_acquire); }

  // Transport-independent request handling; `target` may carry a query.
  Response handle(std::string_view method, std::string_view target, std::string_view body) const;

  // Binds the HTTP listener; port 0 picks a free port. Returns the bound port
  // or -1.
  int bind(const std::string& host, int port);
  // Serves requests until stop().
  bool listen_after_bind();
  void stop();

 private:
  struct Loaded {
    District district;
    NeedMatrix need;
    TravelTimeMatrix times;
  };

  const Loaded* find(const std::string& name) const;
  Response solve(const SolveRequest& request) const;
  Response sweep(const SolveRequest& request) const;
  Response compare(const SolveRequest& request) const;
  MipOptions mip_options() const;
  void install_routes();

  ServiceOptions options_;
  std::map<std::string, std::unique_ptr<Loaded>> districts_;
  std::string default_name_;
  std::atomic<bool> ready_{false};
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace vaxalloc
