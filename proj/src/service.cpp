#include "vaxalloc/service.hpp"

#include <cmath>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "vaxalloc/errors.hpp"
#include "vaxalloc/report.hpp"

namespace vaxalloc {

namespace {

const std::vector<double> kDefaultGrid = {0.03, 0.05, 0.10, 0.15, 0.20, 0.25};

Response json_response(int status, const nlohmann::ordered_json& doc) { return {status, render(doc), "application/json"}; }

Response error_response(int status, const std::string& message) {
  nlohmann::ordered_json doc;
  doc["error"] = message;
  return json_response(status, doc);
}

std::int64_t integer_field(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw DomainError(key + " must be an integer");
  return v.get<std::int64_t>();
}

double number_field(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw DomainError(key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw DomainError(key + " must be finite");
  return x;
}

std::string query_value(const std::string& query, const std::string& key) {
  std::size_t pos = 0;
  while (pos <= query.size()) {
    std::size_t amp = query.find('&', pos);
    if (amp == std::string::npos) amp = query.size();
    const std::size_t eq = query.find('=', pos);
    const std::size_t key_end = eq < amp ? eq : amp;
    if (query.compare(pos, key_end - pos, key) == 0 && key_end - pos == key.size()) {
      return eq < amp ? httplib::detail::decode_url(query.substr(eq + 1, amp - eq - 1), true) : "";
    }
    pos = amp + 1;
  }
  return "";
}

}  // namespace

SolveRequest parse_solve_request(const nlohmann::json& body) {
  if (!body.is_object()) throw DomainError("request body must be a JSON object");
  SolveRequest req;
  for (const auto& [key, value] : body.items()) {
    if (key == "model") {
      const auto m = integer_field(value, key);
      if (m != 1 && m != 2) throw DomainError("model must be 1 or 2");
      req.params.cross_boundary = m == 2;
    } else if (key == "total_vaccinators") {
      req.params.total_vaccinators = integer_field(value, key);
    } else if (key == "equity_deviation") {
      req.params.equity_deviation = number_field(value, key);
    } else if (key == "round_trip_factor") {
      req.params.round_trip_factor = number_field(value, key);
    } else if (key == "children_per_day") {
      req.params.children_per_day = integer_field(value, key);
    } else if (key == "working_days") {
      req.params.working_days = integer_field(value, key);
    } else if (key == "exact_equity") {
      if (value.is_null()) continue;
      if (!value.is_boolean()) throw DomainError("exact_equity must be a boolean");
      req.params.exact_equity = value.get<bool>();
    } else if (key == "district") {
      if (value.is_null()) continue;
      if (!value.is_string()) throw DomainError("district must be a string");
      req.district = value.get<std::string>();
    } else if (key == "epsilons") {
      if (!value.is_array()) throw DomainError("epsilons must be an array of numbers");
      for (const auto& e : value) req.epsilons.push_back(number_field(e, "epsilons"));
    } else {
      throw DomainError("unknown field '" + key + "'");
    }
  }
  req.params.validate();
  return req;
}

PlannerService::PlannerService(ServiceOptions options) : options_(std::move(options)) {}

PlannerService::~PlannerService() = default;

void PlannerService::add_district(const std::string& name, District district) {
  if (ready()) throw Error("districts cannot be added once the service is ready");
  auto loaded = std::make_unique<Loaded>();
  loaded->need = compute_need(district);
  loaded->times = build_matrix(district, options_.speeds);
  loaded->district = std::move(district);
  if (districts_.empty()) default_name_ = name;
  districts_[name] = std::move(loaded);
}

void PlannerService::set_ready() { ready_.store(true, std::memory_order_release); }

const PlannerService::Loaded* PlannerService::find(const std::string& name) const {
  const auto it = districts_.find(name.empty() ? default_name_ : name);
  return it == districts_.end() ? nullptr : it->second.get();
}

MipOptions PlannerService::mip_options() const {
  MipOptions o;
  o.time_limit_seconds = options_.timeout_seconds;
  return o;
}

Response PlannerService::solve(const SolveRequest& request) const {
  const Loaded* d = find(request.district);
  if (!d) return error_response(404, "unknown district '" + request.district + "'");
  const AllocationOutcome outcome = solve_allocation(d->district, d->need, d->times, request.params, mip_options());
  if (outcome.limit_reached) return error_response(504, "solve exceeded the request timeout");
  return json_response(outcome.status == PlanStatus::Optimal ? 200 : 422, plan_to_json(outcome));
}

Response PlannerService::sweep(const SolveRequest& request) const {
  const Loaded* d = find(request.district);
  if (!d) return error_response(404, "unknown district '" + request.district + "'");
  const auto& grid = request.epsilons.empty() ? kDefaultGrid : request.epsilons;
  const TradeoffTable table = vaxalloc::sweep(d->district, d->need, d->times, request.params, grid, 1, mip_options());
  for (const auto& row : table.rows) {
    if (row.limit_reached) return error_response(504, "sweep exceeded the request timeout");
  }
  return json_response(200, tradeoff_to_json(table));
}

Response PlannerService::compare(const SolveRequest& request) const {
  const Loaded* d = find(request.district);
  if (!d) return error_response(404, "unknown district '" + request.district + "'");
  const ModelComparison cmp = compare_models(d->district, d->need, d->times, request.params, mip_options());
  if (cmp.model1.limit_reached || cmp.model2.limit_reached) {
    return error_response(504, "comparison exceeded the request timeout");
  }
  return json_response(200, comparison_to_json(cmp));
}

Response PlannerService::handle(std::string_view method, std::string_view target, std::string_view body) const {
  const auto q = target.find('?');
  const std::string_view path = target.substr(0, q);
  const std::string_view query = q == std::string_view::npos ? std::string_view{} : target.substr(q + 1);

  const bool known = path == "/district" || path == "/solve" || path == "/sweep" || path == "/compare";
  if (!known) return error_response(404, "no such endpoint");
  const std::string_view expected = path == "/district" ? "GET" : "POST";
  if (method != expected) return error_response(405, std::string(path) + " accepts " + std::string(expected));
  if (!ready()) return error_response(503, "district data is still loading");

  try {
    if (path == "/district") {
      const std::string name = query_value(std::string(query), "name");
      const Loaded* d = find(name);
      if (!d) return error_response(404, "unknown district '" + name + "'");
      return json_response(200, district_summary(d->district, d->need, d->times));
    }
    const auto parsed = nlohmann::json::parse(body.begin(), body.end(), nullptr, false);
    if (parsed.is_discarded()) return error_response(400, "request body is not valid JSON");
    const SolveRequest request = parse_solve_request(parsed);
    if (path == "/solve") return solve(request);
    if (path == "/sweep") return sweep(request);
    return compare(request);
  } catch (const DomainError& e) {
    return error_response(400, e.what());
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
}

void PlannerService::install_routes() {
  server_ = std::make_unique<httplib::Server>();
  const auto timeout = std::max<time_t>(1, static_cast<time_t>(std::ceil(options_.timeout_seconds)));
  server_->set_read_timeout(timeout, 0);
  server_->set_write_timeout(timeout, 0);

  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = handle(req.method, req.target, req.body);
    spdlog::info("{} {} -> {}", req.method, req.path, r.status);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  for (const char* path : {"/district", "/solve", "/sweep", "/compare"}) {
    server_->Get(path, forward);
    server_->Post(path, forward);
  }
  if (!options_.allow_origin.empty()) {
    server_->set_default_headers({{"Access-Control-Allow-Origin", options_.allow_origin},
                                  {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                  {"Access-Control-Allow-Headers", "Content-Type"}});
    server_->Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  }
}

int PlannerService::bind(const std::string& host, int port) {
  install_routes();
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool PlannerService::listen_after_bind() { return server_ && server_->listen_after_bind(); }

void PlannerService::stop() {
  if (server_) server_->stop();
}

}  // namespace vaxalloc
