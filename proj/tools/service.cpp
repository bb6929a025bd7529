#include "service.hpp"

#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

namespace hvd_tools {

using nlohmann::json;

namespace {

struct Failure {
  int status;
  std::string message;
};

[[noreturn]] void fail(int status, std::string message) { throw Failure{status, std::move(message)}; }

void check(hvd_status s) {
  if (s != HVD_OK) fail(400, hvd_last_error());
}

Reply error_reply(const Failure& f) { return {f.status, json{{"error", f.message}}.dump() + "\n"}; }

json parse_body(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) fail(400, "request body must be a JSON object");
  return j;
}

double number_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) fail(400, std::string("\"") + key + "\" must be a number");
  return it->get<double>();
}

hvd_model model_from(const std::string& name) {
  hvd_model m;
  if (hvd_model_parse(name.c_str(), &m) != HVD_OK) fail(400, hvd_last_error());
  return m;
}

hvd_model model_field(const json& j, const char* fallback) {
  const auto it = j.find("model");
  if (it == j.end()) return model_from(fallback);
  if (!it->is_string()) fail(400, "\"model\" must be text");
  return model_from(it->get<std::string>());
}

std::string take(char* s) {
  std::string out(s);
  hvd_string_free(s);
  return out;
}

template <class F>
Reply guarded(F&& f) {
  try {
    return f();
  } catch (const Failure& e) {
    return error_reply(e);
  } catch (const std::exception& e) {
    return error_reply({500, e.what()});
  }
}

}  // namespace

struct Service::Snapshot {
  long long id = 0;
  hvd_pointset* ps = nullptr;
  hvd_diagram* diagram = nullptr;

  ~Snapshot() {
    hvd_diagram_free(diagram);
    hvd_pointset_free(ps);
  }

  json scene(hvd_model model, std::uint64_t seed) const {
    char* out = nullptr;
    check(hvd_diagram_render(diagram, model, HVD_FORMAT_JSON, seed, &out));
    json j = json::parse(take(out));
    j["snapshot"] = id;
    return j;
  }
};

Service::Service(hvd_pointset* initial, std::uint64_t seed) : seed_(seed) {
  auto snap = std::make_shared<Snapshot>();
  snap->ps = initial;
  if (hvd_diagram_build(initial, &snap->diagram) != HVD_OK) throw std::runtime_error(hvd_last_error());
  snapshots_.push_back(std::move(snap));
}

Service::~Service() = default;

std::shared_ptr<const Service::Snapshot> Service::find(long long id) const {
  std::shared_lock lock(mu_);
  if (id < 0 || id >= static_cast<long long>(snapshots_.size())) fail(404, "unknown snapshot " + std::to_string(id));
  return snapshots_[static_cast<std::size_t>(id)];
}

std::shared_ptr<const Service::Snapshot> Service::latest() const {
  std::shared_lock lock(mu_);
  return snapshots_.back();
}

namespace {

long long snapshot_field(const json& j) {
  const auto it = j.find("snapshot");
  if (it == j.end() || it->is_null()) return -1;
  if (!it->is_number_integer()) fail(400, "\"snapshot\" must be an integer");
  return it->get<long long>();
}

}  // namespace

Reply Service::health() const {
  std::shared_lock lock(mu_);
  const json j = {{"status", "ok"},
                  {"version", hvd_version()},
                  {"snapshots", snapshots_.size()},
                  {"latest", snapshots_.back()->id}};
  return {200, j.dump() + "\n"};
}

Reply Service::scene(const std::string& model, const std::string& snapshot) const {
  return guarded([&] {
    const hvd_model m = model_from(model.empty() ? "poincare" : model);
    std::shared_ptr<const Snapshot> snap;
    if (snapshot.empty()) {
      snap = latest();
    } else {
      long long id = -1;
      try {
        std::size_t used = 0;
        id = std::stoll(snapshot, &used);
        if (used != snapshot.size()) fail(400, "snapshot must be an integer");
      } catch (const std::logic_error&) {
        fail(400, "snapshot must be an integer");
      }
      snap = find(id);
    }
    return Reply{200, snap->scene(m, seed_).dump() + "\n"};
  });
}

Reply Service::nearest(const std::string& body) const {
  return guarded([&] {
    const json req = parse_body(body);
    const long long sid = snapshot_field(req);
    const auto snap = sid < 0 ? latest() : find(sid);
    const double x = number_field(req, "x");
    const double y = number_field(req, "y");
    std::size_t index = 0;
    double distance = 0.0;
    check(hvd_nearest(snap->ps, x, y, model_field(req, "poincare"), &index, &distance));
    const json j = {{"index", index},
                    {"label", hvd_pointset_label(snap->ps, index)},
                    {"distance", distance},
                    {"snapshot", snap->id}};
    return Reply{200, j.dump() + "\n"};
  });
}

Reply Service::seb(const std::string& body) const {
  return guarded([&] {
    const json req = parse_body(body);
    const long long sid = snapshot_field(req);
    const auto snap = sid < 0 ? latest() : find(sid);
    // No "indices" means every site.
    std::vector<std::size_t> indices;
    if (const auto it = req.find("indices"); it != req.end()) {
      if (!it->is_array()) fail(400, "\"indices\" must be an array");
      if (it->empty()) fail(400, "\"indices\" is empty");
      for (const json& v : *it) {
        if (!v.is_number_unsigned()) fail(400, "indices must be non-negative integers");
        indices.push_back(v.get<std::size_t>());
      }
    }
    const hvd_model m = model_field(req, "poincare");
    char* out = nullptr;
    check(hvd_seb_report(snap->ps, indices.empty() ? nullptr : indices.data(), indices.size(), m, HVD_FORMAT_JSON, seed_, &out));
    json report = json::parse(take(out));
    const json j = {{"center", report["center"]},
                    {"radius", report["radius"]},
                    {"overlay", {{"model", report["model"]}, {"locus", report["locus"]}}},
                    {"snapshot", snap->id}};
    return Reply{200, j.dump() + "\n"};
  });
}

Reply Service::recenter(const std::string& body) {
  return guarded([&] {
    const json req = parse_body(body);
    const long long sid = snapshot_field(req);
    const double x = number_field(req, "x");
    const double y = number_field(req, "y");
    const hvd_model m = model_field(req, "poincare");
    std::lock_guard create(create_mu_);
    const auto base = sid < 0 ? latest() : find(sid);
    auto snap = std::make_shared<Snapshot>();
    check(hvd_recenter(base->ps, x, y, m, &snap->ps));
    check(hvd_diagram_build(snap->ps, &snap->diagram));
    {
      std::unique_lock lock(mu_);
      snap->id = static_cast<long long>(snapshots_.size());
      snapshots_.push_back(snap);
    }
    double fx = 0.0, fy = 0.0;
    hvd_pointset_focus(snap->ps, &fx, &fy);
    const json j = {{"snapshot", snap->id}, {"focus", json::array({fx, fy})}, {"scene", snap->scene(m, seed_)}};
    return Reply{200, j.dump() + "\n"};
  });
}

void Service::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get("/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
  server.Get("/scene", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, scene(req.get_param_value("model"), req.get_param_value("snapshot")));
  });
  server.Post("/nn", [this, send](const httplib::Request& req, httplib::Response& res) { send(res, nearest(req.body)); });
  server.Post("/seb", [this, send](const httplib::Request& req, httplib::Response& res) { send(res, seb(req.body)); });
  server.Post("/recenter",
              [this, send](const httplib::Request& req, httplib::Response& res) { send(res, recenter(req.body)); });
}

}  // namespace hvd_tools
