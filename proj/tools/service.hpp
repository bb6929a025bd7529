#pragma once

// Local query service over immutable, numbered snapshots of a point set.

#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "hvd/hvd.h"

namespace httplib {
class Server;
}

namespace hvd_tools {

struct Reply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class Service {
 public:
  // Takes ownership of `initial`, which becomes snapshot 0.
  Service(hvd_pointset* initial, std::uint64_t seed);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Reply health() const;
  // Empty `snapshot` means the latest one.
  Reply scene(const std::string& model, const std::string& snapshot) const;
  Reply nearest(const std::string& body) const;
  Reply seb(const std::string& body) const;
  Reply recenter(const std::string& body);

  void mount(httplib::Server& server);

 private:
  struct Snapshot;
  std::shared_ptr<const Snapshot> find(long long id) const;
  std::shared_ptr<const Snapshot> latest() const;

  std::uint64_t seed_;
  mutable std::shared_mutex mu_;
  std::vector<std::shared_ptr<const Snapshot>> snapshots_;
  // Serializes snapshot creation; readers only take mu_ shared.
  std::mutex create_mu_;
};

}  // namespace hvd_tools
