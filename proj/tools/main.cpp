// hvd: hyperbolic Voronoi diagrams, Delaunay triangulations and enclosing
// balls from the command line, plus a small HTTP query service.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "hvd/hvd.h"
#include "service.hpp"

namespace {

struct PointSetDeleter {
  void operator()(hvd_pointset* p) const { hvd_pointset_free(p); }
};
using PointSetPtr = std::unique_ptr<hvd_pointset, PointSetDeleter>;

int report(hvd_status s) {
  std::cerr << "hvd: " << hvd_last_error() << "\n";
  return s == HVD_ERR_INTERNAL ? 3 : 1;
}

int write_out(char* text, const std::string& path) {
  const std::string body(text);
  hvd_string_free(text);
  if (path.empty() || path == "-") {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  f << body;
  if (!f) {
    std::cerr << "hvd: cannot write '" << path << "'\n";
    return 1;
  }
  return 0;
}

httplib::Server* g_server = nullptr;

void stop(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic Voronoi diagrams in the Klein, Poincare and half-plane models"};
  app.set_version_flag("--version", std::string("hvd ") + hvd_version());
  app.require_subcommand(1);

  std::string input;
  std::string model_name = "klein";
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  int port = 8080;
  std::string host = "127.0.0.1";

  auto common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("-i,--input", input, "Point-set file")->required()->check(CLI::ExistingFile);
    sub->add_option("-m,--model", model_name, "klein, poincare or halfplane")
        ->check(CLI::IsMember({"klein", "poincare", "halfplane"}));
    sub->add_option("--seed", seed, "Seed recorded in the output and used for randomized steps");
    if (with_format) {
      sub->add_option("-f,--format", format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
      sub->add_option("-o,--output", output, "Output file (default: stdout)");
    }
  };
  CLI::App* diagram = app.add_subcommand("diagram", "Clipped hyperbolic Voronoi diagram");
  common(diagram, true);
  CLI::App* delaunay = app.add_subcommand("delaunay", "Dual hyperbolic Delaunay triangulation");
  common(delaunay, true);
  CLI::App* seb = app.add_subcommand("seb", "Smallest enclosing hyperbolic ball");
  common(seb, true);
  CLI::App* serve = app.add_subcommand("serve", "HTTP query service");
  common(serve, false);
  serve->add_option("-p,--port", port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");

  CLI11_PARSE(app, argc, argv);

  hvd_model model = HVD_MODEL_KLEIN;
  hvd_model_parse(model_name.c_str(), &model);
  const hvd_format fmt = format == "svg" ? HVD_FORMAT_SVG : HVD_FORMAT_JSON;

  hvd_pointset* raw = nullptr;
  if (hvd_status s = hvd_pointset_load(input.c_str(), &raw); s != HVD_OK) return report(s);
  PointSetPtr ps(raw);

  char* text = nullptr;
  if (diagram->parsed()) {
    hvd_diagram* d = nullptr;
    if (hvd_status s = hvd_diagram_build(ps.get(), &d); s != HVD_OK) return report(s);
    const hvd_status s = hvd_diagram_render(d, model, fmt, seed, &text);
    hvd_diagram_free(d);
    if (s != HVD_OK) return report(s);
    return write_out(text, output);
  }
  if (delaunay->parsed()) {
    if (hvd_status s = hvd_delaunay_render(ps.get(), model, fmt, seed, &text); s != HVD_OK) return report(s);
    return write_out(text, output);
  }
  if (seb->parsed()) {
    if (hvd_status s = hvd_seb_report(ps.get(), nullptr, 0, model, fmt, seed, &text); s != HVD_OK) return report(s);
    return write_out(text, output);
  }

  std::unique_ptr<hvd_tools::Service> service;
  try {
    service = std::make_unique<hvd_tools::Service>(ps.release(), seed);
  } catch (const std::exception& e) {
    std::cerr << "hvd: " << e.what() << "\n";
    return 1;
  }
  httplib::Server server;
  service->mount(server);
  g_server = &server;
  std::signal(SIGINT, stop);
  std::signal(SIGTERM, stop);
  if (!server.bind_to_port(host, port)) {
    std::cerr << "hvd: cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cerr << "hvd: serving on http://" << host << ":" << port << "\n";
  server.listen_after_bind();
  return 0;
}
