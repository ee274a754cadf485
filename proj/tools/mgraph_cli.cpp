// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgraph/mgraph.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCompute = 2;
constexpr int kExitCounterexample = 3;

struct Options {
  std::string graph;
  std::string cloud;
  std::string masses;
  std::string v;
  std::string w;
  std::string set;
  std::string r;
  std::string weighting = "plain";
  std::string out;
  double p = 2.0;
  double L = 1.0;
  double tol = 1e-6;
  std::uint64_t seed = 42;
  std::size_t max_vertices = 7;
  std::size_t instances = 200;
  std::size_t exhaustive = 5;
};

// Thrown for command-line problems detected before calling the library.
struct UsageError {
  std::string message;
};

struct GraphDeleter {
  void operator()(mg_graph* g) const { mg_graph_free(g); }
};
struct CloudDeleter {
  void operator()(mg_cloud* c) const { mg_cloud_free(c); }
};
using GraphPtr = std::unique_ptr<mg_graph, GraphDeleter>;
using CloudPtr = std::unique_ptr<mg_cloud, CloudDeleter>;

// Library failure carrying its status.
struct Failure {
  mg_status status;
  std::string message;
};

void Check(mg_status status) {
  if (status != MG_OK) throw Failure{status, mg_last_error()};
}

std::string Take(char* s) {
  std::string out(s);
  mg_string_free(s);
  return out;
}

void Require(bool condition, const std::string& message) {
  if (!condition) throw UsageError{message};
}

GraphPtr LoadGraph(const Options& o) {
  Require(!o.graph.empty(), "--graph is required");
  Require(!o.v.empty() && !o.w.empty(), "--v and --w are required");
  mg_graph* g = nullptr;
  Check(mg_graph_load(o.graph.c_str(), &g));
  return GraphPtr(g);
}

CloudPtr LoadCloud(const Options& o) {
  Require(!o.cloud.empty(), "--cloud is required");
  mg_cloud* c = nullptr;
  if (o.masses.empty()) {
    Check(mg_cloud_load_csv(o.cloud.c_str(), &c));
  } else {
    Check(mg_cloud_load_matrix(o.cloud.c_str(), o.masses.c_str(), &c));
  }
  return CloudPtr(c);
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

double ParseDouble(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw UsageError{"malformed number in " + what + ": '" + s + "'"};
}

// Vertex ids from "a,b,c" or a JSON array.
std::vector<std::string> ParseSet(const std::string& spec) {
  if (!spec.empty() && spec.front() == '[') {
    std::vector<std::string> ids;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(spec);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError{std::string("malformed --set: ") + e.what()};
    }
    for (const auto& id : doc) {
      ids.push_back(id.is_string() ? id.get<std::string>() : id.dump());
    }
    return ids;
  }
  return Split(spec, ',');
}

struct IdArray {
  explicit IdArray(const std::vector<std::string>& ids) : ids(ids) {
    for (const auto& id : this->ids) ptrs.push_back(id.c_str());
  }
  std::vector<std::string> ids;
  std::vector<const char*> ptrs;
};

// A pole given as a cloud index ("17") or as coordinates ("0.05,0.25").
std::size_t ParsePole(const mg_cloud* c, const std::string& spec,
                      const std::string& flag) {
  Require(!spec.empty(), flag + " is required");
  if (spec.find(',') == std::string::npos) {
    const double x = ParseDouble(spec, flag);
    Require(x >= 0 && x == static_cast<double>(static_cast<std::size_t>(x)),
            flag + " must be a sample index or coordinates");
    return static_cast<std::size_t>(x);
  }
  std::vector<double> coords;
  for (const auto& part : Split(spec, ',')) coords.push_back(ParseDouble(part, flag));
  std::size_t index = 0;
  Check(mg_cloud_nearest(c, coords.data(), coords.size(), &index));
  return index;
}

std::vector<double> ParseSchedule(const std::string& spec) {
  std::vector<double> r;
  for (const auto& part : Split(spec, ',')) r.push_back(ParseDouble(part, "--r"));
  Require(!r.empty(), "--r is required");
  return r;
}

void Write(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Failure{MG_IO, "cannot open output file " + o.out};
  file << text;
  if (!file) throw Failure{MG_IO, "cannot write output file " + o.out};
}

int Run(const std::string& command, const Options& o) {
  char* result = nullptr;
  if (command == "verify") {
    std::size_t counterexamples = 0;
    Check(mg_verify(o.seed, o.max_vertices, o.instances, o.exhaustive, &result,
                    &counterexamples));
    Write(o, Take(result) + "\n");
    return counterexamples == 0 ? kExitOk : kExitCounterexample;
  }
  if (command == "discretize") {
    CloudPtr c = LoadCloud(o);
    const auto r = ParseSchedule(o.r);
    Require(r.size() == 1, "discretize takes a single --r");
    Check(mg_discretize(c.get(), r[0], &result));
    Write(o, Take(result) + "\n");
    return kExitOk;
  }
  if (command == "experiment") {
    CloudPtr c = LoadCloud(o);
    const std::size_t x = ParsePole(c.get(), o.v, "--v");
    const std::size_t y = ParsePole(c.get(), o.w, "--w");
    Require(!o.set.empty(), "--set (region spec) is required");
    std::vector<char> indicator(mg_cloud_size(c.get()));
    Check(mg_cloud_region(c.get(), o.set.c_str(), indicator.data()));
    const auto r = ParseSchedule(o.r);
    Require(o.weighting == "plain" || o.weighting == "riesz",
            "--weighting must be plain or riesz");
    const mg_weighting weighting =
        o.weighting == "riesz" ? MG_WEIGHTING_RIESZ : MG_WEIGHTING_PLAIN;
    Check(mg_experiment(c.get(), x, y, indicator.data(), r.data(), r.size(),
                        weighting, o.L, &result));
    Write(o, Take(result));
    return kExitOk;
  }

  GraphPtr g = LoadGraph(o);
  const char* v = o.v.c_str();
  const char* w = o.w.c_str();
  if (command == "analyze" || command == "fibrate" || command == "slim") {
    const IdArray set(ParseSet(o.set));
    const auto fn = command == "analyze"   ? mg_analyze
                    : command == "fibrate" ? mg_fibrate
                                           : mg_slim;
    Check(fn(g.get(), v, w, set.ptrs.data(), set.ptrs.size(), &result));
  } else if (command == "mincut") {
    Check(mg_mincut(g.get(), v, w, &result));
  } else if (command == "modulus") {
    Check(mg_modulus(g.get(), v, w, o.p, o.tol, &result));
  } else if (command == "pencil") {
    Check(mg_pencil(g.get(), v, w, o.p, o.tol, o.seed, &result));
  }
  Write(o, Take(result) + "\n");
  return kExitOk;
}

int ReportError(const Options& o, const std::string& kind,
                const std::string& message, int code) {
  const nlohmann::json doc = {{"error", kind}, {"message", message}};
  std::cerr << "error: " << message << "\n";
  try {
    Write(o, doc.dump() + "\n");
  } catch (const Failure&) {
    std::cout << doc.dump() << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure-graph separating sets, cuts, modulus and nets"};
  app.require_subcommand(0, 1);
  Options o;
  bool schema = false;
  app.add_flag("--schema", schema, "Print all input and output formats");

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output path (default stdout)");
  };
  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "Graph JSON document")->required();
    sub->add_option("--v", o.v, "Source vertex id")->required();
    sub->add_option("--w", o.w, "Sink vertex id")->required();
    add_out(sub);
  };
  auto add_set = [&](CLI::App* sub) {
    sub->add_option("--set", o.set, "Vertex ids: a,b,c or a JSON array");
  };
  auto add_p = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "Exponent p >= 1")->check(CLI::Range(1.0, 1e6));
    sub->add_option("--tol", o.tol, "Relative duality gap")
        ->check(CLI::PositiveNumber);
  };
  auto add_cloud = [&](CLI::App* sub) {
    sub->add_option("--cloud", o.cloud,
                    "Point-cloud CSV (x1..xd,mass) or distance matrix CSV")
        ->required();
    sub->add_option("--masses", o.masses,
                    "Masses sidecar; makes --cloud a distance matrix");
    sub->add_option("--r", o.r, "Scale, or comma-separated decreasing scales")
        ->required();
    add_out(sub);
  };

  std::vector<CLI::App*> subs;
  for (const char* name : {"analyze", "fibrate", "slim"}) {
    auto* sub = app.add_subcommand(name);
    add_graph(sub);
    add_set(sub);
    subs.push_back(sub);
  }
  app.get_subcommand("analyze")->description("Width, mass, SR and levels of a set");
  app.get_subcommand("fibrate")->description("Position-function level sets");
  app.get_subcommand("slim")->description("Slimness test and slimification");
  {
    auto* sub = app.add_subcommand("mincut", "Minimum vertex cut and flow pencil");
    add_graph(sub);
    subs.push_back(sub);
  }
  {
    auto* sub = app.add_subcommand("modulus", "Discrete p-modulus");
    add_graph(sub);
    add_p(sub);
    subs.push_back(sub);
  }
  {
    auto* sub = app.add_subcommand("pencil", "Path pencil and its constant");
    add_graph(sub);
    add_p(sub);
    sub->add_option("--seed", o.seed, "Seed for the constant estimate");
    subs.push_back(sub);
  }
  {
    auto* sub = app.add_subcommand("discretize", "r-net measure graph");
    add_cloud(sub);
    subs.push_back(sub);
  }
  {
    auto* sub = app.add_subcommand("experiment", "Net series over scales");
    add_cloud(sub);
    sub->add_option("--v", o.v, "Pole x: sample index or coordinates")
        ->required();
    sub->add_option("--w", o.w, "Pole y: sample index or coordinates")
        ->required();
    sub->add_option("--set", o.set, "Region: box:...;half:...")->required();
    sub->add_option("--weighting", o.weighting, "plain or riesz");
    sub->add_option("--L", o.L, "Riesz truncation L >= 1");
    subs.push_back(sub);
  }
  {
    auto* sub = app.add_subcommand("verify", "Property suite");
    sub->add_option("--seed", o.seed, "Generator seed");
    sub->add_option("--max-vertices", o.max_vertices,
                    "Largest random graph (2..10)");
    sub->add_option("--instances", o.instances, "Random instances per check");
    sub->add_option("--exhaustive", o.exhaustive,
                    "Enumerate all connected graphs up to this size");
    add_out(sub);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError(o, "invalid_argument", e.what(), kExitInput);
  }

  if (schema) {
    char* text = nullptr;
    Check(mg_schema(&text));
    std::cout << Take(text);
    return kExitOk;
  }
  std::string command;
  for (auto* sub : subs) {
    if (sub->parsed()) command = sub->get_name();
  }
  if (command.empty()) {
    std::cerr << app.help();
    return kExitInput;
  }

  try {
    return Run(command, o);
  } catch (const UsageError& e) {
    return ReportError(o, "invalid_argument", e.message, kExitInput);
  } catch (const Failure& e) {
    return ReportError(o, mg_status_name(e.status), e.message,
                       mg_status_is_input_error(e.status) ? kExitInput
                                                          : kExitCompute);
  }
}
