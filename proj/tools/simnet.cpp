// simnet: build, inspect and query similarity networks of service operations.
//
// Exit status: 0 on success, 1 on bad input, 2 on internal errors.
// SIMNET_LOG=quiet|warn|info|debug sets diagnostic verbosity (default warn).

#include <simnet/simnet.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace simnet;

namespace {

/// Bad user input; reported on stderr with exit status 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LogLevel { Quiet, Warn, Info, Debug };

LogLevel log_level() {
  const char *env = std::getenv("SIMNET_LOG");
  std::string v = env ? env : "";
  if (v == "quiet")
    return LogLevel::Quiet;
  if (v == "info")
    return LogLevel::Info;
  if (v == "debug")
    return LogLevel::Debug;
  return LogLevel::Warn;
}

void log(LogLevel level, const std::string &msg) {
  static const LogLevel current = log_level();
  if (level > current)
    return;
  static constexpr const char *tags[] = {"", "warning", "info", "debug"};
  std::cerr << "simnet: " << tags[static_cast<int>(level)] << ": " << msg << "\n";
}

std::string read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw InputError("cannot write '" + path.string() + "'");
}

ServiceCatalog load_catalog(const fs::path &path) {
  try {
    auto cat = parse_catalog(read_text(path));
    for (const auto &w : cat.warnings())
      log(LogLevel::Warn, path.string() + ": " + w);
    return cat;
  } catch (const CatalogError &e) {
    throw InputError(path.string() + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

IngestResult load_sawsdl_dir(const fs::path &dir) {
  if (!fs::is_directory(dir))
    throw InputError("cannot read directory '" + dir.string() + "'");
  std::vector<SawsdlDocument> docs;
  for (const auto &entry : fs::recursive_directory_iterator(dir)) {
    auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".wsdl" || ext == ".xml"))
      docs.push_back({entry.path().string(), read_text(entry.path())});
  }
  if (docs.empty())
    throw InputError("no .wsdl documents in '" + dir.string() + "'");
  try {
    auto result = ingest_sawsdl(std::move(docs));
    for (const auto &w : result.warnings)
      log(LogLevel::Warn, w);
    for (const auto &id : result.skipped_operations)
      log(LogLevel::Info, "skipped " + id + ": no output annotations");
    return result;
  } catch (const IngestError &e) {
    throw InputError(e.what());
  }
}

SimilarityNetwork load_network(const fs::path &path) {
  try {
    return parse_network(read_text(path));
  } catch (const std::invalid_argument &e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<SimilarityKind> parse_functions(const std::string &list) {
  if (list == "all")
    return {all_functions.begin(), all_functions.end()};
  std::vector<SimilarityKind> out;
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');) {
    auto k = similarity_kind_from_string(detail::trim(item));
    if (!k || *k == SimilarityKind::None)
      throw InputError("unknown similarity function '" + item + "'");
    if (std::find(out.begin(), out.end(), *k) == out.end())
      out.push_back(*k);
  }
  if (out.empty())
    throw InputError("no similarity function selected");
  return out;
}

/// Accepts full IRIs or a local name that is unique within the catalog.
ConceptSet resolve_concepts(const std::vector<std::string> &tokens, const ServiceCatalog &cat) {
  const auto universe = cat.concept_universe();
  std::vector<ConceptId> out;
  for (const auto &raw : tokens) {
    auto token = std::string(detail::trim(raw));
    if (detail::has_scheme(token)) {
      out.push_back(ConceptId::parse(token));
      continue;
    }
    std::vector<ConceptId> hits;
    for (const auto &c : universe)
      if (c.local_name() == token)
        hits.push_back(c);
    if (hits.empty())
      throw InputError("concept '" + token + "' does not occur in the catalog");
    if (hits.size() > 1)
      throw InputError("concept '" + token + "' is ambiguous; use a full IRI (e.g. " +
                       hits[0].iri() + ")");
    out.push_back(hits[0]);
  }
  return ConceptSet(std::move(out));
}

std::string local_names(const ConceptSet &s) {
  std::string out;
  for (const auto &c : s)
    out += (out.empty() ? "" : ", ") + std::string(c.local_name());
  return "{" + out + "}";
}

std::vector<fs::path> network_files(const std::vector<std::string> &inputs) {
  std::vector<fs::path> out;
  for (const auto &in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto &entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          found.push_back(entry.path());
      if (found.empty())
        throw InputError("no network files in '" + p.string() + "'");
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

struct BuildArgs {
  std::string catalog;
  std::string sawsdl_dir;
  std::string functions = "all";
  std::string out = ".";
};

int cmd_build(const BuildArgs &a) {
  auto kinds = parse_functions(a.functions);
  ServiceCatalog cat;
  std::optional<IngestResult> ingested;
  if (!a.catalog.empty()) {
    cat = load_catalog(a.catalog);
  } else {
    ingested = load_sawsdl_dir(a.sawsdl_dir);
    cat = ingested->catalog;
  }
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec)
    throw InputError("cannot create '" + a.out + "': " + ec.message());

  for (auto kind : kinds) {
    auto start = std::chrono::steady_clock::now();
    auto net = build_network(cat, kind);
    auto path = fs::path(a.out) / (std::string(to_string(kind)) + ".json");
    write_text(path, serialize_network(net));
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    log(LogLevel::Debug, std::string(to_string(kind)) + ": " + std::to_string(ms) + " ms");
    std::cout << "wrote " << path.string() << " (" << net.node_count() << " nodes, "
              << net.edge_count() << " edges)\n";
  }
  if (ingested)
    std::cout << "ingested " << ingested->catalog.size() << " operations, skipped "
              << ingested->skipped << " without output annotations\n";
  return 0;
}

int cmd_stats(const std::vector<std::string> &inputs, bool json) {
  std::vector<SimilarityNetwork> nets;
  for (const auto &p : network_files(inputs))
    nets.push_back(load_network(p));
  NetworkStats stats;
  try {
    stats = network_stats(nets);
  } catch (const std::invalid_argument &e) {
    throw InputError(e.what());
  }
  if (json)
    std::cout << to_json(stats).dump(2) << "\n";
  else
    std::cout << format_stats(stats);
  return 0;
}

int cmd_analyze(const std::string &input, bool json) {
  auto net = load_network(input);
  auto reports = analyze(net);
  log(LogLevel::Info, std::to_string(reports.size()) + " component(s)");
  if (json)
    std::cout << to_json(net, reports).dump(2) << "\n";
  else
    std::cout << format_reports(net, reports);
  return 0;
}

int cmd_export(const std::string &input, const std::string &format, bool isolated,
               const std::string &out) {
  auto fmt = graph_format_from_string(format);
  if (!fmt)
    throw InputError("unknown export format '" + format + "'");
  auto text = export_graph(load_network(input), *fmt, isolated);
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text(out, text);
  return 0;
}

struct QueryArgs {
  std::string catalog;
  std::vector<std::string> inputs;
  std::vector<std::string> goals;
  std::vector<std::string> exclude;
  std::string tiers;
  bool bridges = false;
  std::size_t max_len = 2;
  bool json = false;
};

int cmd_query(const QueryArgs &a) {
  auto full = load_catalog(a.catalog);
  auto request = Request::make(resolve_concepts(a.inputs, full), resolve_concepts(a.goals, full));
  std::set<std::string, std::less<>> excluded(a.exclude.begin(), a.exclude.end());
  for (const auto &id : excluded)
    if (!full.find(id))
      log(LogLevel::Warn, "--exclude: no operation '" + id + "'");
  auto cat = full.without(excluded);

  QueryOptions opts;
  if (!a.tiers.empty())
    opts.tier_order = parse_functions(a.tiers);
  opts.bridges = a.bridges;
  opts.max_len = a.max_len;
  auto candidates = query_substitutes(request, cat, opts);

  if (a.json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &c : candidates)
      arr.push_back(to_json(c));
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  if (candidates.empty()) {
    std::cout << "no substitutes\n";
    return 0;
  }
  for (const auto &c : candidates) {
    std::cout << to_string(c.tier) << "\t" << c.operation;
    if (!c.missing_outputs.empty())
      std::cout << "\tmissing outputs " << local_names(c.missing_outputs);
    if (!c.extra_outputs.empty())
      std::cout << "\textra outputs " << local_names(c.extra_outputs);
    if (!c.missing_inputs.empty())
      std::cout << "\tneeds " << local_names(c.missing_inputs);
    std::cout << "\n";
    if (!a.bridges || c.missing_inputs.empty())
      continue;
    if (c.bridges.empty())
      std::cout << "\tno bridge within " << a.max_len << " step(s)\n";
    for (const auto &chain : c.bridges) {
      std::cout << "\tbridge [";
      for (std::size_t k = 0; k < chain.operations.size(); ++k)
        std::cout << (k ? ", " : "") << chain.operations[k];
      std::cout << "]\n";
    }
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Similarity networks of semantic Web-service operations"};
  app.require_subcommand(1);

  BuildArgs build;
  auto *b = app.add_subcommand("build", "Build similarity networks from a catalog");
  auto *src = b->add_option_group("source");
  src->add_option("--catalog", build.catalog, "JSON-lines catalog");
  src->add_option("--sawsdl-dir", build.sawsdl_dir, "Directory of SAWSDL documents");
  src->require_option(1);
  b->add_option("--functions", build.functions, "Comma list of full,partial,excess,relation or all")
      ->capture_default_str();
  b->add_option("--out", build.out, "Output directory")->capture_default_str();

  std::vector<std::string> stats_inputs;
  bool stats_json = false;
  auto *s = app.add_subcommand("stats", "Isolated-node and component statistics");
  s->add_option("networks", stats_inputs, "Network files or a directory of them")->required();
  s->add_flag("--json", stats_json);

  std::string analyze_input;
  bool analyze_json = false;
  auto *an = app.add_subcommand("analyze", "Components, cliques and stars of one network");
  an->add_option("network", analyze_input)->required();
  an->add_flag("--json", analyze_json);

  std::string export_input, export_format = "graphml", export_out;
  bool export_isolated = false;
  auto *ex = app.add_subcommand("export", "Write a network as GraphML or DOT");
  ex->add_option("network", export_input)->required();
  ex->add_option("--format", export_format)
      ->check(CLI::IsMember({"graphml", "dot"}))
      ->capture_default_str();
  ex->add_flag("--include-isolated", export_isolated);
  ex->add_option("-o,--out", export_out, "Output file (default stdout)");

  QueryArgs query;
  auto *q = app.add_subcommand("query", "Rank substitutes for a request");
  q->add_option("--catalog", query.catalog)->required();
  q->add_option("--inputs", query.inputs, "Provided concepts")->delimiter(',');
  q->add_option("--goals", query.goals, "Wanted output concepts")->delimiter(',')->required();
  q->add_option("--exclude", query.exclude, "Operation ids to leave out")->delimiter(',');
  q->add_option("--tiers", query.tiers, "Tier order, e.g. full,excess,partial,relation");
  q->add_flag("--bridges", query.bridges, "Search composition bridges for relation candidates");
  q->add_option("--max-len", query.max_len)->check(CLI::Range(1, 8))->capture_default_str();
  q->add_flag("--json", query.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*b)
      return cmd_build(build);
    if (*s)
      return cmd_stats(stats_inputs, stats_json);
    if (*an)
      return cmd_analyze(analyze_input, analyze_json);
    if (*ex)
      return cmd_export(export_input, export_format, export_isolated, export_out);
    if (*q)
      return cmd_query(query);
  } catch (const InputError &e) {
    std::cerr << "simnet: error: " << e.what() << "\n";
    return 1;
  } catch (const ConceptError &e) {
    std::cerr << "simnet: error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument &e) {
    std::cerr << "simnet: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "simnet: internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
