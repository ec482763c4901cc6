#include <simnet/substitution.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace simnet;
namespace oracle = simnet::support::oracle;

namespace {

const std::string kW = "http://example.org/weather.owl#";

ConceptSet weather(std::initializer_list<const char *> names) {
  std::vector<ConceptId> v;
  for (const auto *n : names)
    v.push_back(ConceptId::parse(kW + n));
  return ConceptSet(std::move(v));
}

Request weather_request(std::initializer_list<const char *> inputs) {
  return Request::make(weather(inputs), weather({"WEATHERREPORT"}));
}

std::vector<std::string> tier_members(const std::vector<Candidate> &cs, SimilarityKind tier) {
  std::vector<std::string> out;
  for (const auto &c : cs)
    if (c.tier == tier)
      out.push_back(c.operation);
  return out;
}

std::vector<std::vector<std::string>> chain_ids(const std::vector<CompositionChain> &chains) {
  std::vector<std::vector<std::string>> out;
  for (const auto &c : chains)
    out.push_back(c.operations);
  return out;
}

} // namespace

TEST(QuerySubstitutes, FullTierForZipAndCity) {
  auto cat = support::load_fixture("weather.jsonl");
  auto cs = query_substitutes(weather_request({"ZIP", "CITY-NAME"}), cat);
  EXPECT_EQ(tier_members(cs, SimilarityKind::Full), (std::vector<std::string>{"op4", "op5"}));
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[2].operation, "op6");
  EXPECT_EQ(cs[2].tier, SimilarityKind::Excess);
}

TEST(QuerySubstitutes, ExcessWhenFullCandidatesAreGone) {
  auto cat = support::load_fixture("weather.jsonl").without({"op4", "op5"});
  auto cs = query_substitutes(weather_request({"ZIP", "CITY-NAME"}), cat);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].operation, "op6");
  EXPECT_EQ(cs[0].tier, SimilarityKind::Excess);
  EXPECT_EQ(cs[0].extra_outputs, weather({"WEATHERREPORTSUBSCR"}));
  EXPECT_TRUE(cs[0].missing_outputs.empty());
}

TEST(QuerySubstitutes, RelationWhenOnlyZipIsKnown) {
  auto cat = support::load_fixture("weather.jsonl").without({"op4"});
  QueryOptions opts;
  opts.bridges = true;
  auto cs = query_substitutes(weather_request({"ZIP"}), cat, opts);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].operation, "op5");
  EXPECT_EQ(cs[0].tier, SimilarityKind::Relation);
  EXPECT_EQ(cs[0].missing_inputs, weather({"CITY-NAME"}));
  // op1 is the first bridge; op3 also yields a city name from a zip code
  EXPECT_EQ(chain_ids(cs[0].bridges),
            (std::vector<std::vector<std::string>>{{"op1"}, {"op3"}}));
}

TEST(QuerySubstitutes, TierOrderAndRanking) {
  ServiceCatalog cat;
  auto in = weather({"ZIP"});
  cat.add(Operation{"plus2_b", "s", in, weather({"WEATHERREPORT", "A", "B"})});
  cat.add(Operation{"plus2_a", "s", in, weather({"WEATHERREPORT", "A", "C"})});
  cat.add(Operation{"plus1", "s", in, weather({"WEATHERREPORT", "A"})});
  cat.add(Operation{"same", "s", in, weather({"WEATHERREPORT"})});
  cat.add(Operation{"plus3", "s", in, weather({"WEATHERREPORT", "A", "B", "C"})});

  auto req = Request::make(in, weather({"WEATHERREPORT"}));
  auto cs = query_substitutes(req, cat);
  std::vector<std::string> order;
  for (const auto &c : cs)
    order.push_back(c.operation);
  // excess candidates rank by how many outputs they add, then by id
  EXPECT_EQ(order, (std::vector<std::string>{"same", "plus1", "plus2_a", "plus2_b", "plus3"}));
  EXPECT_EQ(cs[0].tier, SimilarityKind::Full);
  EXPECT_EQ(cs[1].tier, SimilarityKind::Excess);

  auto only_excess = query_substitutes(req, cat, std::vector{SimilarityKind::Excess});
  EXPECT_EQ(only_excess.size(), 4u);
  auto reversed =
      query_substitutes(req, cat, std::vector{SimilarityKind::Excess, SimilarityKind::Full});
  EXPECT_EQ(reversed.back().operation, "same");
  EXPECT_THROW(query_substitutes(req, cat, std::vector{SimilarityKind::None}),
               std::invalid_argument);
}

TEST(QuerySubstitutes, PartialCandidatesReportMissingOutputs) {
  auto cat = support::load_fixture("weather.jsonl");
  auto req = Request::make(weather({"ZIP"}), weather({"CITY-NAME", "LONGITUDE"}));
  auto cs = query_substitutes(req, cat);
  EXPECT_EQ(tier_members(cs, SimilarityKind::Partial), (std::vector<std::string>{"op1", "op2"}));
  EXPECT_EQ(tier_members(cs, SimilarityKind::Excess), (std::vector<std::string>{"op3"}));
  for (const auto &c : cs) {
    EXPECT_EQ(!c.missing_outputs.empty(), c.tier == SimilarityKind::Partial);
    EXPECT_EQ(!c.extra_outputs.empty(), c.tier == SimilarityKind::Excess);
  }
}

TEST(FindBridges, PreconditionsAndEmptyResults) {
  auto cat = support::load_fixture("weather.jsonl");
  // op4 shares ZIP with the request: not a relational candidate
  EXPECT_THROW(find_bridges(weather_request({"ZIP"}), cat[3], cat), std::invalid_argument);
  // nothing produces CITY-NAME once op1..op3 are gone
  auto bare = cat.without({"op1", "op2", "op3"});
  EXPECT_TRUE(find_bridges(weather_request({"ZIP"}), *bare.find("op5"), bare).empty());
  // empty-input candidate needs nothing beyond the request
  ServiceCatalog c2;
  c2.add(Operation{"free", "s", {}, weather({"WEATHERREPORT"})});
  EXPECT_THROW(find_bridges(weather_request({"ZIP"}), c2[0], c2), std::invalid_argument);
}

TEST(FindBridges, TwoStepChain) {
  auto cat = support::load_fixture("weather.jsonl").without({"op1", "op3", "op4"});
  cat.add(Operation{"region", "s", weather({"ZIP"}), weather({"GEOGRAPHICALREGION"})});
  auto chains = find_bridges(weather_request({"ZIP"}), *cat.find("op5"), cat);
  ASSERT_EQ(chain_ids(chains), (std::vector<std::vector<std::string>>{{"region", "op2"}}));
  const auto &c = chains[0];
  ASSERT_EQ(c.available.size(), 3u);
  EXPECT_EQ(c.available[0], weather({"ZIP"}));
  EXPECT_TRUE(c.available[2].contains(ConceptId::parse(kW + "CITY-NAME")));
  EXPECT_TRUE(find_bridges(weather_request({"ZIP"}), *cat.find("op5"), cat, 1).empty());
}

TEST(ExplainCandidate, Tiers) {
  auto cat = support::load_fixture("weather.jsonl");
  auto req = weather_request({"ZIP", "CITY-NAME"});
  auto cs = query_substitutes(req, cat);
  auto full = explain_candidate(req, cs[0], cat);
  EXPECT_TRUE(full.missing_outputs.empty());
  EXPECT_TRUE(full.extra_outputs.empty());
  EXPECT_EQ(full.matched_outputs, weather({"WEATHERREPORT"}));

  auto excess = explain_candidate(req, cs[2], cat);
  EXPECT_EQ(excess.extra_outputs, weather({"WEATHERREPORTSUBSCR"}));
  EXPECT_EQ(excess.shared_inputs, weather({"CITY-NAME"}));

  auto zip_only = weather_request({"ZIP"});
  auto reduced = cat.without({"op4"});
  auto rel = query_substitutes(zip_only, reduced);
  ASSERT_EQ(rel.size(), 1u);
  auto e = explain_candidate(zip_only, rel[0], reduced);
  EXPECT_EQ(e.missing_inputs, weather({"CITY-NAME"}));
  EXPECT_EQ(e.bridges.size(), 2u);
  auto j = to_json(e);
  EXPECT_EQ(j["tier"], "relation");
}

TEST(ExplainCandidate, StaleCandidates) {
  auto cat = support::load_fixture("weather.jsonl");
  auto req = weather_request({"ZIP"});
  auto cs = query_substitutes(req, cat);
  ASSERT_FALSE(cs.empty());
  EXPECT_THROW(explain_candidate(req, cs[0], cat.without({cs[0].operation})), StaleCandidate);
  auto changed = cs[0];
  changed.tier = SimilarityKind::Partial;
  EXPECT_THROW(explain_candidate(req, changed, cat), StaleCandidate);
}

TEST(CandidateJson, Shape) {
  auto cat = support::load_fixture("weather.jsonl").without({"op4"});
  QueryOptions opts;
  opts.bridges = true;
  auto cs = query_substitutes(weather_request({"ZIP"}), cat, opts);
  auto j = to_json(cs[0]);
  EXPECT_EQ(j.dump(), R"({"tier":"relation","operation":"op5","missing_inputs":[")" + kW +
                          R"(CITY-NAME"],"missing_outputs":[],"extra_outputs":[],"bridges":[["op1"],["op3"]]})");
}

// Soundness, bridge validity and small-scale completeness on random catalogs.
TEST(SubstitutionProperties, RandomCatalogs) {
  std::mt19937 rng(77);
  support::RandomCatalogShape shape;
  shape.input_pool = 7;
  shape.max_inputs = 2;
  shape.max_outputs = 2;
  shape.shared_concepts = true;
  shape.empty_input_rate = 0.15;
  std::size_t bridged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    shape.operations = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    auto cat = support::random_catalog(rng, shape);
    auto goal = support::random_operation(rng, "req", shape);
    auto req = Request::make(goal.inputs, goal.outputs);
    QueryOptions opts;
    opts.bridges = true;
    auto cs = query_substitutes(req, cat, opts);
    auto again = query_substitutes(req, cat, opts);
    ASSERT_EQ(cs.size(), again.size());

    std::map<std::string, support::PlainOp> by_id;
    for (const auto &op : cat.operations())
      by_id[op.id] = support::plain(op);
    support::Names req_in;
    for (const auto &c : req.inputs)
      req_in.insert(c.iri());

    for (std::size_t k = 0; k < cs.size(); ++k) {
      const auto &c = cs[k];
      ASSERT_EQ(c.operation, again[k].operation);
      ASSERT_EQ(c.bridges, again[k].bridges);
      const auto &op = *cat.find(c.operation);
      ASSERT_EQ(classify_pair(req.as_operation(), op).kind, c.tier);
      ASSERT_EQ(!c.missing_outputs.empty(), c.tier == SimilarityKind::Partial);
      ASSERT_EQ(!c.extra_outputs.empty(), c.tier == SimilarityKind::Excess);
      if (c.tier != SimilarityKind::Relation || c.missing_inputs.empty())
        continue;
      for (const auto &chain : c.bridges) {
        auto have = oracle::replay(req_in, chain.operations, by_id);
        ASSERT_TRUE(have);
        ASSERT_TRUE(oracle::subset(support::plain(op).in, *have));
      }
      auto expected = oracle::bridges(req_in, support::plain(op), support::plain(cat), 2);
      ASSERT_EQ(chain_ids(c.bridges), expected);
      bridged += !expected.empty();
    }
  }
  EXPECT_GT(bridged, 10u);
}
