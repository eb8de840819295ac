#include <gtest/gtest.h>

#include <json.hpp>

#include "rigidity/builtin_maps.hpp"
#include "rigidity/error.hpp"
#include "rigidity/serialize.hpp"

namespace rigidity {
namespace {

using nlohmann::json;

TEST(SetDescriptorJson, ParsesAllTypes) {
  const auto f = parse_set_descriptor(R"({"type":"finite","points":[0.3,0.1,[0.2],0.1]})");
  EXPECT_TRUE(f.is_finite());
  EXPECT_EQ(f.values_1d(), (std::vector<double>{0.1, 0.2, 0.3}));

  const auto p = parse_set_descriptor(R"({"type":"power","alpha":-1})");
  EXPECT_FALSE(p.cardinality());
  const auto t = parse_set_descriptor(R"({"type":"power","alpha":-2,"count":10})");
  EXPECT_FALSE(t.cardinality());  // tail-completed, so infinite
  EXPECT_EQ(std::get<PowerSequence>(t.variant()).count, 10u);

  const auto c = parse_set_descriptor(R"({"type":"cloud","points":[[0,1],[1,0]]})");
  EXPECT_TRUE(c.is_cloud());
  EXPECT_EQ(c.dimension(), 2u);
}

TEST(SetDescriptorJson, Errors) {
  EXPECT_THROW(parse_set_descriptor("{"), InputError);
  EXPECT_THROW(parse_set_descriptor("[1,2]"), InputError);
  EXPECT_THROW(parse_set_descriptor(R"({"type":"blob"})"), InputError);
  EXPECT_THROW(parse_set_descriptor(R"({"type":"finite"})"), InputError);
  EXPECT_THROW(parse_set_descriptor(R"({"type":"finite","points":["a"]})"), InputError);
  EXPECT_THROW(parse_set_descriptor(R"({"type":"power"})"), InputError);
  EXPECT_THROW(parse_set_descriptor(R"({"type":"power","alpha":-1,"count":1.5})"), InputError);
  EXPECT_THROW(parse_set_descriptor(R"({"type":"power","alpha":1})"), ParameterError);
  EXPECT_THROW(parse_set_descriptor(R"({"type":"power","alpha":-1,"count":-3})"), ParameterError);
  EXPECT_THROW(parse_set_descriptor(R"({"type":"finite","points":[[0],[1,2]]})"), ParameterError);
}

TEST(SetDescriptorJson, RoundTrips) {
  for (const char* text : {R"({"type":"finite","points":[0.5,-0.25,1e-9]})",
                           R"({"type":"power","alpha":-1.5,"count":12})",
                           R"({"type":"power","alpha":-0.5})",
                           R"({"type":"cloud","points":[[0.1,0.2],[0.3,-0.4]]})"}) {
    const auto a = parse_set_descriptor(text);
    const auto dumped = to_json(a);
    EXPECT_EQ(to_json(parse_set_descriptor(dumped)), dumped);
  }
  const auto cloud = json::parse(to_json(SetDescriptor::cloud({{0.0, 1.0}})));
  EXPECT_EQ(cloud["provenance"], "extracted");
}

TEST(BoundReportJson, Keys) {
  const auto set = SetDescriptor::finite(std::vector<double>{0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  const auto report = rigidity_bound(ProblemParams::make(1, 1, 5, 1.0), LambdaProfile::zeros(1),
                                     set, default_eps_grid(set));
  const auto j = json::parse(to_json(report));
  for (const char* key : {"gamma", "gamma_epsilon", "epsilon0", "gamma_closed_form", "E_empty",
                          "E_epsilons", "eta_curve", "nu", "grid_size", "params"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["gamma"].get<double>(), report.gamma);
  EXPECT_EQ(j["params"]["c"].get<double>(), 6.0);
  EXPECT_EQ(j["eta_curve"].size(), report.eta_curve.size());
  const auto csv = eta_curve_csv(report);
  EXPECT_EQ(csv.rfind("epsilon,eta,product\n", 0), 0u);
}

TEST(BoundReportJson, EmptyReportHasNulls) {
  const auto set = SetDescriptor::finite(std::vector<double>{0, 1});
  const auto report = rigidity_bound(ProblemParams::make(1, 1, 2, 1.0), LambdaProfile::zeros(1),
                                     set, default_eps_grid(set));
  const auto j = json::parse(to_json(report));
  EXPECT_TRUE(j["E_empty"].get<bool>());
  EXPECT_TRUE(j["epsilon0"].is_null());
  EXPECT_EQ(j["gamma"].get<double>(), 0.0);
}

TEST(WitnessJson, StructureAndSamples) {
  const std::vector<double> delta{0.0, 0.5, 1.0};
  const auto w = build_witness(delta, 2, 1.0);
  const auto j = json::parse(to_json(w));
  EXPECT_EQ(j["order"], 2);
  EXPECT_EQ(j["pieces"].size(), 5u);
  EXPECT_EQ(j["critical_values"].get<std::vector<double>>(), delta);
  const auto csv = witness_samples_csv(w, 11);
  EXPECT_EQ(csv.rfind("x,f,f1,f2\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  EXPECT_THROW(witness_samples_csv(w, 1), ParameterError);
}

TEST(ClassificationJson, Fields) {
  const auto p = ProblemParams::make(1, 1, 5, 1.0);
  const auto j = json::parse(to_json(classify_power_sequence(-1.0, p), -1.0, p));
  EXPECT_EQ(j["verdict"], "Excluded");
  EXPECT_EQ(j["exponent"].get<double>(), -1.5);
}

TEST(GridCsv, RoundTripOneAndTwoDimensions) {
  std::string csv = "x1,f1\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = -2.0 + i;
    csv += std::to_string(x) + "," + std::to_string(x * x) + "\n";
  }
  const auto map = parse_grid_csv(csv);
  EXPECT_EQ(map.n(), 1);
  EXPECT_EQ(map.radius(), 2.0);
  EXPECT_EQ(map.node_count(), 5u);
  EXPECT_EQ(map.value(4)[0], 4.0);

  std::string csv2 = "x1,x2,f1,f2\n";
  // Rows in arbitrary order.
  for (int j = 2; j >= 0; --j) {
    for (int i = 0; i <= 2; ++i) {
      csv2 += std::to_string(i - 1) + "," + std::to_string(j - 1) + "," + std::to_string(i) + "," +
              std::to_string(j) + "\n";
    }
  }
  const auto map2 = parse_grid_csv(csv2);
  EXPECT_EQ(map2.n(), 2);
  EXPECT_EQ(map2.m(), 2);
  EXPECT_EQ(map2.value(5)[0], 1.0);
  EXPECT_EQ(map2.value(5)[1], 2.0);
}

TEST(GridCsv, Errors) {
  EXPECT_THROW(parse_grid_csv("x1,f1\n"), InputError);
  EXPECT_THROW(parse_grid_csv("x,f\n0,0\n1,1\n-1,1\n"), InputError);
  EXPECT_THROW(parse_grid_csv("x1,f1\n0,0\n1\n-1,1\n"), InputError);
  EXPECT_THROW(parse_grid_csv("x1,f1\n0,zero\n1,1\n-1,1\n"), InputError);
  EXPECT_THROW(parse_grid_csv("x1,f1\n0,0\n0.3,1\n-1,1\n"), InputError);
  EXPECT_THROW(parse_grid_csv("x1,x2,f1\n0,0,0\n1,0,0\n"), InputError);
}

TEST(ForwardCheckCsv, Format) {
  const auto map = builtin_map("parabola1d").sample(1.0, 65);
  const auto grid = log_grid(1e-3, 1e-1, 2);
  const auto check =
      empirical_forward_check(map, LambdaProfile({0.2}), ProblemParams::make(1, 1, 2, 1.0), grid, 1.0);
  const auto csv = forward_check_csv(check);
  EXPECT_EQ(csv.rfind("epsilon,measured,bound,regime,pass\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), grid.size() + 1);
}

}  // namespace
}  // namespace rigidity
