#include "support.hpp"

using namespace testing;
using namespace isosep::json_io;

TEST_CASE("rationals and points round trip") {
  CHECK(to_json(R(3, 2)) == "3/2");
  CHECK(rational_from_json(json("6/4")) == R(3, 2));
  CHECK(rational_from_json(json(5)) == R(5));
  CHECK(to_json(ExtRational::infinity()) == "inf");
  CHECK_THROWS_AS(rational_from_json(json(1.5)), InvalidInput);

  const MetricSpace z2 = MetricSpace::zd(2, Norm::l1);
  CHECK(point_from_json(z2, to_json(L(3, -4))) == L(3, -4));
  const MetricSpace f = MetricSpace::free(3);
  CHECK(to_json(Point::word({1, -2, 3})) == "ab'c");
  CHECK(point_from_json(f, json("ab'c")) == Point::word({1, -2, 3}));
  CHECK(point_from_json(f, json("")) == Point::word({}));
  CHECK_THROWS_AS(point_from_json(f, json("aa'b")), InvalidInput);  // points must be reduced
  CHECK_THROWS_AS(point_from_json(f, json("ad")), InvalidInput);
  CHECK_THROWS_AS(point_from_json(z2, json::array({1})), InvalidInput);
  CHECK_THROWS_AS(point_from_json(MetricSpace::complete_graph(3), json(3)), InvalidInput);
}

TEST_CASE("spaces and generators round trip") {
  const MetricSpace spaces[] = {
      MetricSpace::zd(3, Norm::linf), MetricSpace::free(2), MetricSpace::discrete_shift(),
      MetricSpace::finite_graph(3, {{0, 1, R(1, 2)}, {1, 2, R(3)}}),
      MetricSpace::scaled(R(3, 2), MetricSpace::zd(1, Norm::l1))};
  for (const MetricSpace& s : spaces) {
    const json j = to_json(s);
    CHECK(to_json(space_from_json(j)) == j);
  }
  const Generator gens[] = {Generator::translation({1, -2}), Generator::leftmul({1, -2}),
                            Generator::perm({2, 0, 1}), Generator::shift()};
  for (const Generator& g : gens) CHECK(to_json(generator_from_json(to_json(g))) == to_json(g));
  CHECK(to_json(Generator::leftmul({1, -2})) == json{{"kind", "leftmul"}, {"w", "ab'"}});
  CHECK_THROWS_AS(space_from_json(json{{"kind", "zd"}, {"dim", 2}, {"norm", "l2"}}), InvalidInput);
  CHECK_THROWS_AS(space_from_json(json{{"kind", "hyperbolic"}}), InvalidInput);
  CHECK_THROWS_AS(space_from_json(json{{"kind", "scaled"}, {"factor", "-1"}, {"inner", {{"kind", "free"}, {"rank", 1}}}}),
                  InvalidInput);
}

TEST_CASE("instance files") {
  const InstanceFile f = instance_from_json(json::parse(R"({
    "space":{"kind":"discrete_shift"},"generators":[{"kind":"shift"}],
    "P":[0, {"point":1,"eps":"1"}],"Q":[0,1,2],"budget":{"max_points":50}})"));
  CHECK(f.P.size() == 2);
  CHECK(f.P[0].eps == R(1));
  CHECK(f.budget.max_points == 50);
  CHECK(f.budget.max_word_length == OrbitBudget{}.max_word_length);

  // bare points need a weight outside 0/1 metrics
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({
    "space":{"kind":"zd","dim":1,"norm":"l1"},"generators":[{"kind":"translation","v":[1]}],
    "P":[[0]],"Q":[]})")),
                  InvalidInput);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"generators":[]})")), InvalidInput);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({
    "space":{"kind":"zd","dim":1,"norm":"l1"},"generators":[{"kind":"translation","v":[1]}],
    "budget":{"max_points":0}})")),
                  InvalidInput);
}

TEST_CASE("random instances survive a trip through JSON") {
  for (const std::string& kind : instance_kinds()) {
    const InstanceSpec a = random_instance(kind, 9);
    const InstanceSpec b = to_instance_spec(instance_from_json(to_json(a)));
    CHECK(to_json(a).dump() == to_json(b).dump());
  }
}

TEST_CASE("certificate JSON") {
  const SeparationCertificate c = separate_points(z1(), {{L(0), R(6)}}, {L(0), L(10)});
  const json j = certificate_to_json(c, false);
  CHECK(j.at("status") == "ok");
  CHECK(j.at("word") == json::array({-1, -1, -1, -1, -1, -1}));
  CHECK(j.at("achieved") == json::array({json::array({"p0", "6"})}));
  CHECK(j.at("ratio") == "1");
  CHECK(j.at("trace").at("levels").size() == 1);
  CHECK_FALSE(j.at("trace").at("levels")[0].contains("q_prime"));
  CHECK(certificate_to_json(c, true).at("trace").at("levels")[0].contains("q_prime"));
  CHECK(certificate_to_json(c, false).dump() == j.dump());
  CHECK(certificate_to_json(separate_points(z1(), {}, {L(0)}), false).at("ratio") == "inf");
}
