#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "pcd/density_json.hpp"

using Catch::Matchers::ContainsSubstring;
using pcd::CircularDensity;
using pcd::DensityFamily;
using pcd::DensitySpec;
using pcd::parse_density_spec;

TEST_CASE("parses every family from JSON text", "[json]") {
  const DensitySpec u = parse_density_spec(R"({"family": "uniform"})");
  CHECK(u.family == DensityFamily::Uniform);

  const DensitySpec vm =
      parse_density_spec(R"({"family": "von_mises", "mu": 1.25, "kappa": 500})");
  CHECK(vm.family == DensityFamily::VonMises);
  CHECK(vm.mu == 1.25);
  CHECK(vm.kappa == 500.0);
  CHECK(CircularDensity(vm)(1.25) > CircularDensity(vm)(1.35));

  const DensitySpec wn =
      parse_density_spec(R"({"family": "wrapped_normal", "mu": 3.0, "sigma": 0.5})");
  CHECK(wn.sigma == 0.5);

  const DensitySpec wc =
      parse_density_spec(R"({"family": "wrapped_cauchy", "mu": 0.0, "rho": 0.7})");
  CHECK(wc.rho == 0.7);

  const DensitySpec we =
      parse_density_spec(R"({"family": "wrapped_exponential", "lambda": 2.0})");
  CHECK(we.lambda == 2.0);

  const DensitySpec wl =
      parse_density_spec(R"({"family": "wrapped_laplace", "mu": 2.5, "lambda": 3.0})");
  CHECK(wl.lambda == 3.0);

  const DensitySpec mix = parse_density_spec(R"({
    "family": "mixture",
    "components": [
      {"weight": 0.3, "spec": {"family": "von_mises", "mu": 0.5, "kappa": 4}},
      {"weight": 0.7, "spec": {"family": "uniform"}}
    ]
  })");
  REQUIRE(mix.components.size() == 2);
  CHECK(mix.weights[0] == 0.3);
  CHECK(mix.components[0].kappa == 4.0);

  // levels average to 1/pi over two half circles, so the mass is already 1
  const DensitySpec pwc = parse_density_spec(R"({
    "family": "piecewise_constant",
    "edges": [0.0, 3.141592653589793, 6.283185307179586],
    "levels": [0.25, 0.06830988618379067]
  })");
  REQUIRE(pwc.edges.size() == 3);
  CHECK_FALSE(CircularDensity(pwc).renormalized());

  std::string tab = R"({"family": "tabulated", "thetas": [)";
  std::string vals = R"(], "values": [)";
  for (int j = 0; j < 12; ++j) {
    if (j) tab += ", ", vals += ", ";
    tab += std::to_string(oracle::kTau * j / 12.0);
    vals += std::to_string(1.0 + 0.5 * std::sin(oracle::kTau * j / 12.0));
  }
  const DensitySpec ts = parse_density_spec(tab + vals + "]}");
  CHECK(ts.thetas.size() == 12);
}

TEST_CASE("schema violations report the offending field path", "[json]") {
  CHECK_THROWS_WITH(parse_density_spec(R"({"family": "von_mises", "mu": 0})"),
                    ContainsSubstring("density.kappa"));
  CHECK_THROWS_WITH(parse_density_spec(R"({"family": "von_mises", "mu": "x", "kappa": 1})"),
                    ContainsSubstring("density.mu"));
  CHECK_THROWS_WITH(parse_density_spec(R"({"family": "gaussian"})"),
                    ContainsSubstring("unknown family"));
  CHECK_THROWS_WITH(parse_density_spec(R"({"family": "uniform", "mu": 0})"),
                    ContainsSubstring("unknown field"));
  CHECK_THROWS_WITH(parse_density_spec(R"({"mu": 0})"),
                    ContainsSubstring("density.family"));
  CHECK_THROWS_WITH(parse_density_spec("[1, 2]"), ContainsSubstring("expected an object"));
  CHECK_THROWS_WITH(parse_density_spec("{not json"), ContainsSubstring("density document"));
  CHECK_THROWS_AS(parse_density_spec("{not json"), pcd::ParseError);

  // nested path through a mixture component
  CHECK_THROWS_WITH(parse_density_spec(R"({
    "family": "mixture",
    "components": [{"weight": 1.0, "spec": {"family": "von_mises", "mu": 0}}]
  })"),
                    ContainsSubstring("density.components[0].spec.kappa"));

  // schema-valid but semantically bad values surface as ValidationError
  CHECK_THROWS_AS(parse_density_spec(R"({"family": "von_mises", "mu": 0, "kappa": -3})"),
                  pcd::ValidationError);
  CHECK_THROWS_AS(parse_density_spec(R"({
    "family": "mixture",
    "components": [{"weight": 0.4, "spec": {"family": "uniform"}},
                   {"weight": 0.7, "spec": {"family": "uniform"}}]
  })"),
                  pcd::ValidationError);
}

TEST_CASE("serialization round-trips the catalog", "[json]") {
  std::vector<std::string> docs = {
      R"({"family": "uniform"})",
      R"({"family": "von_mises", "mu": 0.1234567890123456, "kappa": 17.5})",
      R"({"family": "wrapped_normal", "mu": 2.0, "sigma": 0.25})",
      R"({"family": "wrapped_cauchy", "mu": 4.0, "rho": 0.55})",
      R"({"family": "wrapped_exponential", "lambda": 0.75})",
      R"({"family": "wrapped_laplace", "mu": 1.0, "lambda": 2.25})",
      R"({"family": "mixture", "components": [
          {"weight": 0.25, "spec": {"family": "wrapped_cauchy", "mu": 1, "rho": 0.3}},
          {"weight": 0.75, "spec": {"family": "mixture", "components": [
              {"weight": 1.0, "spec": {"family": "uniform"}}]}}]})",
      R"({"family": "piecewise_constant", "edges": [0, 1, 2, 3], "levels": [0.2, 0.5, 0.3]})",
  };
  for (const std::string& doc : docs) {
    const DensitySpec a = parse_density_spec(doc);
    const DensitySpec b = parse_density_spec(pcd::serialize_density_spec(a));
    // the round trip must preserve evaluation exactly
    const CircularDensity da(a);
    const CircularDensity db(b);
    for (double t = 0.01; t < oracle::kTau; t += 0.41) REQUIRE(da(t) == db(t));
    CHECK(pcd::density_spec_to_json(a) == pcd::density_spec_to_json(b));
  }
}
