#include <doctest.h>

#include <cmath>

#include "blaschke/io.hpp"
#include "helpers.hpp"

using namespace blaschke;
using namespace blaschke::testing;

TEST_SUITE("io") {

TEST_CASE("model documents round trip") {
  CombinatorialModel model = reference_model();
  model.x0 = std::vector<double>{0.0, 0.1, 0.2, 0.5, 0.7};
  model.solver = SolverOptions{1e-9, 123, 1.15};
  const CombinatorialModel back = parse_model_json(model_to_json(model));
  CHECK(back.m == model.m);
  CHECK(back.d == model.d);
  CHECK(back.kappa == model.kappa);
  CHECK(back.tau == model.tau);
  CHECK(back.k_count == model.k_count);
  CHECK(back.turning == model.turning);
  CHECK(back.sigma == model.sigma);
  REQUIRE(back.x0.has_value());
  CHECK(*back.x0 == *model.x0);
  REQUIRE(back.solver.has_value());
  CHECK(back.solver->tol == 1e-9);
  CHECK(back.solver->max_iter == 123);
  CHECK(back.solver->seed_radius == 1.15);
}

TEST_CASE("number serialization is exact at double precision") {
  CombinatorialModel model = reference_model();
  model.x0 = std::vector<double>{0.0, 0.03427352240033887, 0.13810906264945622,
                                 0.3974809731641531, 0.5343104457001809};
  const CombinatorialModel back = parse_model_json(model_to_json(model));
  REQUIRE(back.x0.has_value());
  for (std::size_t i = 0; i < model.x0->size(); ++i)
    CHECK((*back.x0)[i] == (*model.x0)[i]);
}

TEST_CASE("unknown fields are rejected") {
  CHECK_THROWS_AS(parse_model_json(R"({"m":1,"d":1,"kappa":[3,2],"tau":[-1],
    "k_count":2,"turning_indices":[1,2],"integer_preimage_indices":[],
    "sigma":[2,1],"surprise":7})"),
                  Error);
  CHECK_THROWS_AS(parse_model_json("{\"m\":1}"), Error);   // missing fields
  CHECK_THROWS_AS(parse_model_json("not json at all"), Error);
  CHECK_THROWS_AS(parse_model_json(R"({"m":1,"d":1,"kappa":[3,2],"tau":[-1],
    "k_count":2,"turning_indices":[1,2],"integer_preimage_indices":[],
    "sigma":[2,1],"solver":{"tolerance":1e-9}})"),
                  Error);  // unknown solver field
}

TEST_CASE("malformed documents are rejected without crashing") {
  const std::string good = model_to_json(reference_model());
  Rng rng(333);
  int rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::string text = good;
    switch (rng.uniform_int(0, 2)) {
      case 0:  // truncate
        text.resize(static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(text.size()))));
        break;
      case 1:  // flip one character
        text[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(text.size()) - 1))] =
            static_cast<char>(rng.uniform_int(32, 126));
        break;
      default:  // splice a chunk elsewhere
        text.insert(static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(text.size()))),
                    text.substr(0, static_cast<std::size_t>(rng.uniform_int(1, 40))));
        break;
    }
    try {
      const CombinatorialModel model = parse_model_json(text);
      (void)validate_model(model);
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(rejected > 250);  // nearly all mutations break the strict schema
}

TEST_CASE("result documents round trip and reproduce the residual") {
  const CombinatorialModel model = reference_model();
  const IterationResult result = iterate_to_fixed_point(model, std::nullopt, 1e-10, 200);
  REQUIRE(result.converged);
  const std::string doc = result_to_json(result, model);
  const ParsedResult parsed = parse_result_json(doc);
  CHECK(parsed.converged);
  CHECK(parsed.iterations == result.iterations);
  for (std::size_t i = 0; i < parsed.x.size(); ++i) CHECK(parsed.x[i] == result.x[i]);
  const double recomputed = fixed_point_residual(parsed.x, parsed.mu, model);
  CHECK(std::fabs(recomputed - parsed.residual) <= 1e-12);
}

}  // TEST_SUITE
